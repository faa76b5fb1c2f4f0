#include "shellwave/green.hpp"

#include <cmath>

#include "shellwave/bessel.hpp"

namespace shellwave {

SpectralParam::SpectralParam(cplx z_, real m_) : z(z_), m(m_)
{
    const cplx w = z * z - m * m;
    if (w.imag() == 0.0 && w.real() >= 0.0)
        throw DomainError("SpectralParam: z^2 - m^2 lies on [0, inf); z is in the spectrum");
    k = sqrt_upper(w);
    kappa = -I * k;
}

Mat2c green_2d_fast(const SpectralParam& sp, real x, real y)
{
    const real r = std::hypot(x, y);
    if (r == 0.0) throw DomainError("green_2d: x = 0");
    cplx k0, k1;
    bessel_k01_scaled(sp.kappa * r, k0, k1);
    const cplx e = std::exp(-sp.kappa * r);
    const cplx a = sp.k * k1 * e / (2.0 * pi);
    const cplx b = k0 * e / (2.0 * pi);
    const real u1 = x / r, u2 = y / r;
    Mat2c g;
    g << b * (sp.z + sp.m), a * cplx(u1, -u2), a * cplx(u1, u2), b * (sp.z - sp.m);
    return g;
}

CMat green_2d(const SpectralParam& sp, const DiracRep& rep, const Vec2& x)
{
    if (rep.theta != 2) throw DomainError("green_2d: representation must have theta = 2");
    const real r = x.norm();
    if (r == 0.0) throw DomainError("green_2d: x = 0");
    const cplx w = sp.kappa * r;
    const cplx k0 = bessel_k0(w), k1 = bessel_k1(w);
    return (sp.k / (2.0 * pi)) * k1 * alpha_dot(rep, Vec2(x / r))
         + (k0 / (2.0 * pi)) * (sp.m * rep.beta + sp.z * rep.identity());
}

CMat green_3d(const SpectralParam& sp, const DiracRep& rep, std::span<const real> x)
{
    if (rep.theta != 3 || x.size() != 3) throw DomainError("green_3d: need theta = 3 and a 3-vector");
    const real r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r == 0.0) throw DomainError("green_3d: x = 0");
    const cplx ph = std::exp(I * sp.k * r) / (4.0 * pi * r);
    const CMat ax = alpha_dot(rep, x);
    return (sp.z * rep.identity() + sp.m * rep.beta + I * (1.0 - I * sp.k * r) * ax / (r * r)) * ph;
}

CMat green(const SpectralParam& sp, const DiracRep& rep, std::span<const real> x)
{
    if (rep.theta == 2) {
        if (x.size() != 2) throw DomainError("green: need a 2-vector");
        return green_2d(sp, rep, Vec2(x[0], x[1]));
    }
    return green_3d(sp, rep, x);
}

real anticommutation_residual(const SpectralParam& sp, const DiracRep& rep,
                              const std::vector<std::vector<real>>& points)
{
    const SpectralParam spc = sp.conj();
    real res = 0.0;
    for (const auto& p : points) {
        const CMat a = green(sp, rep, p) * rep.beta + rep.beta * green(spc, rep, p);
        res = std::max(res, a.norm());
    }
    return res;
}

real anticommutation_kernel_check(const SpectralParam& sp, const DiracRep& rep,
                                  const std::vector<std::vector<real>>& points)
{
    if (sp.m != 0.0 || sp.z.real() != 0.0)
        throw DomainError("anticommutation_kernel_check: requires m = 0 and z in iR");
    return anticommutation_residual(sp, rep, points);
}

}  // namespace shellwave
