#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "shellwave/green.hpp"

namespace shellwave {

using Vec2c = Eigen::Vector2cd;

/// exp(-|x - center|^2 / width^2) times the basis spinor e_comp.
struct Probe {
    Vec2 center = Vec2::Zero();
    real width = 0.3;
    int comp = 0;

    real envelope(const Vec2& x) const { return std::exp(-(x - center).squaredNorm() / (width * width)); }
    Vec2c value(const Vec2& x) const;
    /// Radius beyond which the envelope is below exp(-49).
    real support_radius() const { return 7.0 * width; }
};

/// Centers on radii cycling through {0.55, 1.0, 1.45, 1.9} at golden-angle steps;
/// the spinor component alternates every four probes. Prefixes of the list are nested.
std::vector<Probe> default_probes(int count, real width = 0.3);

/// Linear combination sum_b coeffs_b p_b of Gaussian probes.
struct ProbeSource {
    std::vector<Probe> probes;
    CVec coeffs;

    static ProbeSource single(const Probe& p)
    {
        return {{p}, CVec::Ones(1)};
    }
    bool is_zero() const { return coeffs.size() == 0 || coeffs.isZero(0.0); }
};

/// L^2(R^2; C^2) Gram matrix of the probes (closed form).
CMat probe_gram(const std::vector<Probe>& probes);

/// Scalar potential u(r) = int K_0(kappa |x - y|)/(2pi) exp(-|y|^2/w^2) dy and u'(r),
/// tabulated once per (kappa, w) from the radial Graf splitting.
class RadialResolvent {
public:
    RadialResolvent(cplx kappa, real width);
    void eval(real r, cplx& u, cplx& du) const;

private:
    cplx kappa_;
    real width_;
    std::vector<real> edges_;
    std::vector<cplx> cumA_;   // int_0^{edge_p} I_0 g rho
    std::vector<cplx> tailB_;  // int_{edge_p}^R K_0 g rho
    cplx partialA(int p, real r) const;
    cplx partialB(int p, real r) const;
};

/// (R_z v)(x) = int G_z(x - y) v(y) dy for a Gaussian probe, from the radial tabulation.
Vec2c volume_resolvent(const SpectralParam& sp, const Probe& v, const Vec2& x);

/// Cached radial tables for a probe family at one spectral point.
class ProbeResolvent {
public:
    ProbeResolvent(const SpectralParam& sp, const std::vector<Probe>& probes);
    Vec2c apply(int b, const Vec2& x) const;
    const std::vector<Probe>& probes() const { return probes_; }
    const SpectralParam& spectral() const { return sp_; }

private:
    SpectralParam sp_;
    std::vector<Probe> probes_;
    std::vector<std::shared_ptr<RadialResolvent>> tables_;
};

/// (R_z v)(x) by adaptive quadrature in polar coordinates centered at x, for any source v
/// supported in the disk |y - center| <= support. Throws NumericalError without convergence.
Vec2c volume_resolvent_polar(const SpectralParam& sp, const std::function<Vec2c(const Vec2&)>& v,
                             const Vec2& center, real support, const Vec2& x, real tol = 1e-10);

}  // namespace shellwave
