#pragma once

#include <span>
#include <vector>

#include "shellwave/dirac.hpp"

namespace shellwave {

using Mat2c = Eigen::Matrix2cd;

/// Spectral point z with mass m; k = sqrt(z^2 - m^2) on the upper branch, kappa = -i k (Re kappa > 0).
struct SpectralParam {
    cplx z;
    real m = 0.0;
    cplx k;
    cplx kappa;

    SpectralParam() = default;
    SpectralParam(cplx z_, real m_);

    real decay() const { return k.imag(); }
    SpectralParam conj() const { return SpectralParam(std::conj(z), m); }
};

/// Free Dirac Green's function in the plane at x != 0.
CMat green_2d(const SpectralParam& sp, const DiracRep& rep, const Vec2& x);

/// Same, specialized to the standard theta = 2 representation without allocation.
Mat2c green_2d_fast(const SpectralParam& sp, real x, real y);

/// Free Dirac Green's function in space at x != 0 (theta = 3).
CMat green_3d(const SpectralParam& sp, const DiracRep& rep, std::span<const real> x);

/// Dispatch on rep.theta; x has rep.theta entries.
CMat green(const SpectralParam& sp, const DiracRep& rep, std::span<const real> x);

/// max over the sample points of || G_z(x) beta + beta G_{conj z}(x) ||; no hypothesis check.
real anticommutation_residual(const SpectralParam& sp, const DiracRep& rep,
                              const std::vector<std::vector<real>>& points);

/// As above, but requires m = 0 and z purely imaginary.
real anticommutation_kernel_check(const SpectralParam& sp, const DiracRep& rep,
                                  const std::vector<std::vector<real>>& points);

/// (alpha.u) for the standard theta = 2 representation.
inline Mat2c alpha_dot2(real u1, real u2)
{
    Mat2c a;
    a << 0.0, cplx(u1, -u2), cplx(u1, u2), 0.0;
    return a;
}

inline Mat2c beta2()
{
    Mat2c b;
    b << 1.0, 0.0, 0.0, -1.0;
    return b;
}

}  // namespace shellwave
