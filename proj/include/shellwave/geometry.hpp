#pragma once

#include <string>
#include <vector>

#include "shellwave/types.hpp"

namespace shellwave {

enum class CurveKind { circle, ellipse, star };

/// circle: radius a. ellipse: semi-axes a, b. star: r(s) = a (1 + amp cos(freq s)).
struct CurveSpec {
    CurveKind kind = CurveKind::circle;
    real a = 1.0;
    real b = 1.0;
    real amp = 0.0;
    int freq = 0;

    static CurveSpec circle(real radius) { return {CurveKind::circle, radius, radius, 0.0, 0}; }
    static CurveSpec ellipse(real a, real b) { return {CurveKind::ellipse, a, b, 0.0, 0}; }
    static CurveSpec star(real r0, real amp, int freq) { return {CurveKind::star, r0, r0, amp, freq}; }
    std::string describe() const;
};

/// Smooth simple closed curve s -> gamma(s), s in [0, 2pi), counterclockwise,
/// sampled on n equispaced nodes with trapezoidal weights (2pi/n)|gamma'(s_i)|.
class PlanarCurve {
public:
    PlanarCurve(const CurveSpec& spec, int n);

    Vec2 point(real s) const;
    Vec2 d1(real s) const;
    Vec2 d2(real s) const;
    real speed(real s) const { return d1(s).norm(); }
    /// Outward unit normal.
    Vec2 normal(real s) const;
    /// d/ds of the outward normal.
    Vec2 normal_d1(real s) const;
    /// Signed curvature, positive on convex arcs.
    real curvature(real s) const;
    /// Scalar Weingarten map with the convention det(I - tW) = 1 + t kappa.
    real weingarten(real s) const { return -curvature(s); }

    int size() const { return n_; }
    real h() const { return 2.0 * pi / n_; }
    const std::vector<real>& params() const { return s_; }
    const std::vector<Vec2>& points() const { return x_; }
    const std::vector<Vec2>& normals() const { return nu_; }
    const std::vector<real>& speeds() const { return sp_; }
    const std::vector<real>& curvatures() const { return kap_; }
    const std::vector<real>& weights() const { return w_; }

    real length() const;
    Vec2 centroid() const;
    real max_abs_curvature() const { return max_kappa_; }
    /// 0.9 min(1/max|kappa|, half the minimal distance between non-adjacent arcs).
    real injectivity_bound() const { return inj_bound_; }
    const CurveSpec& spec() const { return spec_; }

private:
    void check_simple() const;
    real compute_injectivity_bound() const;

    CurveSpec spec_;
    int n_;
    std::vector<real> s_;
    std::vector<Vec2> x_, nu_;
    std::vector<real> sp_, kap_, w_;
    real max_kappa_ = 0.0;
    real inj_bound_ = 0.0;
};

PlanarCurve make_curve(const CurveSpec& spec, int n);

/// gamma(s) + t nu(s); throws DomainError for |t| >= injectivity bound.
Vec2 tube_point(const PlanarCurve& c, real s, real t);

/// Area element of the tube map at (s, t) relative to ds dt |gamma'|: 1 + t kappa(s).
real tube_jacobian(const PlanarCurve& c, real s, real t);

/// Tensor grid on Sigma x (-1, 1) for the tube of half-width eps.
struct TubeGrid {
    const PlanarCurve* curve = nullptr;
    real eps = 0.0;
    int K = 0;
    std::vector<real> t;        // Gauss-Legendre nodes in (-1, 1)
    std::vector<real> g;        // Gauss-Legendre weights
    std::vector<Vec2> x;        // tube points, index i*K + j
    std::vector<real> jac;      // 1 + eps t_j kappa_i

    int size() const { return curve->size() * K; }
    int index(int i, int j) const { return i * K + j; }
    /// eps w_i g_j jac_ij: area weights of the physical tube.
    RVec area_weights() const;
    /// w_i g_j: weights of L^2(Sigma x (-1,1)) without Jacobian.
    RVec flat_weights() const;
};

TubeGrid make_tube_grid(const PlanarCurve& c, real eps, int K);

}  // namespace shellwave
