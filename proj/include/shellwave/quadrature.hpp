#pragma once

#include <vector>

#include "shellwave/types.hpp"

namespace shellwave {

struct QuadRule {
    std::vector<real> nodes;
    std::vector<real> weights;

    std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n, cached per order).
const QuadRule& gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
QuadRule gauss_legendre(int n, real a, real b);

/// Composite Gauss-Legendre: `panels` equal panels with `order` points each.
QuadRule composite_gauss(int order, int panels, real a, real b);

/// Lagrange basis polynomials through `nodes`, evaluated at x (barycentric form).
void lagrange_weights(const std::vector<real>& nodes, real x, std::vector<real>& out);

/// Kress weights R_j for int_0^{2pi} log(4 sin^2((s - s')/2)) f(s') ds' on n equispaced nodes,
/// indexed by the offset j = (target - source) mod n.
std::vector<real> kress_log_weights(int n);

/// Periodic trigonometric interpolation weights L_j(s) on n equispaced nodes (n even).
void trig_interp_weights(int n, real s, std::vector<real>& out);

namespace detail {
inline real magnitude(real x) { return x < 0 ? -x : x; }
inline real magnitude(const cplx& x) { return std::abs(x); }
template <class D>
real magnitude(const Eigen::MatrixBase<D>& x) { return x.norm(); }
}  // namespace detail

/// Integrate f over [a, b] by recursive bisection of a Gauss-Legendre rule.
template <class F>
auto adaptive_gauss(F&& f, real a, real b, real tol, int depth = 0)
    -> decltype(f(a))
{
    const auto& lo = gauss_legendre(10);
    const auto& hi = gauss_legendre(20);
    const real half = 0.5 * (b - a);
    const real mid = 0.5 * (a + b);
    decltype(f(a)) s10{}, s20{};
    for (std::size_t k = 0; k < lo.size(); ++k) s10 += lo.weights[k] * f(mid + half * lo.nodes[k]);
    for (std::size_t k = 0; k < hi.size(); ++k) s20 += hi.weights[k] * f(mid + half * hi.nodes[k]);
    s10 *= half;
    s20 *= half;
    if (detail::magnitude(s20 - s10) <= tol || depth > 40) return s20;
    return adaptive_gauss(f, a, mid, 0.5 * tol, depth + 1) + adaptive_gauss(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace shellwave
