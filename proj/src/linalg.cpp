#include "shellwave/linalg.hpp"

#include <cmath>
#include <random>

namespace shellwave {

real power_norm(const LinearMap& apply, const LinearMap& apply_adjoint, int dim, real rel_tol, int max_iter,
                unsigned seed)
{
    if (dim == 0) return 0.0;
    std::mt19937 rng(seed);
    std::normal_distribution<real> nd;
    CVec v(dim);
    for (int k = 0; k < dim; ++k) v[k] = cplx(nd(rng), nd(rng));
    v.normalize();
    real prev = -1.0;
    for (int it = 0; it < max_iter; ++it) {
        const CVec av = apply(v);
        const real s = av.norm();
        if (s == 0.0) return 0.0;
        CVec w = apply_adjoint(av);
        const real wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        if (prev > 0.0 && std::abs(s - prev) <= rel_tol * s) return s;
        prev = s;
    }
    throw NumericalError("power_norm: power iteration did not converge");
}

real power_norm(const CMat& a, real rel_tol, int max_iter)
{
    if (a.size() == 0 || a.isZero(0.0)) return 0.0;
    return power_norm([&](const CVec& v) -> CVec { return a * v; },
                      [&](const CVec& v) -> CVec { return a.adjoint() * v; }, static_cast<int>(a.cols()), rel_tol,
                      max_iter);
}

real galerkin_norm(const CMat& x, const CMat& gram_out, const CMat& gram_in, real rel_tol)
{
    const Eigen::LLT<CMat> lo(gram_out), li(gram_in);
    if (lo.info() != Eigen::Success || li.info() != Eigen::Success)
        throw NumericalError("galerkin_norm: Gram matrix is not positive definite");
    // L_out^{-1} X L_in^{-H}
    CMat y = lo.matrixL().solve(x);
    y = li.matrixL().solve(y.adjoint()).adjoint();
    return power_norm(y, rel_tol);
}

}  // namespace shellwave
