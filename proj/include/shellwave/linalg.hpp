#pragma once

#include <functional>

#include "shellwave/types.hpp"

namespace shellwave {

using LinearMap = std::function<CVec(const CVec&)>;

/// Largest singular value of a map given with its adjoint, by power iteration on A^* A.
/// Stops when successive estimates agree to rel_tol; throws NumericalError after max_iter.
real power_norm(const LinearMap& apply, const LinearMap& apply_adjoint, int dim, real rel_tol = 1e-4,
                int max_iter = 2000, unsigned seed = 7);

/// Largest singular value of a dense matrix by power iteration.
real power_norm(const CMat& a, real rel_tol = 1e-4, int max_iter = 2000);

/// sigma_max(L_out^{-1} X L_in^{-H}) for Gram factors L: the norm of the operator whose
/// Galerkin matrix against two bases with Gram matrices G_out, G_in is X.
real galerkin_norm(const CMat& x, const CMat& gram_out, const CMat& gram_in, real rel_tol = 1e-4);

}  // namespace shellwave
