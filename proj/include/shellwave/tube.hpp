#pragma once

#include <vector>

#include "shellwave/boundary.hpp"
#include "shellwave/dirac.hpp"

namespace shellwave {

/// Tube densities are node-major over (i, j) with the spinor innermost: index 2*(i*K + j) + c.
/// Their inner product is that of L^2(Sigma x (-1,1)) with weights w_i g_j (no Jacobian).

/// A_eps: tube density -> field samples, kernel G_z(x - iota(y, eps s)) (1 + eps s kappa).
DiscreteOperator assemble_A_eps(const SpectralParam& sp, const TubeGrid& g, const std::vector<Vec2>& targets);

struct BepsOptions {
    int radial_order = 12;   // Gauss points in sqrt(lambda) on the core triangles
    int angular_order = 16;  // Gauss points along the opposite edge (sinh-graded)
    int panel_order = 16;    // Gauss points per side panel
    int stencil = 12;        // local Lagrange stencil along the curve
};

/// B_eps: tube density -> tube density. The self-interaction near each target is split off
/// with a smooth erfc partition in the curve parameter; the near part is integrated on a
/// core rectangle (four Duffy triangles around the target) and graded side panels, with the
/// density interpolated locally. The far part is the tensor trapezoid x Gauss-Legendre rule.
DiscreteOperator assemble_B_eps(const SpectralParam& sp, const TubeGrid& g, const BepsOptions& opt = {});

/// C_eps: probe coefficients -> tube density, (R_z p_b)(iota(y_i, eps t_j)).
DiscreteOperator assemble_C_eps(const ProbeResolvent& pr, const TubeGrid& g);

/// S_jl = int_{-1}^{1} sign(t_j - s) L_l(s) ds for the Lagrange basis on the Gauss nodes.
Eigen::MatrixXd sign_matrix(const std::vector<real>& t, const std::vector<real>& g);

/// Limit operators on an n x K tube grid built from the boundary-layer matrices.
CMat assemble_A0(const CMat& phi, const std::vector<real>& g);
CMat assemble_B0(const CMat& cz, const PlanarCurve& c, const std::vector<real>& t, const std::vector<real>& g);
CMat assemble_C0(const CMat& phi_star, int K);

/// Diagonal of f V q(t_j) on the tube vector layout.
CVec fvq_diagonal(const Coupling& v, real fval, const ProfileQ& q, int n, const std::vector<real>& t);

/// Diagonal of M_eps = 1 + eps t_j kappa_i on the tube vector layout.
RVec M_eps_diagonal(const TubeGrid& g);
CMat M_eps_apply(const TubeGrid& g, const CMat& density);

/// Flat weights w_i g_j per spinor component, and the same times the Jacobian.
RVec tube_flat_weights(const PlanarCurve& c, const std::vector<real>& g);
RVec tube_jacobian_weights(const TubeGrid& g);

/// fVq (I + B fVq)^{-1} rhs.
CMat squeezed_layer_solve(const CMat& b, const CVec& fvq, const CMat& rhs, real* rcond_out = nullptr);

/// Galerkin matrix <p_a, A_eps fVq (I + B_eps fVq)^{-1} C_eps p_b> on the probes, using
/// A_eps(z)^* = M_eps C_eps(conj z) so that no field grid is needed.
CMat squeezed_correction_galerkin(const TubeGrid& g, const CMat& b_eps, const CVec& fvq, const CMat& c_z,
                                  const CMat& c_zbar);

struct SqueezeProblem {
    const TubeGrid* grid = nullptr;
    Coupling coupling;
    real fval = 1.0;
    ProfileQ q = ProfileQ::uniform();
    SpectralParam sp;
};

/// R_z v - A_eps fVq (I + B_eps fVq)^{-1} C_eps v at points off the closed tube.
std::vector<Vec2c> squeezed_resolvent_apply(const SqueezeProblem& pb, const ProbeSource& v,
                                            const std::vector<Vec2>& points);

/// f V q(t) layer(t) (I + C_z V~_eps)^{-1} trace, node by node, from the closed-form layer matrix.
CVec limit_layer_solve(const CMat& cz, const PlanarCurve& c, const Coupling& v, real fval, const ProfileQ& q,
                       const std::vector<real>& t, const CVec& trace);

/// Weighted operator norm of fVq (I + B_eps fVq)^{-1} on the flat tube space (m = 0, z in iR).
real layer_bound_diagnostic(const SqueezeProblem& pb, const CMat& b_eps);

/// Smallest singular value of E = beta + f sign(tau) D B_eps M^{-1} D on the flat tube space.
real e_eps_sigma_min(const SqueezeProblem& pb, const CMat& b_eps);

}  // namespace shellwave
