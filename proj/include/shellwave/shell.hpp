#pragma once

#include <memory>
#include <vector>

#include "shellwave/boundary.hpp"
#include "shellwave/dirac.hpp"

namespace shellwave {

/// delta-shell interaction with strengths (eta~, tau~) on a curve at a spectral point.
struct ShellProblem {
    const PlanarCurve* curve = nullptr;
    Coupling coupling;
    SpectralParam sp;

    ShellProblem(const PlanarCurve& c, const Coupling& v, const SpectralParam& s);
};

/// Factorization of I + C_z V~ on the boundary nodes.
class ShellSolver {
public:
    explicit ShellSolver(const ShellProblem& p);
    ShellSolver(const ShellProblem& p, const CMat& cz);

    /// rho = (I + C_z V~)^{-1} rhs
    CMat solve(const CMat& rhs) const;
    /// V~ rho for a right-hand side given as traces on the nodes.
    CMat source(const CMat& rhs) const;
    real rcond() const { return rcond_; }
    const CMat& cz() const { return cz_; }
    const ShellProblem& problem() const { return prob_; }

private:
    void factor();
    ShellProblem prob_;
    CMat cz_;
    Eigen::PartialPivLU<CMat> lu_;
    real rcond_ = 0.0;
};

/// Galerkin matrix <p_a, Phi_z V~ (I + C_z V~)^{-1} Phi_{conj z}^* p_b> on the probes,
/// from the trace matrices T_z = t R_z p and T_zbar = t R_{conj z} p.
CMat shell_correction_galerkin(const ShellSolver& s, const CMat& t_z, const CMat& t_zbar);

/// u = R_z v - Phi_z V~ (I + C_z V~)^{-1} Phi_{conj z}^* v, evaluable anywhere off Sigma.
class ShellField {
public:
    ShellField(const ShellProblem& p, const ProbeSource& v);
    ShellField(const ShellSolver& s, const ProbeSource& v);
    Vec2c operator()(const Vec2& x) const;
    Vec2c incident(const Vec2& x) const;
    const CVec& layer_density() const { return psi_; }

private:
    void build(const ShellSolver& s);
    ShellProblem prob_;
    ProbeSource v_;
    std::unique_ptr<ProbeResolvent> pr_;
    CVec psi_;
    std::unique_ptr<LayerField> layer_;
};

std::vector<Vec2c> shell_resolvent_apply(const ShellProblem& p, const ProbeSource& v,
                                         const std::vector<Vec2>& points);

/// max over `samples` equispaced nodes of |i(alpha.nu)(u+ - u-) + V~(u+ + u-)/2|, relative to
/// max |u+| + |u-|, with one-sided traces from extrapolated offsets.
real transmission_residual(const ShellProblem& p, const ProbeSource& v, int samples = 16);

/// ||u|| over outside samples divided by ||u|| over inside samples for the shell resolvent
/// applied to v. Requires d~ = -4 unless allow_nonconfining is set; returns 0 for v = 0.
real confinement_leakage(const ShellProblem& p, const ProbeSource& v, const std::vector<Vec2>& inside,
                         const std::vector<Vec2>& outside, bool allow_nonconfining = false);

}  // namespace shellwave
