#include "shellwave/shell.hpp"

#include <cmath>
#include <iostream>

#include "shellwave/parallel.hpp"

namespace shellwave {

ShellProblem::ShellProblem(const PlanarCurve& c, const Coupling& v, const SpectralParam& s)
    : curve(&c), coupling(v), sp(s)
{
    if (sp.z.imag() == 0.0) throw DomainError("ShellProblem: z must not be real");
    if (std::abs(v.d() - 4.0) < 1e-12) throw DomainError("ShellProblem: d~ = eta~^2 - tau~^2 must differ from 4");
}

ShellSolver::ShellSolver(const ShellProblem& p) : prob_(p), cz_(assemble_Cz(p.sp, *p.curve).mat) { factor(); }

ShellSolver::ShellSolver(const ShellProblem& p, const CMat& cz) : prob_(p), cz_(cz) { factor(); }

void ShellSolver::factor()
{
    const cplx v0 = prob_.coupling.eta + prob_.coupling.tau, v1 = prob_.coupling.eta - prob_.coupling.tau;
    CMat a = right_multiply_nodes(cz_, v0, v1);
    a.diagonal().array() += 1.0;
    lu_.compute(a);
    rcond_ = lu_.rcond();
    if (!(rcond_ > 1e-12)) throw NumericalError("ShellSolver: I + C_z V~ is numerically singular");
}

CMat ShellSolver::solve(const CMat& rhs) const { return lu_.solve(rhs); }

CMat ShellSolver::source(const CMat& rhs) const
{
    const cplx v0 = prob_.coupling.eta + prob_.coupling.tau, v1 = prob_.coupling.eta - prob_.coupling.tau;
    CMat rho = solve(rhs);
    for (Eigen::Index r = 0; r < rho.rows(); ++r) rho.row(r) *= (r % 2 == 0) ? v0 : v1;
    return rho;
}

CMat shell_correction_galerkin(const ShellSolver& s, const CMat& t_z, const CMat& t_zbar)
{
    const RVec w = boundary_weights(*s.problem().curve);
    return t_zbar.adjoint() * w.asDiagonal() * s.source(t_z);
}

ShellField::ShellField(const ShellProblem& p, const ProbeSource& v) : prob_(p), v_(v)
{
    ShellSolver s(p);
    build(s);
}

ShellField::ShellField(const ShellSolver& s, const ProbeSource& v) : prob_(s.problem()), v_(v) { build(s); }

void ShellField::build(const ShellSolver& s)
{
    pr_ = std::make_unique<ProbeResolvent>(prob_.sp, v_.probes);
    const PlanarCurve& c = *prob_.curve;
    CVec trace = CVec::Zero(2 * c.size());
    if (!v_.is_zero()) trace = assemble_phi_adjoint_trace(*pr_, c).mat * v_.coeffs;
    psi_ = s.source(trace);
    layer_ = std::make_unique<LayerField>(prob_.sp, c, psi_);
}

Vec2c ShellField::incident(const Vec2& x) const
{
    Vec2c u = Vec2c::Zero();
    for (std::size_t b = 0; b < v_.probes.size(); ++b)
        if (v_.coeffs[b] != 0.0) u += v_.coeffs[b] * pr_->apply(static_cast<int>(b), x);
    return u;
}

Vec2c ShellField::operator()(const Vec2& x) const { return incident(x) - (*layer_)(x); }

std::vector<Vec2c> shell_resolvent_apply(const ShellProblem& p, const ProbeSource& v,
                                         const std::vector<Vec2>& points)
{
    ShellField u(p, v);
    std::vector<Vec2c> out(points.size());
    parallel_for(static_cast<int>(points.size()), [&](int k) { out[k] = u(points[k]); });
    return out;
}

real confinement_leakage(const ShellProblem& p, const ProbeSource& v, const std::vector<Vec2>& inside,
                         const std::vector<Vec2>& outside, bool allow_nonconfining)
{
    if (!allow_nonconfining && std::abs(p.coupling.d() + 4.0) > 1e-10)
        throw DomainError("confinement_leakage: requires d~ = -4 (pass allow_nonconfining for controls)");
    if (v.is_zero()) {
        std::cerr << "confinement_leakage: zero source, returning 0\n";
        return 0.0;
    }
    const std::vector<Vec2c> ui = shell_resolvent_apply(p, v, inside);
    const std::vector<Vec2c> uo = shell_resolvent_apply(p, v, outside);
    real ni = 0.0, no = 0.0;
    for (const auto& u : ui) ni += u.squaredNorm();
    for (const auto& u : uo) no += u.squaredNorm();
    if (ni == 0.0) {
        std::cerr << "confinement_leakage: field vanishes on the inside samples, returning 0\n";
        return 0.0;
    }
    return std::sqrt(no / ni);
}

real transmission_residual(const ShellProblem& p, const ProbeSource& v, int samples)
{
    const PlanarCurve& c = *p.curve;
    if (samples < 1 || samples > c.size()) throw DomainError("transmission_residual: bad sample count");
    const ShellField u(p, v);
    const auto offs = trace_offsets();
    const Mat2c vm = p.coupling.eta * Mat2c::Identity() + p.coupling.tau * beta2();
    real res = 0.0, scale = 0.0;
    for (int k = 0; k < samples; ++k) {
        const int i = static_cast<int>(static_cast<long>(k) * c.size() / samples);
        const Vec2c tp = extrapolated_trace(u, c, i, Side::plus, offs);
        const Vec2c tm = extrapolated_trace(u, c, i, Side::minus, offs);
        const Mat2c an = alpha_dot2(c.normals()[i].x(), c.normals()[i].y());
        res = std::max(res, (I * an * (tp - tm) + 0.5 * vm * (tp + tm)).norm());
        scale = std::max(scale, tp.norm() + tm.norm());
    }
    return scale > 0.0 ? res / scale : 0.0;
}

}  // namespace shellwave
