#pragma once

#include <string>
#include <vector>

#include "shellwave/geometry.hpp"
#include "shellwave/probes.hpp"

namespace shellwave {

/// Dense matrix between sampled spaces with the quadrature weights of both sides.
/// Vectors are node-major with the spinor component innermost: index 2*node + c.
struct DiscreteOperator {
    CMat mat;
    RVec in_weights;
    RVec out_weights;
    std::string in_space;
    std::string out_space;

    /// Adjoint with respect to the weighted inner products: W_in^{-1} mat^H W_out.
    CMat weighted_adjoint() const;
};

/// Curve weights repeated per spinor component.
RVec boundary_weights(const PlanarCurve& c);

/// Phi_z psi at the targets, plain trapezoid in the density; targets must be off the nodes.
DiscreteOperator assemble_phi(const SpectralParam& sp, const PlanarCurve& c, const std::vector<Vec2>& targets);

/// Columns: traces on the nodes of R_z p_b, i.e. the adjoint Phi_{conj z}^* applied to the probes.
DiscreteOperator assemble_phi_adjoint_trace(const ProbeResolvent& pr, const PlanarCurve& c);
DiscreteOperator assemble_phi_adjoint_trace(const SpectralParam& sp, const PlanarCurve& c,
                                            const std::vector<Probe>& probes);

/// Nystrom matrix of the principal-value boundary operator C_z.
DiscreteOperator assemble_Cz(const SpectralParam& sp, const PlanarCurve& c);

/// Multiply the 2x2 diagonal interaction diag(v0, v1) into every node block (from the right).
CMat right_multiply_nodes(const CMat& m, cplx v0, cplx v1);

/// Single-layer field Phi_z psi evaluated anywhere off Sigma, including close to it:
/// the density is interpolated locally and near panels are integrated adaptively.
class LayerField {
public:
    LayerField(const SpectralParam& sp, const PlanarCurve& c, const CVec& density, real tol = 1e-13);
    Vec2c operator()(const Vec2& x) const;
    Vec2c density_at(real s) const;

private:
    SpectralParam sp_;
    const PlanarCurve* c_;
    CVec psi_;
    real tol_;
    real near_dist_;
};

/// Omega_+ is the bounded side; nu points out of it.
enum class Side { plus, minus };

/// One-sided trace of a field at node i: samples at gamma -+ h nu for the offsets h,
/// polynomial extrapolation to h = 0.
template <class Field>
Vec2c extrapolated_trace(const Field& u, const PlanarCurve& c, int i, Side side,
                         const std::vector<real>& offsets);

/// Default offsets for extrapolated traces: h0 2^{-k}, k = 0..count-1.
std::vector<real> trace_offsets(real h0 = 0.02, int count = 5);

/// sum_k (1 + k^2)^{1/2} |hat psi_k|^2 over the Fourier modes of a circle density (diagnostic).
real h_half_norm_sq_circle(const PlanarCurve& c, const CVec& psi);

}  // namespace shellwave

#include "shellwave/boundary_impl.hpp"
