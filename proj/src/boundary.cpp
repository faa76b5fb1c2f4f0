#include "shellwave/boundary.hpp"

#include <cmath>

#include "shellwave/bessel.hpp"
#include "shellwave/parallel.hpp"
#include "shellwave/quadrature.hpp"

namespace shellwave {

CMat DiscreteOperator::weighted_adjoint() const
{
    return in_weights.cwiseInverse().asDiagonal() * mat.adjoint() * out_weights.asDiagonal();
}

RVec boundary_weights(const PlanarCurve& c)
{
    RVec w(2 * c.size());
    for (int i = 0; i < c.size(); ++i) w[2 * i] = w[2 * i + 1] = c.weights()[i];
    return w;
}

DiscreteOperator assemble_phi(const SpectralParam& sp, const PlanarCurve& c, const std::vector<Vec2>& targets)
{
    const int n = c.size(), T = static_cast<int>(targets.size());
    DiscreteOperator op;
    op.mat = CMat::Zero(2 * T, 2 * n);
    op.in_weights = boundary_weights(c);
    op.out_weights = RVec::Ones(2 * T);
    op.in_space = "boundary";
    op.out_space = "field samples";
    parallel_for(T, [&](int t) {
        for (int i = 0; i < n; ++i) {
            const Vec2 d = targets[t] - c.points()[i];
            if (d.norm() == 0.0) throw DomainError("assemble_phi: target lies on a curve node");
            op.mat.block<2, 2>(2 * t, 2 * i) = green_2d_fast(sp, d.x(), d.y()) * c.weights()[i];
        }
    });
    return op;
}

DiscreteOperator assemble_phi_adjoint_trace(const ProbeResolvent& pr, const PlanarCurve& c)
{
    const int n = c.size(), P = static_cast<int>(pr.probes().size());
    DiscreteOperator op;
    op.mat = CMat::Zero(2 * n, P);
    op.in_weights = RVec::Ones(P);
    op.out_weights = boundary_weights(c);
    op.in_space = "probe coefficients";
    op.out_space = "boundary";
    parallel_for(n, [&](int i) {
        for (int b = 0; b < P; ++b) op.mat.block<2, 1>(2 * i, b) = pr.apply(b, c.points()[i]);
    });
    return op;
}

DiscreteOperator assemble_phi_adjoint_trace(const SpectralParam& sp, const PlanarCurve& c,
                                            const std::vector<Probe>& probes)
{
    return assemble_phi_adjoint_trace(ProbeResolvent(sp, probes), c);
}

DiscreteOperator assemble_Cz(const SpectralParam& sp, const PlanarCurve& c)
{
    if (sp.z.imag() == 0.0) throw DomainError("assemble_Cz: z must not be real");
    const int n = c.size();
    const real h = c.h();
    const std::vector<real> R = kress_log_weights(n);
    const Mat2c mz = sp.m * beta2() + sp.z * Mat2c::Identity();
    const cplx diag_log = -euler_gamma - std::log(0.5 * sp.kappa);

    DiscreteOperator op;
    op.mat = CMat::Zero(2 * n, 2 * n);
    op.in_weights = op.out_weights = boundary_weights(c);
    op.in_space = op.out_space = "boundary";

    parallel_for(n, [&](int i) {
        const Vec2 x = c.points()[i];
        for (int j = 0; j < n; ++j) {
            const int off = ((i - j) % n + n) % n;
            const real spj = c.speeds()[j];
            if (j == i) {
                const Mat2c m1 = -mz * spj / (4.0 * pi);
                const Mat2c m2 = mz * ((diag_log - std::log(spj)) * spj / (2.0 * pi));
                op.mat.block<2, 2>(2 * i, 2 * j) = R[0] * m1 + h * m2;
                continue;
            }
            const Vec2 d = x - c.points()[j];
            const real r = d.norm();
            const Mat2c ad = alpha_dot2(d.x() / r, d.y() / r);
            const Mat2c cauchy = (I / (2.0 * pi * r)) * ad * spj;
            const cplx w = sp.kappa * r;
            cplx i0, i1;
            bessel_i01_scaled(w, i0, i1);
            const cplx ew = std::exp(w);
            i0 *= ew;
            i1 *= ew;
            const Mat2c m1 = (sp.k * i1 * ad - i0 * mz) * (spj / (4.0 * pi));
            const real ds = c.params()[i] - c.params()[j];
            const real lg = std::log(4.0 * std::pow(std::sin(0.5 * ds), 2));
            const Mat2c g = green_2d_fast(sp, d.x(), d.y()) * spj;
            const Mat2c m2 = g - cauchy - m1 * lg;
            Mat2c e = R[off] * m1 + h * m2;
            if (off % 2 == 1) e += 2.0 * h * cauchy;
            op.mat.block<2, 2>(2 * i, 2 * j) = e;
        }
    });
    return op;
}

CMat right_multiply_nodes(const CMat& m, cplx v0, cplx v1)
{
    CMat out = m;
    for (Eigen::Index col = 0; col < m.cols(); ++col) out.col(col) *= (col % 2 == 0) ? v0 : v1;
    return out;
}

LayerField::LayerField(const SpectralParam& sp, const PlanarCurve& c, const CVec& density, real tol)
    : sp_(sp), c_(&c), psi_(density), tol_(tol)
{
    if (density.size() != 2 * c.size()) throw DomainError("LayerField: density size does not match the curve");
    real vmax = 0.0;
    for (real v : c.speeds()) vmax = std::max(vmax, v);
    near_dist_ = 6.0 * c.h() * vmax;
}

Vec2c LayerField::density_at(real s) const
{
    const int n = c_->size(), half = 6;
    const real h = c_->h();
    const int i0 = static_cast<int>(std::floor(s / h));
    std::vector<real> nodes(2 * half), lw;
    for (int k = 0; k < 2 * half; ++k) nodes[k] = (i0 - half + 1 + k) * h;
    lagrange_weights(nodes, s, lw);
    Vec2c v = Vec2c::Zero();
    for (int k = 0; k < 2 * half; ++k) {
        const int idx = (((i0 - half + 1 + k) % n) + n) % n;
        v += lw[k] * psi_.segment<2>(2 * idx);
    }
    return v;
}

Vec2c LayerField::operator()(const Vec2& x) const
{
    const int n = c_->size();
    real dmin = std::numeric_limits<real>::max();
    for (int i = 0; i < n; ++i) dmin = std::min(dmin, (x - c_->points()[i]).norm());
    Vec2c u = Vec2c::Zero();
    if (dmin > near_dist_) {
        for (int i = 0; i < n; ++i) {
            const Vec2 d = x - c_->points()[i];
            u += green_2d_fast(sp_, d.x(), d.y()) * psi_.segment<2>(2 * i) * c_->weights()[i];
        }
        return u;
    }
    const real h = c_->h();
    auto f = [&](real s) -> Vec2c {
        const Vec2 d = x - c_->point(s);
        return green_2d_fast(sp_, d.x(), d.y()) * density_at(s) * c_->speed(s);
    };
    const QuadRule& gl = gauss_legendre(16);
    for (int p = 0; p < n; ++p) {
        const real lo = p * h, hi = lo + h;
        const real plen = h * c_->speeds()[p];
        const real dist = (x - c_->point(lo + 0.5 * h)).norm();
        if (dist > 3.0 * plen) {
            for (std::size_t q = 0; q < gl.size(); ++q)
                u += gl.weights[q] * 0.5 * h * f(lo + 0.5 * h * (1.0 + gl.nodes[q]));
        } else {
            u += adaptive_gauss(f, lo, hi, tol_);
        }
    }
    return u;
}

std::vector<real> trace_offsets(real h0, int count)
{
    std::vector<real> out;
    for (int k = 0; k < count; ++k) out.push_back(std::ldexp(h0, -k));
    return out;
}

real h_half_norm_sq_circle(const PlanarCurve& c, const CVec& psi)
{
    const int n = c.size();
    real acc = 0.0;
    for (int k = -n / 2; k < n / 2; ++k)
        for (int comp = 0; comp < 2; ++comp) {
            cplx ck = 0.0;
            for (int j = 0; j < n; ++j) ck += psi[2 * j + comp] * std::exp(-I * (k * c.params()[j]));
            ck /= n;
            acc += std::sqrt(1.0 + real(k) * k) * std::norm(ck);
        }
    return 2.0 * pi * acc;
}

}  // namespace shellwave
