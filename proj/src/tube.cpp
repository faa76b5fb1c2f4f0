#include "shellwave/tube.hpp"

#include <cmath>

#include "shellwave/linalg.hpp"
#include "shellwave/parallel.hpp"
#include "shellwave/quadrature.hpp"

namespace shellwave {

namespace {

real wrap(real u)
{
    u = std::fmod(u, 2.0 * pi);
    if (u > pi) u -= 2.0 * pi;
    if (u <= -pi) u += 2.0 * pi;
    return u;
}

// Barycentric Lagrange interpolation on fixed nodes.
struct Bary {
    std::vector<real> x, w;

    explicit Bary(std::vector<real> nodes) : x(std::move(nodes)), w(x.size(), 1.0)
    {
        for (std::size_t k = 0; k < x.size(); ++k)
            for (std::size_t l = 0; l < x.size(); ++l)
                if (l != k) w[k] /= (x[k] - x[l]);
    }

    void eval(real t, real* out) const
    {
        const std::size_t m = x.size();
        real s = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const real d = t - x[k];
            if (d == 0.0) {
                for (std::size_t l = 0; l < m; ++l) out[l] = (l == k) ? 1.0 : 0.0;
                return;
            }
            out[k] = w[k] / d;
            s += out[k];
        }
        for (std::size_t k = 0; k < m; ++k) out[k] /= s;
    }
};

struct CurveSample {
    Vec2 x, nu;
    real speed, kappa;
};

CurveSample sample(const PlanarCurve& c, real s)
{
    return {c.point(s), c.normal(s), c.speed(s), c.curvature(s)};
}

}  // namespace

RVec tube_flat_weights(const PlanarCurve& c, const std::vector<real>& g)
{
    const int n = c.size(), K = static_cast<int>(g.size());
    RVec w(2 * n * K);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < K; ++j) w[2 * (i * K + j)] = w[2 * (i * K + j) + 1] = c.weights()[i] * g[j];
    return w;
}

RVec tube_jacobian_weights(const TubeGrid& g)
{
    RVec w = tube_flat_weights(*g.curve, g.g);
    for (int k = 0; k < g.size(); ++k) {
        w[2 * k] *= g.jac[k];
        w[2 * k + 1] *= g.jac[k];
    }
    return w;
}

RVec M_eps_diagonal(const TubeGrid& g)
{
    RVec m(2 * g.size());
    for (int k = 0; k < g.size(); ++k) m[2 * k] = m[2 * k + 1] = g.jac[k];
    return m;
}

CMat M_eps_apply(const TubeGrid& g, const CMat& density) { return M_eps_diagonal(g).asDiagonal() * density; }

DiscreteOperator assemble_A_eps(const SpectralParam& sp, const TubeGrid& g, const std::vector<Vec2>& targets)
{
    const PlanarCurve& c = *g.curve;
    const int T = static_cast<int>(targets.size()), N = g.size();
    // reject targets in the closed tube: distance to the curve sampled finely
    for (const Vec2& x : targets) {
        real dmin = std::numeric_limits<real>::max();
        const int m = 16 * c.size();
        for (int k = 0; k < m; ++k) dmin = std::min(dmin, (x - c.point(2.0 * pi * k / m)).norm());
        if (dmin <= g.eps * (1.0 + 1e-3)) throw DomainError("assemble_A_eps: target lies in the closed tube");
    }
    DiscreteOperator op;
    op.mat = CMat::Zero(2 * T, 2 * N);
    op.in_weights = tube_flat_weights(c, g.g);
    op.out_weights = RVec::Ones(2 * T);
    op.in_space = "tube";
    op.out_space = "field samples";
    parallel_for(T, [&](int t) {
        for (int i = 0; i < c.size(); ++i)
            for (int j = 0; j < g.K; ++j) {
                const int k = g.index(i, j);
                const Vec2 d = targets[t] - g.x[k];
                op.mat.block<2, 2>(2 * t, 2 * k) = green_2d_fast(sp, d.x(), d.y()) * (c.weights()[i] * g.g[j] * g.jac[k]);
            }
    });
    return op;
}

DiscreteOperator assemble_B_eps(const SpectralParam& sp, const TubeGrid& g, const BepsOptions& opt)
{
    const PlanarCurve& c = *g.curve;
    const int n = c.size(), K = g.K, N = g.size();
    const real h = c.h(), eps = g.eps;
    const int m = opt.stencil;
    if (m % 2 != 0 || m < 4) throw DomainError("assemble_B_eps: stencil must be even and >= 4");

    DiscreteOperator op;
    op.mat = CMat::Zero(2 * N, 2 * N);
    op.in_weights = op.out_weights = tube_flat_weights(c, g.g);
    op.in_space = op.out_space = "tube";

    std::vector<real> equi(m);
    for (int k = 0; k < m; ++k) equi[k] = k;
    const Bary bary_s(equi), bary_t(g.t);
    const QuadRule& gl_r = gauss_legendre(opt.radial_order);
    const QuadRule& gl_a = gauss_legendre(opt.angular_order);
    const QuadRule& gl_p = gauss_legendre(opt.panel_order);

    parallel_for(N, [&](int row) {
        const int i = row / K, j = row % K;
        const Vec2 T = g.x[row];
        const real spi = c.speeds()[i];
        const real a = std::max(2.0 * eps / spi, h);
        const real wp = 2.0 * h, cp = a + 6.0 * wp, D = a + 12.0 * wp;
        if (D >= pi) throw DomainError("assemble_B_eps: eps too large for the near-field partition; raise n");
        auto chi = [&](real u) { return 0.5 * std::erfc((std::abs(u) - cp) / wp); };

        const int W = static_cast<int>(std::ceil(D / h)) + m + 1;
        std::vector<Mat2c> buf((2 * W + 1) * K, Mat2c::Zero());
        std::vector<real> ls(m), lt(K);

        // distribute a kernel sample at parameter offset u = sigma' - s_i over the stencil
        auto spread = [&](real u, const Mat2c& gw, const real* tw) {
            const int ib = static_cast<int>(std::floor(u / h));
            const int first = ib - m / 2 + 1;
            bary_s.eval(u / h - first, ls.data());
            for (int a_ = 0; a_ < m; ++a_) {
                const int o = first + a_ + W;
                if (tw == nullptr) continue;
                for (int l = 0; l < K; ++l) {
                    const real f = ls[a_] * tw[l];
                    if (f != 0.0) buf[o * K + l] += gw * f;
                }
            }
        };

        // far part
        for (int ip = 0; ip < n; ++ip) {
            const real om = 1.0 - chi(wrap(c.params()[ip] - c.params()[i]));
            if (om <= 1e-17) continue;
            for (int l = 0; l < K; ++l) {
                const int col = g.index(ip, l);
                const Vec2 d = T - g.x[col];
                op.mat.block<2, 2>(2 * row, 2 * col) +=
                    green_2d_fast(sp, d.x(), d.y()) * (om * c.weights()[ip] * g.g[l] * g.jac[col]);
            }
        }

        // side panels, transverse Gauss nodes of the grid
        std::vector<real> edges{a};
        for (real width = std::min(a, wp); edges.back() < D; width = std::min(1.5 * width, wp))
            edges.push_back(std::min(D, edges.back() + width));
        std::vector<real> tw(K);
        for (int side = -1; side <= 1; side += 2)
            for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
                const real lo = edges[p], hi = edges[p + 1], half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
                for (std::size_t q = 0; q < gl_p.size(); ++q) {
                    const real u = side * (mid + half * gl_p.nodes[q]);
                    const real wq = gl_p.weights[q] * half * chi(u);
                    const CurveSample cs = sample(c, c.params()[i] + u);
                    for (int l = 0; l < K; ++l) {
                        const Vec2 d = T - (cs.x + eps * g.t[l] * cs.nu);
                        const Mat2c gw = green_2d_fast(sp, d.x(), d.y())
                                         * (wq * cs.speed * (1.0 + eps * g.t[l] * cs.kappa) * g.g[l]);
                        std::fill(tw.begin(), tw.end(), 0.0);
                        tw[l] = 1.0;
                        spread(u, gw, tw.data());
                    }
                }
            }

        // core rectangle in local coordinates U = (sigma' - s_i)|gamma'_i|, V = eps (s' - t_j)
        const real Um = -a * spi, Up = a * spi, Vm = -eps * (1.0 + g.t[j]), Vp = eps * (1.0 - g.t[j]);
        const Vec2 P[4] = {Vec2(Um, Vm), Vec2(Up, Vm), Vec2(Up, Vp), Vec2(Um, Vp)};
        for (int k = 0; k < 4; ++k) {
            const Vec2 P0 = P[k], E = P[(k + 1) % 4] - P0;
            const real L = E.norm();
            const real cr = std::abs(P0.x() * E.y() - P0.y() * E.x());
            const real delta = cr / L;
            const real p0 = -P0.dot(E) / (L * L);
            const real tlo = std::asinh((0.0 - p0) * L / delta), thi = std::asinh((1.0 - p0) * L / delta);
            const int npan = std::max(1, static_cast<int>(std::ceil((thi - tlo) / 2.0)));
            for (int pa = 0; pa < npan; ++pa)
            for (std::size_t qa = 0; qa < gl_a.size(); ++qa) {
                const real th = 0.5 * (thi - tlo) / npan, tm = tlo + (2 * pa + 1) * th;
                const real tau = tm + th * gl_a.nodes[qa];
                const real pp = p0 + (delta / L) * std::sinh(tau);
                const real wa = gl_a.weights[qa] * th * (delta / L) * std::cosh(tau);
                const Vec2 edge_pt = P0 + pp * E;
                for (std::size_t qr = 0; qr < gl_r.size(); ++qr) {
                    const real xi = 0.5 * (1.0 + gl_r.nodes[qr]);
                    const real lam = xi * xi;
                    const real wr = gl_r.weights[qr] * 0.5 * 2.0 * xi;
                    const Vec2 uv = lam * edge_pt;
                    const real u = uv.x() / spi, sp_t = g.t[j] + uv.y() / eps;
                    const CurveSample cs = sample(c, c.params()[i] + u);
                    const Vec2 d = T - (cs.x + eps * sp_t * cs.nu);
                    const real w = wa * wr * lam * cr * chi(u) * cs.speed * (1.0 + eps * sp_t * cs.kappa) / (spi * eps);
                    bary_t.eval(sp_t, lt.data());
                    spread(u, green_2d_fast(sp, d.x(), d.y()) * w, lt.data());
                }
            }
        }

        for (int o = -W; o <= W; ++o) {
            const int ip = ((i + o) % n + n) % n;
            for (int l = 0; l < K; ++l) {
                const Mat2c& b = buf[(o + W) * K + l];
                if (b.isZero(0.0)) continue;
                op.mat.block<2, 2>(2 * row, 2 * g.index(ip, l)) += b;
            }
        }
    });
    return op;
}

DiscreteOperator assemble_C_eps(const ProbeResolvent& pr, const TubeGrid& g)
{
    const int N = g.size(), P = static_cast<int>(pr.probes().size());
    DiscreteOperator op;
    op.mat = CMat::Zero(2 * N, P);
    op.in_weights = RVec::Ones(P);
    op.out_weights = tube_flat_weights(*g.curve, g.g);
    op.in_space = "probe coefficients";
    op.out_space = "tube";
    parallel_for(N, [&](int k) {
        for (int b = 0; b < P; ++b) op.mat.block<2, 1>(2 * k, b) = pr.apply(b, g.x[k]);
    });
    return op;
}

Eigen::MatrixXd sign_matrix(const std::vector<real>& t, const std::vector<real>& g)
{
    const int K = static_cast<int>(t.size());
    const Bary bary(t);
    Eigen::MatrixXd S(K, K);
    std::vector<real> lw(K);
    for (int j = 0; j < K; ++j) {
        const QuadRule q = gauss_legendre(K, -1.0, t[j]);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(K);
        for (std::size_t r = 0; r < q.size(); ++r) {
            bary.eval(q.nodes[r], lw.data());
            for (int l = 0; l < K; ++l) acc[l] += q.weights[r] * lw[l];
        }
        for (int l = 0; l < K; ++l) S(j, l) = 2.0 * acc[l] - g[l];
    }
    return S;
}

CMat assemble_A0(const CMat& phi, const std::vector<real>& g)
{
    const int K = static_cast<int>(g.size()), n = static_cast<int>(phi.cols() / 2);
    CMat a(phi.rows(), 2 * n * K);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < K; ++l) a.middleCols(2 * (i * K + l), 2) = phi.middleCols(2 * i, 2) * g[l];
    return a;
}

CMat assemble_B0(const CMat& cz, const PlanarCurve& c, const std::vector<real>& t, const std::vector<real>& g)
{
    const int n = c.size(), K = static_cast<int>(t.size()), N = n * K;
    const Eigen::MatrixXd S = sign_matrix(t, g);
    CMat b = CMat::Zero(2 * N, 2 * N);
    for (int i = 0; i < n; ++i)
        for (int ip = 0; ip < n; ++ip) {
            const Mat2c blk = cz.block<2, 2>(2 * i, 2 * ip);
            for (int j = 0; j < K; ++j)
                for (int l = 0; l < K; ++l) b.block<2, 2>(2 * (i * K + j), 2 * (ip * K + l)) = blk * g[l];
        }
    for (int i = 0; i < n; ++i) {
        const Mat2c an = (0.5 * I) * alpha_dot2(c.normals()[i].x(), c.normals()[i].y());
        for (int j = 0; j < K; ++j)
            for (int l = 0; l < K; ++l) b.block<2, 2>(2 * (i * K + j), 2 * (i * K + l)) += an * S(j, l);
    }
    return b;
}

CMat assemble_C0(const CMat& phi_star, int K)
{
    const int n = static_cast<int>(phi_star.rows() / 2);
    CMat c(2 * n * K, phi_star.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < K; ++j) c.middleRows(2 * (i * K + j), 2) = phi_star.middleRows(2 * i, 2);
    return c;
}

CVec fvq_diagonal(const Coupling& v, real fval, const ProfileQ& q, int n, const std::vector<real>& t)
{
    const int K = static_cast<int>(t.size());
    CVec d(2 * n * K);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < K; ++j) {
            const real s = fval * q.q(t[j]);
            d[2 * (i * K + j)] = s * (v.eta + v.tau);
            d[2 * (i * K + j) + 1] = s * (v.eta - v.tau);
        }
    return d;
}

CMat squeezed_layer_solve(const CMat& b, const CVec& fvq, const CMat& rhs, real* rcond_out)
{
    CMat a = b * fvq.asDiagonal();
    a.diagonal().array() += 1.0;
    Eigen::PartialPivLU<CMat> lu(a);
    const real rc = lu.rcond();
    if (rcond_out) *rcond_out = rc;
    if (!(rc > 1e-12)) throw NumericalError("squeezed_layer_solve: I + B f V q is numerically singular");
    return fvq.asDiagonal() * lu.solve(rhs);
}

CMat squeezed_correction_galerkin(const TubeGrid& g, const CMat& b_eps, const CVec& fvq, const CMat& c_z,
                                  const CMat& c_zbar)
{
    const RVec w = tube_jacobian_weights(g);
    return c_zbar.adjoint() * w.asDiagonal() * squeezed_layer_solve(b_eps, fvq, c_z);
}

std::vector<Vec2c> squeezed_resolvent_apply(const SqueezeProblem& pb, const ProbeSource& v,
                                            const std::vector<Vec2>& points)
{
    const TubeGrid& g = *pb.grid;
    ProbeResolvent pr(pb.sp, v.probes);
    std::vector<Vec2c> out(points.size(), Vec2c::Zero());
    parallel_for(static_cast<int>(points.size()), [&](int k) {
        for (std::size_t b = 0; b < v.probes.size(); ++b) out[k] += v.coeffs[b] * pr.apply(static_cast<int>(b), points[k]);
    });
    if (v.is_zero() || pb.fval == 0.0 || (pb.coupling.eta == 0.0 && pb.coupling.tau == 0.0)) return out;
    const CVec fvq = fvq_diagonal(pb.coupling, pb.fval, pb.q, g.curve->size(), g.t);
    const CMat b = assemble_B_eps(pb.sp, g).mat;
    const CVec cv = assemble_C_eps(pr, g).mat * v.coeffs;
    const CVec dens = squeezed_layer_solve(b, fvq, cv);
    const CVec corr = assemble_A_eps(pb.sp, g, points).mat * dens;
    for (std::size_t k = 0; k < points.size(); ++k) out[k] -= corr.segment<2>(2 * k);
    return out;
}

CVec limit_layer_solve(const CMat& cz, const PlanarCurve& c, const Coupling& v, real fval, const ProfileQ& q,
                       const std::vector<real>& t, const CVec& trace)
{
    if (!(v.d() < 0.0)) throw DomainError("limit_layer_solve: requires d < 0");
    const int n = c.size(), K = static_cast<int>(t.size());
    const Coupling ve = eps_coupling_at(v, fval);
    CMat a = right_multiply_nodes(cz, ve.eta + ve.tau, ve.eta - ve.tau);
    a.diagonal().array() += 1.0;
    Eigen::PartialPivLU<CMat> lu(a);
    if (!(lu.rcond() > 1e-12)) throw NumericalError("limit_layer_solve: I + C_z V~_eps is numerically singular");
    const CVec rho = lu.solve(trace);
    const DiracRep rep = make_dirac_rep(2);
    const CMat vm = v.matrix(rep);
    CVec out(2 * n * K);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < K; ++j) {
            const CMat lm = layer_matrix(rep, c.normals()[i], v, fval, q.Q(t[j]));
            out.segment<2>(2 * (i * K + j)) = fval * q.q(t[j]) * vm * lm * rho.segment<2>(2 * i);
        }
    return out;
}

namespace {

void require_massless_imaginary(const SpectralParam& sp, const char* who)
{
    if (sp.m != 0.0 || sp.z.real() != 0.0) throw DomainError(std::string(who) + ": requires m = 0 and z in iR");
}

}  // namespace

real layer_bound_diagnostic(const SqueezeProblem& pb, const CMat& b_eps)
{
    require_massless_imaginary(pb.sp, "layer_bound_diagnostic");
    const TubeGrid& g = *pb.grid;
    const CVec fvq = fvq_diagonal(pb.coupling, pb.fval, pb.q, g.curve->size(), g.t);
    CMat a = b_eps * fvq.asDiagonal();
    a.diagonal().array() += 1.0;
    const Eigen::PartialPivLU<CMat> lu(a);
    const RVec sw = tube_flat_weights(*g.curve, g.g).cwiseSqrt();
    // W^{1/2} F (I + B F)^{-1} W^{-1/2} and its adjoint
    auto fwd = [&](const CVec& x) -> CVec {
        return sw.asDiagonal() * (fvq.asDiagonal() * lu.solve(CVec(sw.cwiseInverse().asDiagonal() * x)));
    };
    auto adj = [&](const CVec& x) -> CVec {
        const CVec y = fvq.conjugate().asDiagonal() * CVec(sw.asDiagonal() * x);
        return sw.cwiseInverse().asDiagonal() * CVec(lu.adjoint().solve(y));
    };
    return power_norm(fwd, adj, static_cast<int>(a.rows()), 1e-6);
}

real e_eps_sigma_min(const SqueezeProblem& pb, const CMat& b_eps)
{
    require_massless_imaginary(pb.sp, "e_eps_sigma_min");
    const TubeGrid& g = *pb.grid;
    const int n = g.curve->size(), K = g.K;
    const real sgn = pb.coupling.tau >= 0.0 ? 1.0 : -1.0;
    RVec dd(2 * n * K);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < K; ++j) {
            const real sq = std::sqrt(pb.q.q(g.t[j]));
            dd[2 * (i * K + j)] = sq * std::sqrt(std::abs(pb.coupling.eta + pb.coupling.tau));
            dd[2 * (i * K + j) + 1] = sq * std::sqrt(std::abs(pb.coupling.eta - pb.coupling.tau));
        }
    const RVec minv = M_eps_diagonal(g).cwiseInverse();
    CMat e = (pb.fval * sgn) * (dd.asDiagonal() * b_eps * (minv.cwiseProduct(dd)).asDiagonal());
    for (Eigen::Index k = 0; k < e.rows(); ++k) e(k, k) += (k % 2 == 0) ? 1.0 : -1.0;
    const RVec sw = tube_flat_weights(*g.curve, g.g).cwiseSqrt();
    const CMat ew = sw.asDiagonal() * e * sw.cwiseInverse().asDiagonal();
    const Eigen::PartialPivLU<CMat> lu(ew);
    auto fwd = [&](const CVec& x) -> CVec { return lu.solve(x); };
    auto adj = [&](const CVec& x) -> CVec { return lu.adjoint().solve(x); };
    return 1.0 / power_norm(fwd, adj, static_cast<int>(ew.rows()), 1e-6);
}

}  // namespace shellwave
