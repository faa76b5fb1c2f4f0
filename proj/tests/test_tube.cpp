#include <cmath>

#include "doctest.h"
#include "shellwave/probes.hpp"
#include "shellwave/quadrature.hpp"
#include "shellwave/tube.hpp"

using namespace shellwave;

namespace {

// smooth density on the unit-circle tube, in (angle, t)
Vec2c density(real s, real t)
{
    Vec2c v;
    v << std::cos(2 * s) + 0.3 * t * t, std::exp(I * s) * t;
    return v;
}

// (B_eps F)(T) on the unit circle by polar integration around T, with the annulus cut out exactly
Vec2c brute_force_b(const SpectralParam& sp, const Vec2& T, real eps)
{
    const auto inner = [&](real phi) -> Vec2c {
        const Vec2 e(std::cos(phi), std::sin(phi));
        const real b = T.dot(e), tt = T.squaredNorm();
        const real r_out = -b + std::sqrt(b * b - (tt - (1 + eps) * (1 + eps)));
        const auto f = [&](real rho) -> Vec2c {
            if (rho <= 0) return Vec2c::Zero();
            const Vec2 x = T + rho * e;
            return green_2d_fast(sp, -rho * e.x(), -rho * e.y()) * density(std::atan2(x.y(), x.x()), (x.norm() - 1) / eps) *
                   rho / eps;
        };
        const real dc = b * b - (tt - (1 - eps) * (1 - eps));
        if (dc > 0) {
            const real r1 = -b - std::sqrt(dc), r2 = -b + std::sqrt(dc);
            if (r1 > 0) return adaptive_gauss(f, 0, r1, 1e-12) + adaptive_gauss(f, r2, r_out, 1e-12);
        }
        return adaptive_gauss(f, 0, r_out, 1e-12);
    };
    Vec2c s = Vec2c::Zero();
    const int P = 256;
    for (int p = 0; p < P; ++p) s += adaptive_gauss(inner, 2 * pi * p / P, 2 * pi * (p + 1) / P, 1e-11);
    return s;
}

real flat_norm(const RVec& w, const CVec& v) { return std::sqrt((w.array() * v.array().abs2()).sum()); }

}  // namespace

TEST_SUITE("tube")
{
    TEST_CASE("B_eps rows against brute-force area integration")
    {
        const SpectralParam sp(cplx(0, 1), 0.0);
        const int n = 64, K = 8;
        const real eps = 0.1;
        const PlanarCurve c = make_curve(CurveSpec::circle(1.0), n);
        const TubeGrid g = make_tube_grid(c, eps, K);
        const CMat B = assemble_B_eps(sp, g).mat;
        CVec f(2 * n * K);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < K; ++l) f.segment<2>(2 * (i * K + l)) = density(c.params()[i], g.t[l]);
        const CVec bf = B * f;
        for (int row : {0, 5 * K + 1}) {
            const Vec2c ref = brute_force_b(sp, g.x[row], eps);
            CHECK((ref - bf.segment<2>(2 * row)).norm() <= 1e-7 * ref.norm());
        }
    }

    TEST_CASE("B_eps adjoint weak form and the beta sandwich")
    {
        const SpectralParam sp(cplx(0, 1), 0.0);
        const int n = 64, K = 6;
        const PlanarCurve c = make_curve(CurveSpec::circle(1.0), n);
        const TubeGrid g = make_tube_grid(c, 0.1, K);
        const RVec w = tube_flat_weights(c, g.g);
        const CMat B = assemble_B_eps(sp, g).mat, Bb = assemble_B_eps(sp.conj(), g).mat;
        const RVec mi = M_eps_diagonal(g).cwiseInverse();
        CMat F(2 * n * K, 6);
        for (int k = 0; k < 3; ++k)
            for (int cc = 0; cc < 2; ++cc) {
                F.col(2 * k + cc).setZero();
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < K; ++j)
                        F(2 * (i * K + j) + cc, 2 * k + cc) = std::exp(I * ((k - 1) * c.params()[i])) * (1 + g.t[j]);
            }
        const CMat lhs = F.adjoint() * w.asDiagonal() * B * mi.asDiagonal() * F;
        const CMat rhs = (F.adjoint() * w.asDiagonal() * Bb * mi.asDiagonal() * F).adjoint();
        CHECK((lhs - rhs).norm() <= 1e-8 * lhs.norm());

        CVec beta(2 * n * K);
        for (int a = 0; a < n * K; ++a) beta[2 * a] = 1, beta[2 * a + 1] = -1;
        CHECK((B * beta.asDiagonal() + beta.asDiagonal() * Bb).norm() <= 1e-12 * B.norm());
    }

    TEST_CASE("limit operators on constant and odd densities")
    {
        const SpectralParam sp(cplx(0, 1), 0.3);
        const int n = 16, K = 6;
        const PlanarCurve c = make_curve(CurveSpec::ellipse(1.2, 0.8), n);
        const TubeGrid g = make_tube_grid(c, 0.1, K);
        const CMat cz = assemble_Cz(sp, c).mat;
        const CMat b0 = assemble_B0(cz, c, g.t, g.g);
        CVec phi(2 * n), psi(2 * n * K), odd(2 * n * K);
        for (int i = 0; i < 2 * n; ++i) phi[i] = cplx(std::cos(0.3 * i), std::sin(0.7 * i));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < K; ++j) {
                psi.segment<2>(2 * (i * K + j)) = phi.segment<2>(2 * i);
                odd.segment<2>(2 * (i * K + j)) = g.t[j] * phi.segment<2>(2 * i);
            }
        const CVec lhs = b0 * psi, cphi = cz * phi;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < K; ++j) {
                const Mat2c an = alpha_dot2(c.normals()[i].x(), c.normals()[i].y());
                const Vec2c want = 2.0 * cphi.segment<2>(2 * i) + I * g.t[j] * an * phi.segment<2>(2 * i);
                CHECK((lhs.segment<2>(2 * (i * K + j)) - want).norm() <= 1e-12 * want.norm());
            }

        const std::vector<Vec2> targets = {Vec2(0.1, 0.2), Vec2(2.0, 0.0)};
        const CMat a0 = assemble_A0(assemble_phi(sp, c, targets).mat, g.g);
        CHECK((a0 * odd).norm() <= 1e-12 * (a0 * psi).norm());

        const CMat ps = assemble_phi_adjoint_trace(sp, c, default_probes(3)).mat;
        const CMat c0 = assemble_C0(ps, K);
        for (int i = 0; i < n; ++i)
            for (int j = 1; j < K; ++j) CHECK(c0.middleRows(2 * (i * K + j), 2) == c0.middleRows(2 * (i * K), 2));
    }

    TEST_CASE("closed-form limit layer equals the direct solve")
    {
        const SpectralParam sp(cplx(0, 1), 0.0);
        const int n = 48, K = 24;
        const PlanarCurve c = make_curve(CurveSpec::ellipse(1.2, 0.8), n);
        const CMat cz = assemble_Cz(sp, c).mat, ps = assemble_phi_adjoint_trace(sp, c, default_probes(4)).mat;
        const TubeGrid g = make_tube_grid(c, 0.1, K);
        const CMat b0 = assemble_B0(cz, c, g.t, g.g), c0 = assemble_C0(ps, K);
        const Coupling v{0.0, 2.0};
        for (real f : {1.0, 2.0, 4.0}) {
            CAPTURE(f);
            const CVec fvq = fvq_diagonal(v, f, ProfileQ::uniform(), n, g.t);
            const CMat direct = squeezed_layer_solve(b0, fvq, c0);
            real num = 0, den = 0;
            for (int col = 0; col < direct.cols(); ++col) {
                const CVec l = limit_layer_solve(cz, c, v, f, ProfileQ::uniform(), g.t, ps.col(col));
                num = std::max(num, (l - direct.col(col)).norm());
                den = std::max(den, direct.col(col).norm());
            }
            CHECK(num <= 1e-8 * den);
        }
    }

    TEST_CASE("limit layer grows like sqrt f")
    {
        const SpectralParam sp(cplx(0, 1), 0.0);
        const PlanarCurve c = make_curve(CurveSpec::circle(1.0), 64);
        const CMat cz = assemble_Cz(sp, c).mat, ps = assemble_phi_adjoint_trace(sp, c, default_probes(4)).mat;
        const TubeGrid g = make_tube_grid(c, 0.1, 64);
        const RVec w = tube_flat_weights(c, g.g);
        std::vector<real> lf, ln;
        for (real f : {2.0, 4.0, 8.0, 16.0}) {
            const CVec l = limit_layer_solve(cz, c, Coupling{0.0, 2.0}, f, ProfileQ::uniform(), g.t, ps.col(0));
            lf.push_back(std::log(f));
            ln.push_back(std::log(flat_norm(w, l)));
        }
        real mx = 0, my = 0, sxy = 0, sxx = 0;
        for (int i = 0; i < 4; ++i) mx += lf[i] / 4, my += ln[i] / 4;
        for (int i = 0; i < 4; ++i) sxy += (lf[i] - mx) * (ln[i] - my), sxx += (lf[i] - mx) * (lf[i] - mx);
        CHECK(std::abs(sxy / sxx - 0.5) <= 0.15);
        CHECK_THROWS_AS(limit_layer_solve(cz, c, Coupling{2.0, 1.0}, 2.0, ProfileQ::uniform(), g.t, ps.col(0)),
                        DomainError);
    }

    TEST_CASE("M_eps, layer diagnostics and their hypotheses")
    {
        const int n = 64, K = 8;
        const PlanarCurve c = make_curve(CurveSpec::circle(1.0), n);
        const TubeGrid g = make_tube_grid(c, 0.1, K);
        const RVec m = M_eps_diagonal(g);
        for (int i = 0; i < n; i += 7)
            for (int j = 0; j < K; ++j) CHECK(m[2 * (i * K + j)] == doctest::Approx(1 + 0.1 * g.t[j]).epsilon(1e-13));
        CHECK(tube_jacobian(c, 0, 0.05) == doctest::Approx(1.05));

        const SpectralParam sp(cplx(0, 1), 0.0);
        const CMat B = assemble_B_eps(sp, g).mat;
        const real f = 2 * std::log(10.0);
        const SqueezeProblem pb{&g, Coupling{0, 2}, f, ProfileQ::uniform(), sp};
        CHECK(e_eps_sigma_min(pb, B) >= 0.9);
        const real ratio = layer_bound_diagnostic(pb, B) / f;
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);

        SqueezeProblem bad = pb;
        bad.sp = SpectralParam(cplx(0, 1), 0.5);
        CHECK_THROWS_AS(e_eps_sigma_min(bad, B), DomainError);
        bad.sp = SpectralParam(cplx(0.2, 1), 0.0);
        CHECK_THROWS_AS(layer_bound_diagnostic(bad, B), DomainError);
    }
}
