#include <cmath>

#include "doctest.h"
#include "shellwave/boundary.hpp"
#include "shellwave/quadrature.hpp"
#include "support/circle_oracle.hpp"

using namespace shellwave;

namespace {

CVec sample(const oracle::TrigDensity& d, const PlanarCurve& c)
{
    CVec psi(2 * c.size());
    for (int i = 0; i < c.size(); ++i)
        for (int k = 0; k < 2; ++k) psi[2 * i + k] = d.eval(k, c.params()[i]);
    return psi;
}

// max over nodes of the one-sided trace error of C psi -+ (i/2)(alpha.nu) psi, relative
real jump_error(const SpectralParam& sp, int n, const oracle::TrigDensity& d, real R)
{
    const PlanarCurve c = make_curve(CurveSpec::circle(R), n);
    const oracle::CircleOracle orc(d, R, sp.kappa.real(), sp.z, sp.m);
    const CVec psi = sample(d, c);
    const CVec cpsi = assemble_Cz(sp, c).mat * psi;
    real err = 0, scale = 0;
    for (int i = 0; i < n; ++i) {
        const Mat2c an = alpha_dot2(c.normals()[i].x(), c.normals()[i].y());
        const Vec2c half = 0.5 * I * an * psi.segment<2>(2 * i);
        const Vec2c tin = orc.trace(c.params()[i], true), tout = orc.trace(c.params()[i], false);
        err = std::max({err, (tin - (cpsi.segment<2>(2 * i) - half)).norm(),
                        (tout - (cpsi.segment<2>(2 * i) + half)).norm()});
        scale = std::max(scale, tin.norm());
    }
    return err / scale;
}

}  // namespace

TEST_SUITE("boundary")
{
    TEST_CASE("jump relations on a circle converge to the Graf traces")
    {
        const auto d = oracle::decaying_density(300);
        for (real m : {0.0, 0.7}) {
            CAPTURE(m);
            const SpectralParam sp(cplx(0, 1.3), m);
            real prev = 1e300;
            for (int n : {64, 128, 256, 512}) {
                const real e = jump_error(sp, n, d, 1.5);
                CAPTURE(n);
                CHECK(e < prev);
                prev = e;
            }
            CHECK(prev <= 1e-6);
        }
    }

    TEST_CASE("layer potential and the probe traces are adjoint")
    {
        const SpectralParam sp(cplx(0, 1), 0.3);
        const PlanarCurve c = make_curve(CurveSpec::circle(1.0), 256);
        const CVec psi = sample(oracle::decaying_density(20), c);
        const Probe p{Vec2(0.2, 0.1), 0.1, 1};
        const LayerField field(sp.conj(), c, psi);

        // volume side over the probe support with a polar product rule
        const QuadRule rr = composite_gauss(16, 4, 0.0, p.support_radius());
        const int na = 96;
        cplx lhs = 0;
        for (std::size_t i = 0; i < rr.size(); ++i)
            for (int a = 0; a < na; ++a) {
                const real th = 2 * pi * a / na;
                const Vec2 x = p.center + rr.nodes[i] * Vec2(std::cos(th), std::sin(th));
                lhs += rr.weights[i] * rr.nodes[i] * (2 * pi / na) * p.value(x).dot(field(x));
            }

        const DiscreteOperator t = assemble_phi_adjoint_trace(sp, c, {p});
        const RVec w = boundary_weights(c);
        const cplx rhs = t.mat.col(0).dot(w.asDiagonal() * psi);
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(rhs));
    }

    TEST_CASE("assembled potential matches the near-field evaluator away from the curve")
    {
        const SpectralParam sp(cplx(0.2, 0.9), 0.5);
        const PlanarCurve c = make_curve(CurveSpec::ellipse(1.2, 0.8), 128);
        const CVec psi = sample(oracle::decaying_density(10), c);
        const std::vector<Vec2> targets = {Vec2(0, 0), Vec2(0.3, -0.2), Vec2(2.0, 0.5), Vec2(-1.5, 1.5)};
        const DiscreteOperator phi = assemble_phi(sp, c, targets);
        const CVec u = phi.mat * psi;
        const LayerField field(sp, c, psi);
        for (std::size_t k = 0; k < targets.size(); ++k)
            CHECK((u.segment<2>(2 * k) - field(targets[k])).norm() <= 1e-9 * field(targets[k]).norm());
    }

    TEST_CASE("weighted adjoint reproduces weighted inner products")
    {
        const SpectralParam sp(cplx(0, 1), 0.0);
        const PlanarCurve c = make_curve(CurveSpec::circle(1.0), 32);
        const DiscreteOperator C = assemble_Cz(sp, c);
        const CMat adj = C.weighted_adjoint();
        const CVec a = CVec::LinSpaced(64, 0.0, 1.0) * cplx(1, 0.5), b = CVec::LinSpaced(64, -1.0, 2.0);
        const cplx l = (C.mat * a).dot(C.out_weights.asDiagonal() * b);
        const cplx r = a.dot(C.in_weights.asDiagonal() * (adj * b));
        CHECK(std::abs(l - r) <= 1e-12 * std::abs(l));
    }

    TEST_CASE("H^{1/2} diagnostic of a single mode")
    {
        const PlanarCurve c = make_curve(CurveSpec::circle(1.0), 32);
        CVec psi = CVec::Zero(64);
        for (int i = 0; i < 32; ++i) psi[2 * i] = std::exp(I * (3 * c.params()[i]));
        CHECK(h_half_norm_sq_circle(c, psi) == doctest::Approx(2 * pi * std::sqrt(10.0)).epsilon(1e-12));
    }

    TEST_CASE("trace offsets halve")
    {
        const auto o = trace_offsets(0.02, 5);
        REQUIRE(o.size() == 5);
        CHECK(o[4] == doctest::Approx(0.02 / 16));
    }
}
