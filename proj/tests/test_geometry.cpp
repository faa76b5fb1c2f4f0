#include <cmath>
#include <random>

#include "doctest.h"
#include "shellwave/geometry.hpp"

using namespace shellwave;

namespace {

// Halton sequence in base b
real halton(int i, int b)
{
    real f = 1, r = 0;
    for (; i > 0; i /= b) {
        f /= b;
        r += f * (i % b);
    }
    return r;
}

// Distance from x to a dense closed polyline.
real polyline_distance(const std::vector<Vec2>& poly, const Vec2& x)
{
    real best = 1e300;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& a = poly[k];
        const Vec2& b = poly[(k + 1) % n];
        const Vec2 d = b - a;
        const real t = std::clamp((x - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
        best = std::min(best, (a + t * d - x).norm());
    }
    return best;
}

}  // namespace

TEST_SUITE("geometry")
{
    TEST_CASE("unit circle")
    {
        const PlanarCurve c(CurveSpec::circle(1.0), 64);
        for (int i = 0; i < c.size(); ++i) {
            const real s = c.params()[i];
            CHECK(std::abs(c.curvatures()[i] - 1.0) < 1e-14);
            CHECK((c.normals()[i] - Vec2(std::cos(s), std::sin(s))).norm() < 1e-14);
        }
        CHECK(std::abs(c.length() - 2 * pi) < 1e-12);
        CHECK(std::abs(c.injectivity_bound() - 0.9) < 1e-12);
    }

    TEST_CASE("ellipse and degenerate star")
    {
        const PlanarCurve e(CurveSpec::ellipse(2.0, 1.0), 128);
        CHECK((e.point(0) - Vec2(2, 0)).norm() < 1e-15);
        CHECK(std::abs(e.curvature(0) - 2.0) < 1e-13);
        CHECK(std::abs(e.injectivity_bound() - 0.45) < 1e-12);
        const PlanarCurve s(CurveSpec::star(1.0, 0.0, 5), 64), c(CurveSpec::circle(1.0), 64);
        for (int i = 0; i < 64; ++i) {
            CHECK((s.points()[i] - c.points()[i]).norm() < 1e-15);
            CHECK(std::abs(s.curvatures()[i] - c.curvatures()[i]) < 1e-14);
        }
        CHECK(std::abs(s.injectivity_bound() - 0.9) < 1e-12);
    }

    TEST_CASE("normals, closedness and orientation")
    {
        for (const CurveSpec spec : {CurveSpec::circle(1.3), CurveSpec::ellipse(1.5, 0.8), CurveSpec::star(1, 0.2, 5)}) {
            const PlanarCurve c(spec, 96);
            const Vec2 ctr = c.centroid();
            for (int i = 0; i < c.size(); ++i) {
                CHECK(std::abs(c.normals()[i].norm() - 1.0) < 1e-12);
                CHECK(c.normals()[i].dot(c.points()[i] - ctr) > 0.0);
            }
            CHECK((c.point(0) - c.point(2 * pi - 1e-13)).norm() < 1e-10);
            CHECK((c.d1(0) - c.d1(2 * pi)).norm() < 1e-10);
        }
    }

    TEST_CASE("trapezoidal rule is exact on low Fourier modes")
    {
        const PlanarCurve c(CurveSpec::circle(1.0), 32);
        for (int k = -15; k <= 15; ++k) {
            cplx s = 0;
            for (int i = 0; i < c.size(); ++i) s += c.weights()[i] * std::exp(cplx(0, k * c.params()[i]));
            CHECK(std::abs(s - (k == 0 ? 2 * pi : 0.0)) < 1e-12);
        }
    }

    TEST_CASE("curvature matches the turning rate of the tangent")
    {
        const PlanarCurve c(CurveSpec::star(1, 0.25, 3), 64);
        real prev = 0;
        for (real h : {1e-2, 5e-3}) {
            real err = 0;
            for (real s : {0.1, 1.0, 2.5, 4.0}) {
                auto tangent = [&](real u) { return Vec2(c.d1(u) / c.speed(u)); };
                const Vec2 dt = (tangent(s + h) - tangent(s - h)) / (2 * h);
                // dT/ds = kappa |gamma'| N with N the inward normal
                err = std::max(err, std::abs(dt.dot(-c.normal(s)) / c.speed(s) - c.curvature(s)));
            }
            if (prev > 0) CHECK(prev / err > 3.5);
            prev = err;
        }
    }

    TEST_CASE("tube map and Jacobian")
    {
        const PlanarCurve c(CurveSpec::circle(1.0), 64);
        CHECK((tube_point(c, 0, 0.1) - Vec2(1.1, 0)).norm() < 1e-15);
        CHECK((tube_point(c, 0, -0.1) - Vec2(0.9, 0)).norm() < 1e-15);
        CHECK((tube_point(c, 1.0, 0.0) - c.point(1.0)).norm() < 1e-15);
        CHECK_THROWS_AS(tube_point(c, 0, 0.95), DomainError);
        // outward normal: the outer side (t > 0) is stretched
        CHECK(std::abs(tube_jacobian(c, 0, 0.1) - 1.1) < 1e-15);
        CHECK(tube_jacobian(c, 0, 0.0) == 1.0);
        CHECK(tube_jacobian(c, 0, -0.1) < 1.0);
        CHECK(c.weingarten(0.3) == doctest::Approx(-1.0));
    }

    TEST_CASE("construction errors")
    {
        CHECK_THROWS_AS(PlanarCurve(CurveSpec::circle(1), 15), DomainError);
        CHECK_THROWS_AS(PlanarCurve(CurveSpec::circle(1), 8), DomainError);
        CHECK_THROWS_AS(PlanarCurve(CurveSpec::circle(-1), 32), DomainError);
        CHECK_THROWS_AS(PlanarCurve(CurveSpec::star(1, 1.2, 3), 64), DomainError);
    }

    TEST_CASE("tube grid weights")
    {
        const PlanarCurve c(CurveSpec::ellipse(1.5, 1.0), 64);
        const TubeGrid g = make_tube_grid(c, 0.2, 8);
        const RVec area = g.area_weights(), flat = g.flat_weights();
        for (int i = 0; i < c.size(); ++i)
            for (int j = 0; j < g.K; ++j) {
                const int k = g.index(i, j);
                const real direct = g.eps * c.weights()[i] * g.g[j] * tube_jacobian(c, c.params()[i], g.eps * g.t[j]);
                CHECK(std::abs(area[k] - direct) < 1e-12);
                CHECK(std::abs(area[k] - g.eps * flat[k] * g.jac[k]) < 1e-15);
                CHECK((g.x[k] - tube_point(c, c.params()[i], g.eps * g.t[j])).norm() < 1e-15);
            }
        CHECK_THROWS_AS(make_tube_grid(c, 0.7, 8), DomainError);
    }

    TEST_CASE("tube area against a quasi Monte Carlo count")
    {
        const real a = 1.5, b = 1.0, eps = 0.2;
        const PlanarCurve c(CurveSpec::ellipse(a, b), 64);
        const TubeGrid g = make_tube_grid(c, eps, 8);
        const real quad = g.area_weights().sum();
        const PlanarCurve dense(CurveSpec::ellipse(a, b), 2000);
        const real X = a + eps, Y = b + eps;
        const int N = 60000;
        int in_tube = 0, outer = 0;
        for (int k = 1; k <= N; ++k) {
            const Vec2 x(-X + 2 * X * halton(k, 2), -Y + 2 * Y * halton(k, 3));
            if (polyline_distance(dense.points(), x) < eps) {
                ++in_tube;
                if (std::pow(x.x() / a, 2) + std::pow(x.y() / b, 2) > 1) ++outer;
            }
        }
        const real box = 4 * X * Y;
        const real mc = box * in_tube / N, mc_outer = box * outer / N;
        CHECK(std::abs(mc - quad) / quad < 0.01);
        // the outer half has area eps L + pi eps^2 (integral of 1 + eps t kappa over t in (0,1))
        const real outer_exact = eps * c.length() + pi * eps * eps;
        CHECK(std::abs(mc_outer - outer_exact) / outer_exact < 0.01);
    }
}
