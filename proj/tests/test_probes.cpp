#include <cmath>

#include "doctest.h"
#include "shellwave/probes.hpp"
#include "shellwave/quadrature.hpp"

using namespace shellwave;

namespace {

// (-i alpha.grad + m beta - z) u - p at x, central differences with step h
real dirac_residual(const SpectralParam& sp, const std::function<Vec2c(const Vec2&)>& u, const Probe& p,
                    const Vec2& x, real h)
{
    const Vec2c ux = (u(x + Vec2(h, 0)) - u(x - Vec2(h, 0))) / (2 * h);
    const Vec2c uy = (u(x + Vec2(0, h)) - u(x - Vec2(0, h))) / (2 * h);
    const Vec2c c = u(x);
    Vec2c r;
    // -i (sigma1 ux + sigma2 uy) + (m sigma3 - z) u
    r[0] = -I * (ux[1] - I * uy[1]) + (sp.m - sp.z) * c[0];
    r[1] = -I * (ux[0] + I * uy[0]) + (-sp.m - sp.z) * c[1];
    return (r - p.value(x)).norm();
}

}  // namespace

TEST_SUITE("probes")
{
    TEST_CASE("default layout is nested and deterministic")
    {
        const auto a = default_probes(8), b = default_probes(16);
        REQUIRE(a.size() == 8);
        for (int k = 0; k < 8; ++k) {
            CHECK(a[k].center == b[k].center);
            CHECK(a[k].comp == b[k].comp);
        }
        const real radii[] = {0.55, 1.0, 1.45, 1.9};
        for (int k = 0; k < 16; ++k) {
            CHECK(std::abs(b[k].center.norm() - radii[k % 4]) < 1e-14);
            CHECK(b[k].comp == (k / 4) % 2);
        }
    }

    TEST_CASE("Gram matrix closed form against quadrature")
    {
        const std::vector<Probe> ps = {Probe{Vec2(0.1, 0.2), 0.3, 0}, Probe{Vec2(0.4, -0.1), 0.2, 0},
                                       Probe{Vec2(0.0, 0.0), 0.25, 1}};
        const CMat G = probe_gram(ps);
        const QuadRule r = composite_gauss(20, 12, -3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                cplx s = 0;
                for (std::size_t i = 0; i < r.size(); ++i)
                    for (std::size_t j = 0; j < r.size(); ++j) {
                        const Vec2 x(r.nodes[i], r.nodes[j]);
                        s += r.weights[i] * r.weights[j] * ps[a].value(x).dot(ps[b].value(x));
                    }
                CHECK(std::abs(G(a, b) - s) < 1e-12);
            }
    }

    TEST_CASE("radial resolvent agrees with direct polar quadrature")
    {
        for (const SpectralParam& sp : {SpectralParam(cplx(0, 1), 0.0), SpectralParam(cplx(0.3, 0.8), 0.6)}) {
            const Probe p{Vec2(0.2, -0.3), 0.25, 1};
            for (const Vec2& x : {Vec2(0.2, -0.3), Vec2(0.5, 0.1), Vec2(1.9, 1.0), Vec2(-0.4, -0.5)}) {
                const Vec2c fast = volume_resolvent(sp, p, x);
                const Vec2c slow = volume_resolvent_polar(
                    sp, [&](const Vec2& y) { return p.value(y); }, p.center, p.support_radius(), x, 1e-12);
                CHECK((fast - slow).norm() <= 1e-9 * std::max(1.0, slow.norm()));
            }
        }
    }

    TEST_CASE("resolvent of a probe solves the Dirac equation")
    {
        const SpectralParam sp(cplx(0.2, 1.1), 0.5);
        const Probe p{Vec2(0, 0), 0.3, 0};
        const ProbeResolvent pr(sp, {p});
        const auto u = [&](const Vec2& x) { return pr.apply(0, x); };
        for (const Vec2& x : {Vec2(0.1, 0.05), Vec2(0.4, -0.2), Vec2(1.0, 0.7)}) {
            const real a = dirac_residual(sp, u, p, x, 4e-3), b = dirac_residual(sp, u, p, x, 2e-3);
            CHECK(b < 1e-4);
            CHECK(a / b > 3.0);
        }
    }

    TEST_CASE("far field decays with the spectral rate")
    {
        const SpectralParam sp(cplx(0, 1), 0.0);
        const Probe p{Vec2(0, 0), 0.3, 0};
        const real a = volume_resolvent(sp, p, Vec2(5, 0)).norm(), b = volume_resolvent(sp, p, Vec2(6, 0)).norm();
        CHECK(std::abs(b / a / std::exp(-1.0) - 1.0) < 0.15);
    }
}
