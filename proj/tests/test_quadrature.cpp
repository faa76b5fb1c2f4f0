#include <cmath>

#include "doctest.h"
#include "shellwave/quadrature.hpp"

using namespace shellwave;

TEST_SUITE("quadrature")
{
    TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly")
    {
        for (int n : {1, 4, 12, 16, 40}) {
            const QuadRule& r = gauss_legendre(n);
            REQUIRE(r.size() == static_cast<std::size_t>(n));
            for (int p = 0; p <= 2 * n - 1; ++p) {
                real s = 0;
                for (std::size_t k = 0; k < r.size(); ++k) s += r.weights[k] * std::pow(r.nodes[k], p);
                const real exact = p % 2 ? 0.0 : 2.0 / (p + 1);
                CHECK(std::abs(s - exact) < 1e-14);
            }
        }
        CHECK_THROWS(gauss_legendre(0));
    }

    TEST_CASE("mapped and composite rules")
    {
        const QuadRule r = gauss_legendre(8, 1.0, 3.0);
        real s = 0;
        for (std::size_t k = 0; k < r.size(); ++k) s += r.weights[k] * std::exp(r.nodes[k]);
        CHECK(s == doctest::Approx(std::exp(3.0) - std::exp(1.0)).epsilon(1e-14));
        const QuadRule c = composite_gauss(6, 10, 0.0, pi);
        CHECK(c.size() == 60);
        real t = 0;
        for (std::size_t k = 0; k < c.size(); ++k) t += c.weights[k] * std::sin(c.nodes[k]);
        CHECK(t == doctest::Approx(2.0).epsilon(1e-14));
    }

    TEST_CASE("Lagrange weights reproduce polynomials and sum to one")
    {
        const std::vector<real> nodes{-1.0, -0.3, 0.2, 0.9, 1.4};
        std::vector<real> w;
        for (real x : {-0.7, 0.0, 0.2, 1.1}) {
            lagrange_weights(nodes, x, w);
            real s = 0, p = 0;
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                s += w[k];
                p += w[k] * (nodes[k] * nodes[k] * nodes[k] - 2 * nodes[k]);
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(p == doctest::Approx(x * x * x - 2 * x).epsilon(1e-13));
        }
    }

    TEST_CASE("Kress weights integrate the log kernel against trigonometric modes")
    {
        // int_0^{2pi} log(4 sin^2((t - s)/2)) e^{iks} ds = -2pi/|k| e^{ikt}, and 0 for k = 0
        const int n = 32;
        const auto R = kress_log_weights(n);
        REQUIRE(R.size() == static_cast<std::size_t>(n));
        const real t = 2 * pi * 5 / n;
        for (int k = 0; k < n / 2; ++k) {
            cplx s = 0;
            for (int j = 0; j < n; ++j) {
                const int off = ((5 - j) % n + n) % n;
                s += R[off] * std::exp(cplx(0, k * 2 * pi * j / n));
            }
            const cplx exact = k == 0 ? cplx(0) : -2 * pi / k * std::exp(cplx(0, k * t));
            CHECK(std::abs(s - exact) < 1e-12);
        }
    }

    TEST_CASE("trigonometric interpolation is exact on band-limited data")
    {
        const int n = 16;
        std::vector<real> w;
        for (real s : {0.1, 1.7, 4.0}) {
            trig_interp_weights(n, s, w);
            real v = 0;
            for (int j = 0; j < n; ++j) v += w[j] * (std::cos(3 * 2 * pi * j / n) + std::sin(5 * 2 * pi * j / n));
            CHECK(v == doctest::Approx(std::cos(3 * s) + std::sin(5 * s)).epsilon(1e-13));
        }
    }

    TEST_CASE("adaptive Gauss handles endpoint singularities")
    {
        const real v = adaptive_gauss([](real x) { return std::log(x); }, 0.0, 1.0, 1e-12);
        CHECK(v == doctest::Approx(-1.0).epsilon(1e-10));
        const cplx c = adaptive_gauss([](real x) { return std::exp(cplx(0, x)); }, 0.0, pi, 1e-13);
        CHECK(std::abs(c - cplx(0, 2)) < 1e-12);
    }
}
