#include <cmath>
#include <sstream>

#include "doctest.h"
#include "shellwave/lab.hpp"
#include "shellwave/probes.hpp"

using namespace shellwave;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig cfg;
    cfg.n = 64;
    cfg.K = 4;
    cfg.probe_count = 4;
    cfg.eps = {0.1, 0.05};
    return cfg;
}

}  // namespace

TEST_SUITE("lab")
{
    TEST_CASE("distance of identical and scaled matrices")
    {
        const std::vector<Probe> ps = default_probes(4);
        const CMat g = probe_gram(ps);
        const CMat a = g * CMat::Identity(4, 4) * cplx(0.3, 0.2);
        CHECK(measure_distance(a, a, g) == 0.0);
        // a = c G is the Galerkin matrix of c times the identity
        CHECK(measure_distance(2.0 * a, a, g) == doctest::Approx(std::abs(cplx(0.3, 0.2))).epsilon(1e-4));
        CHECK_THROWS_AS(measure_distance(a, CMat::Zero(3, 3), g), DomainError);
    }

    TEST_CASE("line fit recovers an exact line")
    {
        const LineFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
        CHECK(f.slope == doctest::Approx(2.0));
        CHECK(f.intercept == doctest::Approx(1.0));
        CHECK(f.rms < 1e-12);
    }

    TEST_CASE("shell-shell distance depends on eps only through f")
    {
        ExperimentConfig a = small_config(), b = small_config();
        a.scaling = ScalingLaw::logarithmic(2.0, 0.4);
        a.eps = {0.1};
        b.scaling = ScalingLaw::logarithmic(1.0, 0.4);
        b.eps = {0.01};
        const auto ra = run_shell_shell(a), rb = run_shell_shell(b);
        REQUIRE(ra[0].f == doctest::Approx(rb[0].f).epsilon(1e-14));
        CHECK(std::abs(ra[0].delta1 - rb[0].delta1) <= 1e-12 * ra[0].delta1);
    }

    TEST_CASE("a larger nested probe set never sees a smaller distance")
    {
        ExperimentConfig a = small_config(), b = small_config();
        a.probe_count = 8;
        b.probe_count = 16;
        const auto ra = run_shell_shell(a), rb = run_shell_shell(b);
        for (std::size_t k = 0; k < ra.size(); ++k) CHECK(ra[k].delta1 <= rb[k].delta1 * (1 + 1e-4));
    }

    TEST_CASE("full run is consistent and round-trips through CSV")
    {
        const RateReport rep = run_theorem(small_config());
        REQUIRE(rep.records.size() == 2);
        CHECK(rep.records[0].eps > rep.records[1].eps);
        CHECK(rep.triangle_excess <= 1e-8);
        for (const auto& r : rep.records) {
            CHECK(std::isfinite(r.delta_total));
            CHECK(r.env1 == doctest::Approx(std::exp(-r.f * 2.0)));
        }

        std::stringstream ss;
        write_rate_csv(ss, rep.records, "abc");
        CHECK(ss.str().rfind("# manifest-sha256: abc\n", 0) == 0);
        const auto back = read_rate_csv(ss);
        REQUIRE(back.size() == 2);
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(back[k].delta2 == rep.records[k].delta2);
            CHECK(back[k].ratio1 == rep.records[k].ratio1);
        }

        std::ostringstream svg;
        write_rate_svg(svg, rep.records, "abc");
        CHECK(svg.str().find("<svg") != std::string::npos);
        CHECK(svg.str().find("abc") != std::string::npos);
    }

    TEST_CASE("single eps gives a degenerate report")
    {
        RateRecord r;
        r.eps = 0.1;
        r.delta1 = r.delta2 = r.delta_total = 1.0;
        const RateReport rep = summarize({r});
        CHECK(rep.degenerate);
    }

    TEST_CASE("malformed CSV reports the line")
    {
        std::istringstream bad("# manifest-sha256: x\neps,f,delta1,delta2,delta_total,env1,env2,ratio1,ratio2\n0.1,2\n");
        try {
            read_rate_csv(bad);
            FAIL("expected an error");
        } catch (const std::exception& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }

    TEST_CASE("config validation")
    {
        ExperimentConfig cfg = small_config();
        cfg.coupling = Coupling{2.0, 1.0};
        CHECK_THROWS_AS(cfg.validate(), DomainError);
        cfg = small_config();
        cfg.eps = {0.05, 0.1};
        CHECK_THROWS_AS(cfg.validate(), DomainError);
        cfg = small_config();
        cfg.eps = {1.5};
        CHECK_THROWS_AS(cfg.validate(), DomainError);
        CHECK_NOTHROW(small_config().validate());
    }
}
