#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "shellwave/bessel.hpp"
#include "shellwave/dirac.hpp"
#include "shellwave/geometry.hpp"
#include "shellwave/green.hpp"

namespace shellwave::cli {

namespace {

struct SuiteResult {
    real residual = 0.0;
    std::string error;
};

CMat taylor_cos_half(const CMat& a, int terms)
{
    CMat sum = CMat::Identity(a.rows(), a.cols()), term = sum;
    const CMat h2 = 0.25 * a * a;
    for (int k = 1; k < terms; ++k) {
        term = -term * h2 / static_cast<real>((2 * k - 1) * (2 * k));
        sum += term;
    }
    return sum;
}

CMat taylor_exp(const CMat& a, int terms)
{
    CMat sum = CMat::Identity(a.rows(), a.cols()), term = sum;
    for (int k = 1; k < terms; ++k) {
        term = term * a / static_cast<real>(k);
        sum += term;
    }
    return sum;
}

SuiteResult algebra(const SelftestOptions& opt)
{
    SuiteResult r;
    std::mt19937 rng(11);
    std::uniform_real_distribution<real> u(-1.0, 1.0);
    for (int theta : {2, 3}) {
        DiracRep rep = make_dirac_rep(theta);
        if (opt.perturb_beta) rep.beta(0, 0) += 1e-3;
        const CMat id = rep.identity();
        std::vector<CMat> all = rep.alphas;
        all.push_back(rep.beta);
        for (std::size_t j = 0; j < all.size(); ++j)
            for (std::size_t k = 0; k < all.size(); ++k) {
                const CMat ac = all[j] * all[k] + all[k] * all[j] - (j == k ? 2.0 : 0.0) * id;
                r.residual = std::max(r.residual, ac.norm());
            }
        for (int s = 0; s < 20; ++s) {
            std::vector<real> x(theta);
            real n2 = 0;
            for (auto& v : x) {
                v = u(rng);
                n2 += v * v;
            }
            const CMat ax = alpha_dot(rep, std::span<const real>(x));
            r.residual = std::max(r.residual, (ax * ax - n2 * id).norm());
        }
    }
    DiracRep rep = make_dirac_rep(2);
    if (opt.perturb_beta) rep.beta(0, 0) += 1e-3;
    for (const Coupling c : {Coupling{0.5, 2.0}, Coupling{-1.0, 1.5}, Coupling{0.0, 2.0}}) {
        for (real qv : {0.5, 0.2}) {
            const CMat dm = d_factor(rep, c, qv);
            const real sg = c.tau > 0 ? 1.0 : -1.0;
            r.residual = std::max(r.residual, (c.matrix(rep) * qv - sg * dm * rep.beta * dm).norm());
        }
        const Vec2 nu(std::cos(0.7), std::sin(0.7));
        for (real f : {1.0, 2.5})
            for (real Q : {-0.5, 0.1, 0.5}) {
                const CMat a = f * alpha_dot(rep, nu) * c.matrix(rep);
                const CMat ref = taylor_cos_half(a, 40).inverse() * taylor_exp(-I * Q * a, 40);
                r.residual = std::max(r.residual, (layer_matrix(rep, nu, c, f, Q) - ref).norm() / ref.norm());
            }
    }
    return r;
}

SuiteResult kernels(const SelftestOptions& opt)
{
    SuiteResult r;
    struct Ref {
        cplx w, k0, k1;
    };
    // 30-digit values
    const Ref refs[] = {
        {cplx(0.1, 0.0), cplx(2.4270690247020165578, 0.0), cplx(9.8538447808706055744, 0.0)},
        {cplx(1.0, 0.5), cplx(0.30781894297405616512, -0.26016003994899662909),
         cplx(0.37632447542751791946, -0.40185493852129717231)},
        {cplx(3.0, 4.0), cplx(-0.0072390512135701550129, 0.026510418350267677215),
         cplx(-0.0056734204013233074638, 0.028666936579007818994)},
        {cplx(25.0, -10.0), cplx(-2.4122925550945025811e-12, -2.3103134123114409558e-12),
         cplx(-2.4379178568400238341e-12, -2.366226928566816325e-12)},
        {cplx(0.5, -2.0), cplx(-0.44690298020642235382, 0.26107140540714554867),
         cplx(-0.53736312546798977928, 0.18334815008505182016)},
    };
    for (const auto& ref : refs) {
        r.residual = std::max(r.residual, std::abs(bessel_k0(ref.w) - ref.k0) / std::abs(ref.k0));
        r.residual = std::max(r.residual, std::abs(bessel_k1(ref.w) - ref.k1) / std::abs(ref.k1));
    }
    DiracRep rep = make_dirac_rep(2);
    if (opt.perturb_beta) rep.beta(0, 0) += 1e-3;
    const SpectralParam sp(cplx(0.3, 1.1), 0.7);
    const std::vector<Vec2> pts = {Vec2(0.3, 0.1), Vec2(-1.2, 0.8), Vec2(0.05, -2.0)};
    for (const auto& x : pts) {
        const CMat g = green_2d(sp, rep, x);
        const CMat gs = green_2d(sp.conj(), rep, Vec2(-x));
        r.residual = std::max(r.residual, (g.adjoint() - gs).norm() / g.norm());
    }
    std::vector<std::vector<real>> p2;
    for (const auto& x : pts) p2.push_back({x.x(), x.y()});
    r.residual = std::max(r.residual, anticommutation_kernel_check(SpectralParam(cplx(0, 1), 0.0), rep, p2));
    return r;
}

SuiteResult geometry(const SelftestOptions&)
{
    SuiteResult r;
    const PlanarCurve c(CurveSpec::circle(1.5), 64);
    for (int i = 0; i < c.size(); i += 7) r.residual = std::max(r.residual, std::abs(c.curvatures()[i] - 1 / 1.5));
    r.residual = std::max(r.residual, std::abs(c.length() - 3.0 * pi));
    r.residual = std::max(r.residual, std::abs(tube_jacobian(c, 0.3, 0.15) - 1.1));
    r.residual = std::max(r.residual, std::abs(c.injectivity_bound() - 1.35));
    const PlanarCurve e(CurveSpec::ellipse(2.0, 1.0), 128);
    r.residual = std::max(r.residual, std::abs(e.length() - 9.6884482205476754));
    r.residual = std::max(r.residual, std::abs(e.max_abs_curvature() - 2.0));
    return r;
}

}  // namespace

int run_selftest(std::ostream& os, const SelftestOptions& opt)
{
    struct Suite {
        const char* name;
        std::function<SuiteResult(const SelftestOptions&)> run;
        real tol;
    };
    const Suite suites[] = {{"algebra", algebra, 1e-10}, {"kernels", kernels, 1e-10}, {"geometry", geometry, 1e-10}};
    int failed = 0;
    for (const auto& s : suites) {
        SuiteResult r;
        try {
            r = s.run(opt);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        const bool ok = r.error.empty() && r.residual <= s.tol;
        failed += !ok;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-9s residual %.3e (tol %.0e) %s", s.name, r.residual, s.tol, ok ? "ok" : "FAIL");
        os << buf;
        if (!r.error.empty()) os << ": " << r.error;
        os << "\n";
    }
    return failed;
}

}  // namespace shellwave::cli
