#include "shellwave/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "shellwave/boundary.hpp"
#include "shellwave/linalg.hpp"
#include "shellwave/parallel.hpp"
#include "shellwave/probes.hpp"
#include "shellwave/shell.hpp"
#include "shellwave/tube.hpp"

namespace shellwave {

void ExperimentConfig::validate() const
{
    if (!(coupling.d() < 0.0)) throw DomainError("config: coupling must satisfy d = eta^2 - tau^2 < 0");
    if (z.imag() == 0.0) throw DomainError("config: z must be non-real");
    if (!(scaling.gamma() > 0.0 && scaling.gamma() < 0.5)) throw DomainError("config: gamma must lie in (0, 1/2)");
    if (eps.empty()) throw DomainError("config: eps list is empty");
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (!(eps[k] > 0.0)) throw DomainError("config: eps values must be positive");
        if (k > 0 && !(eps[k] < eps[k - 1])) throw DomainError("config: eps list must be strictly decreasing");
    }
    if (n < 16 || n % 2 != 0) throw DomainError("config: n must be even and >= 16");
    if (K < 2) throw DomainError("config: K must be >= 2");
    if (probe_count < 1) throw DomainError("config: probe count must be >= 1");
    if (!(probe_width > 0.0)) throw DomainError("config: probe width must be positive");
    ProfileQ::from_name(profile);
    const PlanarCurve c(curve, n);
    if (!(eps.front() < c.injectivity_bound()))
        throw DomainError("config: largest eps " + std::to_string(eps.front()) + " exceeds the tube bound " +
                          std::to_string(c.injectivity_bound()));
}

real measure_distance(const CMat& a, const CMat& b, const CMat& gram)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("measure_distance: shape mismatch");
    const CMat diff = a - b;
    if (diff.isZero(0.0)) return 0.0;
    return galerkin_norm(diff, gram, gram);
}

LineFit fit_line(const std::vector<real>& x, const std::vector<real>& y)
{
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw DomainError("fit_line: need at least two points");
    real mx = 0, my = 0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    real sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    if (sxx == 0.0) throw DomainError("fit_line: abscissae coincide");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    real ss = 0;
    for (std::size_t k = 0; k < n; ++k) ss += std::pow(y[k] - f.intercept - f.slope * x[k], 2);
    f.rms = std::sqrt(ss / n);
    return f;
}

namespace {

// Everything that does not depend on eps.
struct Fixed {
    PlanarCurve curve;
    SpectralParam sp, spb;
    std::vector<Probe> probes;
    CMat gram, cz, tz, tzb, sh_tilde;
    ProfileQ q;

    explicit Fixed(const ExperimentConfig& cfg)
        : curve(cfg.curve, cfg.n), sp(cfg.spectral()), spb(sp.conj()),
          probes(default_probes(cfg.probe_count, cfg.probe_width)), q(ProfileQ::from_name(cfg.profile))
    {
        gram = probe_gram(probes);
        cz = assemble_Cz(sp, curve).mat;
        tz = assemble_phi_adjoint_trace(sp, curve, probes).mat;
        tzb = assemble_phi_adjoint_trace(spb, curve, probes).mat;
        const ShellSolver s(ShellProblem(curve, confining_limit(cfg.coupling), sp), cz);
        sh_tilde = shell_correction_galerkin(s, tz, tzb);
    }

    CMat shell_eps(const Coupling& v, real fval) const
    {
        const ShellSolver s(ShellProblem(curve, eps_coupling_at(v, fval), sp), cz);
        return shell_correction_galerkin(s, tz, tzb);
    }
};

RateRecord base_record(const ExperimentConfig& cfg, real eps)
{
    RateRecord r;
    r.eps = eps;
    r.f = cfg.scaling(eps);
    r.env1 = std::exp(-r.f * std::sqrt(-cfg.coupling.d()));
    r.env2 = cfg.scaling.envelope(eps);
    return r;
}

std::vector<RateRecord> run(const ExperimentConfig& cfg, bool squeeze)
{
    cfg.validate();
    const Fixed fx(cfg);
    const int ne = static_cast<int>(cfg.eps.size());
    std::vector<RateRecord> out(ne);
    parallel_for(ne, [&](int k) {
        RateRecord r = base_record(cfg, cfg.eps[k]);
        const CMat sh_eps = fx.shell_eps(cfg.coupling, r.f);
        r.delta1 = measure_distance(fx.sh_tilde, sh_eps, fx.gram);
        if (squeeze) {
            const TubeGrid g = make_tube_grid(fx.curve, r.eps, cfg.K);
            const CMat cz_eps = assemble_C_eps(ProbeResolvent(fx.sp, fx.probes), g).mat;
            const CMat czb_eps = assemble_C_eps(ProbeResolvent(fx.spb, fx.probes), g).mat;
            const CVec fvq = fvq_diagonal(cfg.coupling, r.f, fx.q, fx.curve.size(), g.t);
            const CMat b = assemble_B_eps(fx.sp, g).mat;
            const CMat sq = squeezed_correction_galerkin(g, b, fvq, cz_eps, czb_eps);
            r.delta2 = measure_distance(sh_eps, sq, fx.gram);
            r.delta_total = measure_distance(fx.sh_tilde, sq, fx.gram);
        }
        r.ratio1 = r.delta1 / r.env1;
        r.ratio2 = r.delta2 / r.env2;
        out[k] = r;
    });
    return out;
}

}  // namespace

std::vector<RateRecord> run_shell_shell(const ExperimentConfig& cfg) { return run(cfg, false); }

std::vector<RateRecord> run_shell_squeeze(const ExperimentConfig& cfg) { return run(cfg, true); }

RateReport summarize(std::vector<RateRecord> records)
{
    std::sort(records.begin(), records.end(), [](const RateRecord& a, const RateRecord& b) { return a.eps > b.eps; });
    RateReport rep;
    rep.records = records;
    const std::size_t n = records.size();
    rep.triangle_excess = -std::numeric_limits<real>::infinity();
    for (const auto& r : records)
        rep.triangle_excess = std::max(rep.triangle_excess, r.delta_total - r.delta1 - r.delta2);
    if (n < 2) {
        rep.degenerate = true;
        return rep;
    }
    rep.delta1_decreasing = rep.delta2_decreasing = true;
    for (std::size_t k = 1; k < n; ++k) {
        rep.delta1_decreasing = rep.delta1_decreasing && records[k].delta1 < records[k - 1].delta1;
        rep.delta2_decreasing = rep.delta2_decreasing && records[k].delta2 < records[k - 1].delta2;
    }
    std::vector<real> le, ld2, lenv2, lr;
    real rmin = records[0].ratio1, rmax = rmin;
    for (const auto& r : records) {
        le.push_back(std::log(r.eps));
        ld2.push_back(std::log(r.delta2));
        lenv2.push_back(std::log(r.env2));
        lr.push_back(std::log(r.delta_total / (r.env1 + r.env2)));
        rmin = std::min(rmin, r.ratio1);
        rmax = std::max(rmax, r.ratio1);
    }
    rep.ratio1_band = rmax / rmin;
    rep.delta2_vs_eps = fit_line(le, ld2);
    rep.delta2_vs_env = fit_line(lenv2, ld2);
    real mean = 0, top = lr[0];
    for (real v : lr) {
        mean += v / n;
        top = std::max(top, v);
    }
    rep.total_constant = std::exp(mean);
    rep.total_overshoot = std::exp(top - mean) - 1.0;
    return rep;
}

RateReport run_theorem(const ExperimentConfig& cfg) { return summarize(run_shell_squeeze(cfg)); }

namespace {

std::string fmt17(real v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

}  // namespace

void write_rate_csv(std::ostream& os, const std::vector<RateRecord>& records, const std::string& manifest_hash)
{
    os << "# manifest-sha256: " << manifest_hash << "\n";
    os << "eps,f,delta1,delta2,delta_total,env1,env2,ratio1,ratio2\n";
    for (const auto& r : records) {
        const real v[] = {r.eps, r.f, r.delta1, r.delta2, r.delta_total, r.env1, r.env2, r.ratio1, r.ratio2};
        for (int k = 0; k < 9; ++k) os << (k ? "," : "") << fmt17(v[k]);
        os << "\n";
    }
}

std::vector<RateRecord> read_rate_csv(std::istream& is)
{
    std::vector<RateRecord> out;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "eps,f,delta1,delta2,delta_total,env1,env2,ratio1,ratio2")
                throw DomainError("rate csv line " + std::to_string(lineno) + ": unexpected header");
            header = true;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        real v[9];
        int k = 0;
        while (std::getline(ss, cell, ',')) {
            if (k >= 9) break;
            try {
                v[k++] = std::stod(cell);
            } catch (const std::exception&) {
                throw DomainError("rate csv line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (k != 9) throw DomainError("rate csv line " + std::to_string(lineno) + ": expected 9 columns");
        out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
    }
    return out;
}

void write_rate_svg(std::ostream& os, const std::vector<RateRecord>& records, const std::string& manifest_hash)
{
    const real W = 640, H = 440, L = 70, R = 150, T = 30, B = 50;
    struct Series {
        const char* name;
        const char* color;
        bool dashed;
        real RateRecord::*field;
    };
    const Series series[] = {{"delta1", "#1f77b4", false, &RateRecord::delta1},
                             {"delta2", "#d62728", false, &RateRecord::delta2},
                             {"delta_total", "#2ca02c", false, &RateRecord::delta_total},
                             {"env1", "#1f77b4", true, &RateRecord::env1},
                             {"env2", "#d62728", true, &RateRecord::env2}};
    real xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& r : records) {
        xlo = std::min(xlo, std::log10(r.eps));
        xhi = std::max(xhi, std::log10(r.eps));
        for (const auto& s : series)
            if (r.*s.field > 0) {
                ylo = std::min(ylo, std::log10(r.*s.field));
                yhi = std::max(yhi, std::log10(r.*s.field));
            }
    }
    if (records.empty() || ylo > yhi) {
        xlo = -2, xhi = 0, ylo = -1, yhi = 0;
    }
    xlo = std::floor(xlo * 2) / 2, xhi = std::ceil(xhi * 2) / 2;
    ylo = std::floor(ylo), yhi = std::ceil(yhi);
    if (xhi <= xlo) xhi = xlo + 0.5;
    if (yhi <= ylo) yhi = ylo + 1;
    auto px = [&](real lx) { return L + (lx - xlo) / (xhi - xlo) * (W - L - R); };
    auto py = [&](real ly) { return H - B - (ly - ylo) / (yhi - ylo) * (H - T - B); };
    char buf[256];
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<!-- manifest-sha256: " << manifest_hash << " -->\n";
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" font-family=\"sans-serif\" "
                  "font-size=\"12\">\n",
                  W, H);
    os << buf;
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n",
                  L, T, W - L - R, H - T - B);
    os << buf;
    for (real d = ylo; d <= yhi + 1e-9; d += 1) {
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%g\" y1=\"%.2f\" x2=\"%g\" y2=\"%.2f\" stroke=\"#ddd\"/><text x=\"%g\" y=\"%.2f\" "
                      "text-anchor=\"end\">1e%d</text>\n",
                      L, py(d), W - R, py(d), L - 6, py(d) + 4, static_cast<int>(d));
        os << buf;
    }
    for (const auto& r : records) {
        const real x = px(std::log10(r.eps));
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%g\" x2=\"%.2f\" y2=\"%g\" stroke=\"#ddd\"/><text x=\"%.2f\" y=\"%g\" "
                      "text-anchor=\"middle\">%g</text>\n",
                      x, T, x, H - B, x, H - B + 16, r.eps);
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">eps</text>\n", (L + W - R) / 2,
                  H - 12);
    os << buf;
    int legend = 0;
    for (const auto& s : series) {
        std::string pts;
        for (const auto& r : records)
            if (r.*s.field > 0) {
                std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(std::log10(r.eps)), py(std::log10(r.*s.field)));
                pts += buf;
            }
        if (pts.empty()) continue;
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
           << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << pts << "\"/>\n";
        const real ly = T + 16 + 18 * legend++;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" stroke-width=\"1.5\"%s/><text x=\"%g\" "
                      "y=\"%g\">%s</text>\n",
                      W - R + 10, ly, W - R + 36, ly, s.color, s.dashed ? " stroke-dasharray=\"6,4\"" : "",
                      W - R + 42, ly + 4, s.name);
        os << buf;
    }
    os << "</svg>\n";
}

}  // namespace shellwave
