#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "manifest.hpp"
#include "selftest.hpp"
#include "shellwave/lab.hpp"
#include "shellwave/parallel.hpp"
#include "shellwave/probes.hpp"
#include "shellwave/shell.hpp"

using namespace shellwave;
using namespace shellwave::cli;

namespace {

struct CurveFlags {
    std::string kind = "circle";
    double radius = 1.0;
    std::vector<double> axes{2.0, 1.0};
    std::vector<double> star{1.0, 0.2, 5.0};
    CLI::Option* radius_opt = nullptr;
    CLI::Option* axes_opt = nullptr;
    CLI::Option* star_opt = nullptr;

    void add(CLI::App* app)
    {
        app->add_option("--curve", kind, "Curve kind")->check(CLI::IsMember({"circle", "ellipse", "star"}));
        radius_opt = app->add_option("--radius", radius, "Circle radius");
        axes_opt = app->add_option("--axes", axes, "Ellipse semi-axes a,b")->expected(2)->delimiter(',');
        star_opt = app->add_option("--star", star, "Star r0,amp,freq")->expected(3)->delimiter(',');
    }

    CurveSpec resolve() const
    {
        auto conflict = [&](CLI::Option* o, const char* name) {
            if (o->count() > 0) throw CLI::ValidationError(std::string(name) + " conflicts with --curve " + kind);
        };
        if (kind == "circle") {
            conflict(axes_opt, "--axes");
            conflict(star_opt, "--star");
            return CurveSpec::circle(radius);
        }
        if (kind == "ellipse") {
            conflict(radius_opt, "--radius");
            conflict(star_opt, "--star");
            return CurveSpec::ellipse(axes[0], axes[1]);
        }
        conflict(radius_opt, "--radius");
        conflict(axes_opt, "--axes");
        if (star[2] != std::round(star[2])) throw CLI::ValidationError("--star frequency must be an integer");
        return CurveSpec::star(star[0], star[1], static_cast<int>(star[2]));
    }
};

// --probe x,y,width,component
std::vector<Probe> parse_probes(const std::vector<std::string>& specs, const std::vector<Probe>& fallback)
{
    if (specs.empty()) return fallback;
    std::vector<Probe> out;
    for (const auto& s : specs) {
        std::stringstream ss(s);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 4 || v[2] <= 0 || (v[3] != 0 && v[3] != 1))
            throw CLI::ValidationError("--probe expects x,y,width,component with width > 0 and component 0 or 1");
        out.push_back(Probe{Vec2(v[0], v[1]), v[2], static_cast<int>(v[3])});
    }
    return out;
}

nlohmann::json probes_json(const std::vector<Probe>& ps)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : ps) j.push_back({p.center.x(), p.center.y(), p.width, p.comp});
    return j;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

// samples on a square grid offset from the axes, skipping points too close to the curve
std::vector<Vec2> field_grid(const PlanarCurve& c, double half, int m)
{
    std::vector<Vec2> pts;
    const double h = 2 * half / m;
    const double keep = 0.25 * h;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const Vec2 x(-half + (b + 0.5) * h, -half + (a + 0.5) * h);
            double dmin = 1e300;
            for (const auto& p : c.points()) dmin = std::min(dmin, (x - p).norm());
            if (dmin > keep) pts.push_back(x);
        }
    return pts;
}

int cmd_shell_solve(const CurveFlags& cf, double eta, double tau, double m, double zre, double zim, int n,
                    const std::vector<std::string>& probe_specs, const std::string& out, bool force,
                    const std::vector<std::string>& defaults)
{
    const CurveSpec spec = cf.resolve();
    const std::vector<Probe> probes = parse_probes(probe_specs, {Probe{Vec2(0.3, 0.2), 0.3, 0}});
    const PlanarCurve c(spec, n);
    const ShellProblem p(c, Coupling{eta, tau}, SpectralParam(cplx(zre, zim), m));
    const std::string field_path = out + "/field.csv", summary_path = out + "/summary.txt",
                      manifest_path = out + "/manifest.json";
    check_overwrite({field_path, summary_path, manifest_path}, force);

    nlohmann::json params = {{"curve", spec.describe()}, {"eta", eta}, {"tau", tau}, {"m", m},  {"z_re", zre},
                             {"z_im", zim},              {"n", n},     {"probes", probes_json(probes)}};
    const RunManifest man = make_manifest("shell-solve", params, defaults);

    ProbeSource src{probes, CVec::Ones(static_cast<int>(probes.size()))};
    const ShellSolver solver(p);
    const ShellField u(solver, src);
    const auto pts = field_grid(c, 2.0 * std::max(spec.a, spec.b) * (1 + spec.amp), 40);
    std::vector<Vec2c> vals(pts.size());
    parallel_for(static_cast<int>(pts.size()), [&](int k) { vals[k] = u(pts[k]); });

    std::ostringstream fcsv;
    fcsv << "# manifest-sha256: " << man.hash() << "\n";
    fcsv << "x,y,re_u1,im_u1,re_u2,im_u2\n";
    for (std::size_t k = 0; k < pts.size(); ++k)
        fcsv << fmt(pts[k].x()) << "," << fmt(pts[k].y()) << "," << fmt(vals[k][0].real()) << ","
             << fmt(vals[k][0].imag()) << "," << fmt(vals[k][1].real()) << "," << fmt(vals[k][1].imag()) << "\n";

    const real tres = transmission_residual(p, src);
    const Coupling& v = p.coupling;
    std::ostringstream sum;
    sum << "# manifest-sha256: " << man.hash() << "\n";
    sum << "curve " << spec.describe() << " n " << n << "\n";
    sum << "d~ " << fmt(v.d()) << "\n";
    sum << "rcond " << fmt(solver.rcond()) << "\n";
    sum << "transmission_residual " << fmt(tres) << "\n";
    write_file(field_path, fcsv.str());
    write_file(summary_path, sum.str());
    write_file(manifest_path, man.to_json().dump(2) + "\n");
    std::cout << sum.str().substr(sum.str().find('\n') + 1);
    std::cout << "wrote " << field_path << ", " << summary_path << ", " << manifest_path << "\n";
    return 0;
}

int cmd_confine(const CurveFlags& cf, double eta, double tau, double m, double zim, int n, double threshold,
                bool allow_nonconfining, const std::vector<std::string>& probe_specs)
{
    const CurveSpec spec = cf.resolve();
    const PlanarCurve c(spec, n);
    const ShellProblem p(c, Coupling{eta, tau}, SpectralParam(cplx(0.0, zim), m));
    const double s = spec.kind == CurveKind::circle ? spec.a : std::min(spec.a, spec.b) * (1 - std::abs(spec.amp));
    const std::vector<Probe> probes = parse_probes(probe_specs, {Probe{Vec2(0.1 * s, 0.05 * s), 0.15 * s, 0}});
    std::vector<Vec2> inside, outside;
    for (int k = 0; k < 3; ++k) {
        const double ang = 0.4 + 2.1 * k;
        for (double r : {0.2, 0.45, 0.7}) inside.push_back(r * s * Vec2(std::cos(ang), std::sin(ang)));
        const double big = spec.kind == CurveKind::circle ? spec.a : std::max(spec.a, spec.b) * (1 + std::abs(spec.amp));
        for (double r : {1.3, 1.6, 2.0}) outside.push_back(r * big * Vec2(std::cos(ang), std::sin(ang)));
    }
    const real leak = confinement_leakage(p, ProbeSource{probes, CVec::Ones(static_cast<int>(probes.size()))}, inside,
                                          outside, allow_nonconfining);
    const bool pass = leak <= threshold;
    std::printf("d~ %.17g\nleakage %.6e\nthreshold %.1e\n%s\n", p.coupling.d(), leak, threshold, pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

int cmd_converge(const std::string& config, const std::string& out, bool force)
{
    const ResolvedConfig rc = load_experiment_file(config);
    const std::string csv_path = out + "/rates.csv", svg_path = out + "/rates.svg", manifest_path = out + "/manifest.json";
    check_overwrite({csv_path, svg_path, manifest_path}, force);
    const RunManifest man = make_manifest("converge", experiment_to_json(rc.experiment), rc.defaults_applied);
    const RateReport rep = run_theorem(rc.experiment);
    std::ostringstream csv, svg;
    write_rate_csv(csv, rep.records, man.hash());
    write_rate_svg(svg, rep.records, man.hash());
    write_file(csv_path, csv.str());
    write_file(svg_path, svg.str());
    write_file(manifest_path, man.to_json().dump(2) + "\n");
    std::cout << csv.str();
    if (rep.degenerate) {
        std::cout << "single eps: no fit\n";
    } else {
        std::printf("delta1 decreasing %s, ratio band %.3g\n", rep.delta1_decreasing ? "yes" : "no", rep.ratio1_band);
        std::printf("delta2 decreasing %s, slope in log eps %.3f (rms %.2g)\n", rep.delta2_decreasing ? "yes" : "no",
                    rep.delta2_vs_eps.slope, rep.delta2_vs_eps.rms);
        std::printf("total constant %.4g, max overshoot %.1f%%\n", rep.total_constant, 100 * rep.total_overshoot);
        std::printf("triangle excess %.3g\n", rep.triangle_excess);
    }
    std::cout << "wrote " << csv_path << ", " << svg_path << ", " << manifest_path << "\n";
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out, bool force)
{
    std::ifstream f(csv_path);
    if (!f) throw std::runtime_error("cannot open '" + csv_path + "'");
    std::string first;
    std::getline(f, first);
    const std::string tag = "# manifest-sha256: ";
    const std::string hash = first.rfind(tag, 0) == 0 ? first.substr(tag.size()) : "unknown";
    f.clear();
    f.seekg(0);
    const auto recs = read_rate_csv(f);
    check_overwrite({out}, force);
    std::ostringstream svg;
    write_rate_svg(svg, recs, hash);
    write_file(out, svg.str());
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dirac operators with delta-shell and squeezed potentials on planar curves"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: SHELLWAVE_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    auto* selftest = app.add_subcommand("selftest", "Run fast invariant suites");
    bool perturb = false;
    selftest->add_flag("--inject-beta-perturbation", perturb, "Negative control: perturb beta (must fail)");

    auto* solve = app.add_subcommand("shell-solve", "Solve the delta-shell resolvent for probe sources");
    CurveFlags solve_curve;
    solve_curve.add(solve);
    double eta = 0.0, tau = 2.0, mass = 0.0, zre = 0.0, zim = 1.0;
    int n = 128;
    std::vector<std::string> probe_specs;
    std::string out;
    bool force = false;
    solve->add_option("--eta", eta, "Electrostatic strength of V~");
    solve->add_option("--tau", tau, "Lorentz scalar strength of V~");
    solve->add_option("--m", mass, "Mass");
    solve->add_option("--z-re", zre, "Real part of z");
    solve->add_option("--z-im", zim, "Imaginary part of z (non-zero)");
    solve->add_option("--n", n, "Boundary nodes (even, >= 16)");
    solve->add_option("--probe", probe_specs, "Probe x,y,width,component (repeatable)");
    solve->add_option("--out", out, "Output directory")->required();
    solve->add_flag("--force", force, "Overwrite existing outputs");

    auto* confine = app.add_subcommand("confine", "Leakage of the shell resolvent across the curve");
    CurveFlags conf_curve;
    conf_curve.add(confine);
    double c_eta = 0.0, c_tau = 2.0, c_m = 0.0, c_zim = 1.0, threshold = 1e-6;
    int c_n = 256;
    bool allow_nonconfining = false;
    std::vector<std::string> c_probes;
    confine->add_option("--eta", c_eta, "Electrostatic strength of V~");
    confine->add_option("--tau", c_tau, "Lorentz scalar strength of V~");
    confine->add_option("--m", c_m, "Mass");
    confine->add_option("--z-im", c_zim, "Imaginary part of z (z = i z_im)");
    confine->add_option("--n", c_n, "Boundary nodes");
    confine->add_option("--threshold", threshold, "Pass threshold for the leakage");
    confine->add_option("--probe", c_probes, "Probe x,y,width,component (repeatable)");
    confine->add_flag("--allow-nonconfining", allow_nonconfining, "Permit d~ != -4 (control runs)");

    auto* converge = app.add_subcommand("converge", "Run the convergence experiment from a config file");
    std::string config, conv_out;
    bool conv_force = false;
    converge->add_option("--config", config, "Config file (key = value) or a previous manifest.json")->required();
    converge->add_option("--out", conv_out, "Output directory")->required();
    converge->add_flag("--force", conv_force, "Overwrite existing outputs");

    auto* plot = app.add_subcommand("plot", "Render a rates CSV as an SVG log-log plot");
    std::string plot_csv, plot_out;
    bool plot_force = false;
    plot->add_option("--csv", plot_csv, "Rates CSV from converge")->required();
    plot->add_option("--out", plot_out, "SVG path")->required();
    plot->add_flag("--force", plot_force, "Overwrite existing output");

    try {
        app.parse(argc, argv);
        if (threads > 0)
            set_num_threads(threads);
        else
            init_threads_from_env();

        if (*selftest) {
            const int failed = run_selftest(std::cout, SelftestOptions{perturb});
            std::cout << (failed ? "selftest FAILED\n" : "selftest passed\n");
            return failed ? 1 : 0;
        }
        if (*solve) {
            std::vector<std::string> defaults;
            for (const char* o : {"--curve", "--eta", "--tau", "--m", "--z-re", "--z-im", "--n", "--probe"})
                if (solve->count(o) == 0) defaults.push_back(o);
            return cmd_shell_solve(solve_curve, eta, tau, mass, zre, zim, n, probe_specs, out, force, defaults);
        }
        if (*confine)
            return cmd_confine(conf_curve, c_eta, c_tau, c_m, c_zim, c_n, threshold, allow_nonconfining, c_probes);
        if (*converge) return cmd_converge(config, conv_out, conv_force);
        if (*plot) return cmd_plot(plot_csv, plot_out, plot_force);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
