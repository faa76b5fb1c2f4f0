#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shellwave/dirac.hpp"
#include "shellwave/geometry.hpp"
#include "shellwave/green.hpp"

namespace shellwave {

/// One convergence experiment: a curve, a base coupling V with d < 0, a scaling law and a
/// decreasing list of tube widths. Distances are measured on a Gaussian probe subspace.
struct ExperimentConfig {
    CurveSpec curve = CurveSpec::circle(1.0);
    Coupling coupling{0.0, 2.0};
    real mass = 0.0;
    cplx z{0.0, 1.0};
    std::string profile = "uniform";
    ScalingLaw scaling = ScalingLaw::logarithmic(2.0, 0.4);
    std::vector<real> eps{0.2, 0.1, 0.05, 0.025};
    int probe_count = 16;
    real probe_width = 0.3;
    int n = 128;
    int K = 16;

    /// Throws DomainError on d >= 0, real z, gamma outside (0, 1/2), unsorted or
    /// out-of-bound eps, or bad resolutions.
    void validate() const;
    SpectralParam spectral() const { return SpectralParam(z, mass); }
};

/// sigma_max of the difference of two Galerkin matrices, normalized by the probe Gram matrix.
real measure_distance(const CMat& a, const CMat& b, const CMat& gram);

struct RateRecord {
    real eps = 0.0;
    real f = 0.0;
    real delta1 = 0.0;       // shell(V~) vs shell(V~_eps)
    real delta2 = 0.0;       // shell(V~_eps) vs squeezed
    real delta_total = 0.0;  // shell(V~) vs squeezed
    real env1 = 0.0;         // exp(-f sqrt|d|)
    real env2 = 0.0;         // f^{3/2} eps^gamma
    real ratio1 = 0.0;
    real ratio2 = 0.0;
};

/// Least-squares line y = intercept + slope x with its rms residual.
struct LineFit {
    real slope = 0.0;
    real intercept = 0.0;
    real rms = 0.0;
};
LineFit fit_line(const std::vector<real>& x, const std::vector<real>& y);

struct RateReport {
    std::vector<RateRecord> records;  // sorted by eps descending
    bool degenerate = false;          // fewer than two eps values: no fits
    LineFit delta2_vs_eps;            // log delta2 against log eps
    LineFit delta2_vs_env;            // log delta2 against log env2
    real total_constant = 0.0;        // C with log C = mean log(delta_total / (env1 + env2))
    real total_overshoot = 0.0;       // max delta_total / (C (env1 + env2)) - 1
    real ratio1_band = 0.0;           // max ratio1 / min ratio1
    bool delta1_decreasing = false;
    bool delta2_decreasing = false;
    real triangle_excess = 0.0;       // max(delta_total - delta1 - delta2), <= 0 when consistent
};

/// Per-eps Delta_1 only. Needs no tube grid.
std::vector<RateRecord> run_shell_shell(const ExperimentConfig& cfg);
/// Full per-eps records (Delta_1, Delta_2 and Delta_total).
std::vector<RateRecord> run_shell_squeeze(const ExperimentConfig& cfg);
/// Records plus fits and flags.
RateReport run_theorem(const ExperimentConfig& cfg);
RateReport summarize(std::vector<RateRecord> records);

/// CSV with header eps,f,delta1,delta2,delta_total,env1,env2,ratio1,ratio2 and 17 significant
/// digits, preceded by a "# manifest-sha256: <hash>" comment line.
void write_rate_csv(std::ostream& os, const std::vector<RateRecord>& records, const std::string& manifest_hash);
std::vector<RateRecord> read_rate_csv(std::istream& is);

/// Log-log plot of the three distances and the two envelopes against eps.
void write_rate_svg(std::ostream& os, const std::vector<RateRecord>& records, const std::string& manifest_hash);

}  // namespace shellwave
