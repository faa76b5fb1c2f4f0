#pragma once

#include <iosfwd>

namespace shellwave::cli {

struct SelftestOptions {
    bool perturb_beta = false;  // negative control: beta + 1e-3 diag(1, 0)
};

/// Fast invariant suites (algebra, kernels, geometry); prints one line per suite and returns
/// the number of failing suites.
int run_selftest(std::ostream& os, const SelftestOptions& opt = {});

}  // namespace shellwave::cli
