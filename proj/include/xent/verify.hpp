#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xent/families.hpp"
#include "xent/oracle.hpp"

namespace xent::verify {

/// Default Renyi orders: both sides of 1, including the regimes where the
/// alpha < 1 positivity constraints start failing.
const std::vector<double>& default_alphas();

struct FamilyGrid {
    FamilyTag tag;
    std::vector<std::pair<FamilyDescriptor, FamilyDescriptor>> pairs;
};

/// Fixed parameter grid, at least five descriptor pairs per family. Some
/// (pair, alpha) combinations deliberately violate the positivity
/// constraints so the undefined-measure paths stay exercised.
const std::vector<FamilyGrid>& default_grid();

struct CheckResult {
    std::string group;   // "xent", "gauss", "markov"
    std::string id;
    bool pass = false;
    std::string detail;
};

struct Options {
    std::string only;                  // empty = all groups
    std::uint64_t seed = 20240901;
    std::size_t mc_samples = 1000000;
    double rel_threshold = 1e-6;
};

struct Report {
    std::vector<CheckResult> checks;
    int passed = 0;
    int failed = 0;

    bool all_pass() const { return failed == 0; }
};

/// Runs the oracle-agreement, identity, continuity, and convergence checks.
/// Deterministic for a fixed seed.
Report run(const Options& options);

/// Machine-readable report; byte-identical across runs with equal options.
std::string to_json(const Report& report, const Options& options);

}  // namespace xent::verify
