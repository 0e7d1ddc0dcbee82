#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablelat/stable.hpp"

namespace stablelat {
namespace suites {

/// One named scalar check: pass == (value op threshold), op in {"<=", ">="}.
struct SuiteCheck {
    std::string name;
    double value;
    std::string op;
    double threshold;
    bool pass;
};

/// Result of one validation suite. config echoes every resolved parameter
/// (post-override) plus per-step diagnostics, so a report fully identifies
/// its run. Everything in a report is seed-deterministic — no wall times.
struct SuiteReport {
    std::string suite;
    bool pass = true;
    std::vector<SuiteCheck> checks;
    std::map<std::string, std::string> config;
};

/// Optional overrides; unset fields keep the suite's pinned defaults.
/// Smaller n makes the sampled suites cheap for smoke runs, but the
/// thresholds are tuned for the defaults, so reduced runs may legitimately
/// fail checks while still being byte-reproducible.
struct SuiteOptions {
    std::optional<std::size_t> n;
    std::optional<std::uint64_t> seed;
    std::optional<double> alpha;
    std::optional<double> H;
    std::optional<std::string> noise;  // "exact" | "pareto"
};

/// The five suite names accepted by run_suite, in canonical order.
std::vector<std::string> suite_names();

/// Run one validation suite:
///   cf-convergence  — lattice refinement drives the empirical CF to the
///                     stable target, monotonically up to sampling noise
///   exactness       — exact scheme + exact noise reproduces the stable law
///   lfsm-selfsim    — path samples scale by 2^H and have stationary
///                     increments
///   lf-conditions   — triangular-array norm conditions plus the CF limit
///   frac-identities — inversion, semigroup, Marchaud agreement, and the
///                     closed-form convolution, all by quadrature
/// Unknown names throw config_error.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

/// Sorted-key JSON with round-trip doubles; byte-stable for fixed inputs.
std::string to_json(const SuiteReport& report);

/// "exact" -> exact stable noise, "pareto" -> symmetric Pareto with the
/// calibrated tail constant; anything else throws config_error.
NoiseModel make_noise(const std::string& name, double alpha);

}  // namespace suites
}  // namespace stablelat
