#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stablelat/function_spec.hpp"
#include "stablelat/lattice.hpp"
#include "stablelat/stable.hpp"
#include "stablelat/types.hpp"

namespace stablelat {

/// Empirical characteristic function against a closed-form stable target.
struct EcfReport {
    std::vector<double> thetas;
    std::vector<double> ecf_real;
    std::vector<double> ecf_imag;
    std::vector<double> target;  // exp(-|sigma theta|^alpha), real by symmetry
    double sup_distance = 0.0;   // max_theta |ecf - target| (complex modulus)
    std::size_t n = 0;
};

/// ecf(theta) = (1/n) sum (cos theta x_i, sin theta x_i). Summation is plain
/// and sequential, so sign-symmetric inputs cancel exactly term by term.
EcfReport empirical_cf(std::span<const double> samples, std::span<const double> thetas,
                       const StableParams& target);

/// theta in {-3.0, -2.9, ..., 3.0}: stable characteristic functions separate
/// laws near the origin, and heavy tails rule out moment-based distances.
std::vector<double> default_theta_grid();

struct KsResult {
    double statistic;
    double p_value;  // asymptotic two-sample approximation
    std::size_t n_x;
    std::size_t n_y;
};

/// Two-sample Kolmogorov-Smirnov test; symmetric in its arguments, ties
/// handled by comparing the two empirical CDFs only between distinct values.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

/// Convergence checks for a coefficient family sequence u^{(j)}: the
/// ell^alpha norms must approach sigma_target and the ell^inf norms must
/// drain to zero. These are exactly the two hypotheses of the triangular
/// stable limit theorem the lattice schemes rely on.
struct LfConditionReport {
    std::vector<double> l_alpha;  // per family, in input order
    std::vector<double> l_inf;
    double sigma_target;
    double sigma_hat;      // final ell^alpha norm
    double gap_tol;        // relative tolerance on |l_alpha - sigma_target|
    double inf_tol;        // absolute tolerance on the final ell^inf norm
    bool cond1_pass;       // norm gap shrank and ends within gap_tol
    bool cond2_pass;       // ell^inf shrank and ends within inf_tol
};

LfConditionReport lf_conditions(std::span<const CellCoefficients> families, double sigma_target,
                                double gap_tol = 0.05, double inf_tol = 0.05);

/// ell^alpha membership diagnostics. For a power-decay tail u_k ~ k^{-rho}
/// membership is the p-series criterion rho*alpha > 1; the boundary
/// rho*alpha = 1 diverges and is classified out, with a flag. Finite
/// families are always members.
struct PowerDecay {
    double rho;
};

struct LalphaDiagnostic {
    bool in_l_alpha;
    bool boundary;
    std::vector<double> partial_norms;  // running ell^alpha norms
};

LalphaDiagnostic lalpha_membership(const PowerDecay& tail, double alpha,
                                   std::size_t partial_terms = 64);
LalphaDiagnostic lalpha_membership(std::span<const double> u, double alpha);

/// One refinement row: discretize at h, sample n replicates, compare the
/// empirical CF with the L^alpha-norm stable target.
struct ConvergenceRow {
    double h;
    double sup_cf_distance;
    double l_alpha;
    double l_inf;
    double wall_ms;  // informational; everything else is seed-deterministic
};

/// Refinement study over a decreasing h list (empty list gives an empty
/// table). Each h samples on its own stream (stream_id + row index).
std::vector<ConvergenceRow> convergence_study(const FunctionSpec& spec, double alpha,
                                              const NoiseModel& noise,
                                              std::span<const double> h_list, std::size_t n,
                                              std::span<const double> thetas,
                                              const SeedSpec& seed,
                                              Scheme scheme = Scheme::CellAverage,
                                              double trunc_tol = 1e-6);

/// Type-7 (linear interpolation) sample quantile; p in [0, 1].
double quantile(std::span<const double> sorted, double p);

}  // namespace stablelat
