#include "stablelat/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "stablelat/errors.hpp"
#include "stablelat/measure_sim.hpp"

namespace stablelat {

EcfReport empirical_cf(std::span<const double> samples, std::span<const double> thetas,
                       const StableParams& target) {
    if (samples.empty()) throw config_error("empirical CF needs at least one sample");
    if (thetas.empty()) throw config_error("empirical CF needs at least one theta");
    EcfReport report;
    report.n = samples.size();
    report.thetas.assign(thetas.begin(), thetas.end());
    report.ecf_real.resize(thetas.size());
    report.ecf_imag.resize(thetas.size());
    report.target.resize(thetas.size());
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        const double theta = thetas[j];
        double re = 0.0;
        double im = 0.0;
        for (const double x : samples) {
            re += std::cos(theta * x);
            im += std::sin(theta * x);
        }
        report.ecf_real[j] = re * inv_n;
        report.ecf_imag[j] = im * inv_n;
        report.target[j] = stable_cf(target, theta);
        const double d = std::hypot(report.ecf_real[j] - report.target[j], report.ecf_imag[j]);
        report.sup_distance = std::max(report.sup_distance, d);
    }
    return report;
}

std::vector<double> default_theta_grid() {
    std::vector<double> grid;
    grid.reserve(61);
    for (int k = -30; k <= 30; ++k) grid.push_back(static_cast<double>(k) / 10.0);
    return grid;
}

namespace {

// Asymptotic KS tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2), with
// the theta-transformed series below the usual 1.18 crossover where the
// alternating series converges too slowly.
double ks_tail(double lambda) {
    if (lambda < 1e-8) return 1.0;
    if (lambda < 1.18) {
        const double t = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda));
        const double s = t * (1.0 + std::pow(t, 8.0) * (1.0 + std::pow(t, 16.0)));
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
    }
    const double u = std::exp(-2.0 * lambda * lambda);
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 32; ++k) {
        const double term = std::pow(u, static_cast<double>(k) * k);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw config_error("KS test needs two nonempty samples");
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double nx = static_cast<double>(xs.size());
    const double ny = static_cast<double>(ys.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < xs.size() && j < ys.size()) {
        const double v = std::min(xs[i], ys[j]);
        // step both CDFs past every copy of v before measuring the gap, so
        // ties never produce a spurious mid-step distance
        while (i < xs.size() && xs[i] == v) ++i;
        while (j < ys.size() && ys[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    const double lambda = std::sqrt(nx * ny / (nx + ny)) * d;
    return {d, ks_tail(lambda), xs.size(), ys.size()};
}

LfConditionReport lf_conditions(std::span<const CellCoefficients> families, double sigma_target,
                                double gap_tol, double inf_tol) {
    if (families.size() < 3) throw config_error("condition check needs at least three families");
    if (!(sigma_target > 0.0) || !std::isfinite(sigma_target))
        throw config_error("sigma target must be positive");
    for (const auto& f : families)
        if (f.alpha() != families.front().alpha())
            throw config_error("families must share one alpha");

    LfConditionReport report;
    report.sigma_target = sigma_target;
    report.gap_tol = gap_tol;
    report.inf_tol = inf_tol;
    for (const auto& f : families) {
        const Norms nm = norms(f);
        report.l_alpha.push_back(nm.l_alpha);
        report.l_inf.push_back(nm.l_inf);
    }
    report.sigma_hat = report.l_alpha.back();
    const double gap_first = std::abs(report.l_alpha.front() - sigma_target);
    const double gap_last = std::abs(report.sigma_hat - sigma_target);
    report.cond1_pass =
        gap_last <= gap_tol * sigma_target && gap_last <= gap_first + 1e-12 * sigma_target;
    report.cond2_pass =
        report.l_inf.back() <= inf_tol && report.l_inf.back() <= report.l_inf.front() + 1e-12;
    return report;
}

LalphaDiagnostic lalpha_membership(const PowerDecay& tail, double alpha,
                                   std::size_t partial_terms) {
    if (!(tail.rho > 0.0) || !std::isfinite(tail.rho))
        throw config_error("decay exponent must be positive");
    if (!(alpha > 0.0 && alpha <= 2.0)) throw config_error("alpha must lie in (0, 2]");
    LalphaDiagnostic diag;
    const double exponent = tail.rho * alpha;
    diag.boundary = std::abs(exponent - 1.0) <= 1e-12;
    diag.in_l_alpha = !diag.boundary && exponent > 1.0;  // divergent p-series at the boundary
    double mass = 0.0;
    for (std::size_t k = 1; k <= partial_terms; ++k) {
        mass += std::pow(static_cast<double>(k), -exponent);
        diag.partial_norms.push_back(std::pow(mass, 1.0 / alpha));
    }
    return diag;
}

LalphaDiagnostic lalpha_membership(std::span<const double> u, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw config_error("alpha must lie in (0, 2]");
    LalphaDiagnostic diag;
    diag.in_l_alpha = true;  // finite families are trivially members
    diag.boundary = false;
    double mass = 0.0;
    for (const double v : u) {
        mass += std::pow(std::abs(v), alpha);
        diag.partial_norms.push_back(std::pow(mass, 1.0 / alpha));
    }
    return diag;
}

std::vector<ConvergenceRow> convergence_study(const FunctionSpec& spec, double alpha,
                                              const NoiseModel& noise,
                                              std::span<const double> h_list, std::size_t n,
                                              std::span<const double> thetas, const SeedSpec& seed,
                                              Scheme scheme, double trunc_tol) {
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1])) throw config_error("h list must be decreasing");
    std::vector<ConvergenceRow> rows;
    if (h_list.empty()) return rows;
    // one shared stable target: the L^alpha norm of the integrand itself
    const double sigma = spec.lp_norm(alpha);
    const StableParams target(alpha, sigma);
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const double h = h_list[i];
        const CellCoefficients coeffs = scheme == Scheme::ExactSignedPower
                                            ? discretize_exact(spec, h, alpha, trunc_tol)
                                            : discretize(spec, h, alpha, trunc_tol);
        const SeedSpec row_seed{seed.master_seed, seed.stream_id + i};
        const SampleBatch batch = sample_integral(coeffs, noise, n, row_seed);
        const EcfReport ecf = empirical_cf(batch.column(0), thetas, target);
        const Norms nm = norms(coeffs);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rows.push_back({h, ecf.sup_distance, nm.l_alpha, nm.l_inf, ms});
    }
    return rows;
}

double quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw config_error("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw config_error("quantile level must lie in [0, 1]");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace stablelat
