#include "stablelat/suites.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <utility>

#include "json.hpp"
#include "stablelat/errors.hpp"
#include "stablelat/frac_calc.hpp"
#include "stablelat/io.hpp"
#include "stablelat/lattice.hpp"
#include "stablelat/lfsm.hpp"
#include "stablelat/measure_sim.hpp"
#include "stablelat/stats.hpp"

namespace stablelat {
namespace suites {

namespace {

void add_check(SuiteReport& rep, std::string name, double value, std::string op,
               double threshold) {
    const bool pass = op == "<=" ? value <= threshold : value >= threshold;
    rep.pass = rep.pass && pass;
    rep.checks.push_back({std::move(name), value, std::move(op), threshold, pass});
}

void put(SuiteReport& rep, const std::string& key, const std::string& value) {
    rep.config[key] = value;
}
void put(SuiteReport& rep, const std::string& key, double value) {
    rep.config[key] = io::format_double(value);
}
template <std::unsigned_integral T>
void put(SuiteReport& rep, const std::string& key, T value) {
    rep.config[key] = std::to_string(value);
}

constexpr std::uint64_t kDefaultSeed = 20260501;

/// Refinement of a smooth bump must push the empirical CF onto the stable
/// target. Monotonicity is enforced up to the Monte Carlo floor 3/sqrt(n):
/// below that level successive sup distances are indistinguishable.
SuiteReport cf_convergence(const SuiteOptions& opt) {
    SuiteReport rep;
    rep.suite = "cf-convergence";
    const double alpha = opt.alpha.value_or(1.2);
    const std::string noise_name = opt.noise.value_or("pareto");
    const std::size_t n = opt.n.value_or(100000);
    const std::uint64_t seed = opt.seed.value_or(kDefaultSeed);
    const double bound = noise_name == "pareto" ? 0.03 : 0.02;
    const NoiseModel noise = make_noise(noise_name, alpha);

    const FunctionSpec spec = FunctionSpec::gauss_bump({0.0}, 1.0);
    const std::vector<double> h_list = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
    const std::vector<double> thetas = default_theta_grid();
    const auto rows =
        convergence_study(spec, alpha, noise, h_list, n, thetas, SeedSpec{seed, 11});

    const double floor = 3.0 / std::sqrt(static_cast<double>(n));
    double worst_increase = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        worst_increase = std::max(worst_increase, rows[i + 1].sup_cf_distance -
                                                      std::max(rows[i].sup_cf_distance, floor));
    put(rep, "alpha", alpha);
    put(rep, "noise", noise_name);
    put(rep, "n", n);
    put(rep, "seed", seed);
    put(rep, "mc_floor", floor);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string tag = "." + std::to_string(i);
        put(rep, "h" + tag, rows[i].h);
        put(rep, "sup_cf" + tag, rows[i].sup_cf_distance);
        put(rep, "l_alpha" + tag, rows[i].l_alpha);
        put(rep, "l_inf" + tag, rows[i].l_inf);
    }
    add_check(rep, "cf_sup_final", rows.back().sup_cf_distance, "<=", bound);
    add_check(rep, "cf_monotone_violation", worst_increase, "<=", 0.0);
    return rep;
}

/// The signed-power scheme with exact stable noise reproduces the target
/// law exactly, not just in the limit: the lattice sum of an indicator is a
/// stable variable with the integrand's full L^alpha norm at any h.
SuiteReport exactness(const SuiteOptions& opt) {
    SuiteReport rep;
    rep.suite = "exactness";
    const double alpha = opt.alpha.value_or(1.5);
    const std::size_t n = opt.n.value_or(200000);
    const std::uint64_t seed = opt.seed.value_or(kDefaultSeed);
    const double h = 0.25;

    const FunctionSpec spec = FunctionSpec::indicator_box({0.0}, {1.0});
    const CellCoefficients coeffs = discretize_exact(spec, h, alpha);
    const double norm_gap = std::abs(norms(coeffs).l_alpha - 1.0);

    const SampleBatch batch =
        sample_integral(coeffs, NoiseModel::exact_sas(alpha), n, SeedSpec{seed, 21});
    const std::vector<double> reference =
        sample_sas(StableParams(alpha, 1.0), n, SeedSpec{seed, 22});
    const KsResult ks = ks_two_sample(batch.column(0), reference);

    put(rep, "alpha", alpha);
    put(rep, "h", h);
    put(rep, "n", n);
    put(rep, "seed", seed);
    put(rep, "cells", coeffs.entries().size());
    put(rep, "ks_statistic", ks.statistic);
    add_check(rep, "exact_norm_gap", norm_gap, "<=", 1e-12);
    add_check(rep, "exact_ks_p", ks.p_value, ">=", 0.01);
    return rep;
}

/// Triangular-array hypotheses checked directly on u^{(j)}_k = j^{-1/alpha}
/// for k <= j: the ell^alpha norm is pinned at 1 while the ell^inf norm
/// drains, and the sampled sum's CF lands on exp(-|theta|^alpha).
SuiteReport lf_conditions_suite(const SuiteOptions& opt) {
    SuiteReport rep;
    rep.suite = "lf-conditions";
    const double alpha = opt.alpha.value_or(1.5);
    const std::size_t n = opt.n.value_or(100000);
    const std::uint64_t seed = opt.seed.value_or(kDefaultSeed);
    const std::vector<std::size_t> js = {100, 1000, 10000};

    std::vector<CellCoefficients> families;
    for (const std::size_t j : js) {
        std::vector<CellEntry> entries;
        entries.reserve(j);
        const double value = std::pow(static_cast<double>(j), -1.0 / alpha);
        for (std::size_t k = 1; k <= j; ++k)
            entries.push_back({CellIndex::of(static_cast<std::int64_t>(k)), value});
        families.push_back(CellCoefficients::from_entries(alpha, std::move(entries)));
    }
    const LfConditionReport cond = lf_conditions(families, 1.0);

    const NoiseModel noise = make_noise(opt.noise.value_or("pareto"), alpha);
    const SampleBatch batch = sample_integral(families.back(), noise, n, SeedSpec{seed, 31});
    const std::vector<double> thetas = default_theta_grid();
    const EcfReport ecf = empirical_cf(batch.column(0), thetas, StableParams(alpha, 1.0));

    put(rep, "alpha", alpha);
    put(rep, "n", n);
    put(rep, "seed", seed);
    for (std::size_t i = 0; i < js.size(); ++i) {
        const std::string tag = "." + std::to_string(i);
        put(rep, "j" + tag, js[i]);
        put(rep, "l_alpha" + tag, cond.l_alpha[i]);
        put(rep, "l_inf" + tag, cond.l_inf[i]);
    }
    add_check(rep, "triangular_cf_sup", ecf.sup_distance, "<=", 0.02);
    add_check(rep, "lf_norm_gap", std::abs(cond.sigma_hat - 1.0), "<=", 0.05);
    add_check(rep, "lf_linf_final", cond.l_inf.back(), "<=", 0.05);
    add_check(rep, "lf_cond1", cond.cond1_pass ? 1.0 : 0.0, ">=", 1.0);
    add_check(rep, "lf_cond2", cond.cond2_pass ? 1.0 : 0.0, ">=", 1.0);
    return rep;
}

/// Self-similarity and stationary increments of the sampled paths:
/// quantiles of X(2) against 2^H quantiles of X(1), and a two-sample KS of
/// X(2) - X(1) against X(1) on disjoint replicate halves. The relative
/// quantile comparison floors its denominator at the scaled half-IQR so the
/// symmetric law's zero median is not divided by sampling noise.
SuiteReport lfsm_selfsim(const SuiteOptions& opt) {
    SuiteReport rep;
    rep.suite = "lfsm-selfsim";
    const double alpha = opt.alpha.value_or(1.5);
    const double H = opt.H.value_or(0.7);
    const std::size_t n = opt.n.value_or(100000);
    const std::uint64_t seed = opt.seed.value_or(kDefaultSeed);
    const double h = 1.0 / 32.0;
    if (n < 8) throw config_error("lfsm-selfsim needs n >= 8");

    const LfsmParams params(alpha, H, 1.0, 0.0);
    const NoiseModel noise = make_noise(opt.noise.value_or("exact"), alpha);
    PathOptions popt;
    popt.trunc_tol = 1e-3;
    popt.max_cells_per_time = 2048;
    const std::vector<double> times = {1.0, 2.0};
    const SampleBatch batch =
        sample_lfsm_path(params, times, h, noise, n, SeedSpec{seed, 41}, popt);

    std::vector<double> x1 = batch.column(0);
    std::vector<double> x2 = batch.column(1);
    std::vector<double> s1 = x1;
    std::vector<double> s2 = x2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());

    const double scale = std::pow(2.0, H);
    const double half_iqr = 0.5 * scale * (quantile(s1, 0.75) - quantile(s1, 0.25));
    double worst_rel = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double p = 0.1 * i;
        const double ref = scale * quantile(s1, p);
        const double got = quantile(s2, p);
        const double rel = std::abs(got - ref) / std::max(std::abs(ref), half_iqr);
        worst_rel = std::max(worst_rel, rel);
        const std::string tag = io::format_double(p);
        put(rep, "q." + tag, got);
        put(rep, "q_ref." + tag, ref);
    }

    const std::size_t half = n / 2;
    std::vector<double> increments(half);
    for (std::size_t r = 0; r < half; ++r) increments[r] = x2[r] - x1[r];
    const std::vector<double> fresh(x1.begin() + static_cast<std::ptrdiff_t>(half), x1.end());
    const KsResult ks = ks_two_sample(increments, fresh);

    put(rep, "alpha", alpha);
    put(rep, "H", H);
    put(rep, "h", h);
    put(rep, "n", n);
    put(rep, "seed", seed);
    put(rep, "scale", scale);
    put(rep, "ks_statistic", ks.statistic);
    add_check(rep, "selfsim_quantile_rel", worst_rel, "<=", 0.05);
    add_check(rep, "increment_ks_p", ks.p_value, ">=", 0.01);
    return rep;
}

/// Quadrature-level identities, no sampling involved: D^b I^b f = f,
/// I^0.3 I^0.4 = I^0.7, Marchaud = integrated-derivative form, and the
/// box-kernel convolution against its closed form.
SuiteReport frac_identities(const SuiteOptions&) {
    SuiteReport rep;
    rep.suite = "frac-identities";
    const FunctionSpec f = FunctionSpec::gauss_bump({0.0}, 1.0);
    const CallableFn fc = make_callable(f);

    CallableFn fprime;
    fprime.value = fc.deriv;
    fprime.deriv = fc.deriv2;
    fprime.breaks = fc.breaks;
    fprime.lo_cut = fc.lo_cut;
    fprime.hi_cut = fc.hi_cut;

    for (const double beta : {0.3, 0.7}) {
        // g = I^beta f inherits f's lower essential cut; its upper tail is
        // heavy (x^{beta-1}), so no finite hi_cut is claimed — only plus-side
        // operators touch g here.
        CallableFn g;
        g.value = [fc, beta](double x) { return rl_integral(fc, beta, Side::Plus, x); };
        g.deriv = [fprime, beta](double x) { return rl_integral(fprime, beta, Side::Plus, x); };
        g.breaks = fc.breaks;
        g.lo_cut = fc.lo_cut;
        g.hi_cut = std::numeric_limits<double>::infinity();

        double num = 0.0;
        double den = 0.0;
        for (int i = 0; i <= 32; ++i) {
            const double x = -3.0 + 0.25 * i;
            const double back = rl_derivative(g, beta, Side::Plus, x, 1e-7);
            const double ref = fc.value(x);
            num += (back - ref) * (back - ref);
            den += ref * ref;
        }
        add_check(rep, "inversion_rel_l2_beta" + io::format_double(beta),
                  std::sqrt(num / den), "<=", 1e-3);
    }

    {
        CallableFn h04;
        h04.value = [fc](double x) { return rl_integral(fc, 0.4, Side::Plus, x); };
        h04.breaks = fc.breaks;
        h04.lo_cut = fc.lo_cut;
        h04.hi_cut = std::numeric_limits<double>::infinity();
        double sup = 0.0;
        for (int i = 0; i <= 8; ++i) {
            const double x = -2.0 + 0.75 * i;
            const double lhs = rl_integral(h04, 0.3, Side::Plus, x, 1e-8);
            const double rhs = rl_integral(fc, 0.7, Side::Plus, x, 1e-9);
            sup = std::max(sup, std::abs(lhs - rhs));
        }
        add_check(rep, "semigroup_sup", sup, "<=", 1e-4);
    }

    for (const double beta : {0.3, 0.7}) {
        double worst = 0.0;
        for (const double x : {-1.0, 0.3, 1.7}) {
            const double difference_form = marchaud_derivative(fc, beta, x, 1e-9);
            const double derivative_form = rl_derivative(fc, beta, Side::Plus, x, 1e-9);
            worst = std::max(worst, std::abs(difference_form - derivative_form));
        }
        add_check(rep, "marchaud_vs_rl_beta" + io::format_double(beta), worst, "<=", 1e-5);
    }

    {
        const FunctionSpec box = FunctionSpec::indicator_box({0.0}, {1.0});
        const GridSpec grid(-1.47, 0.08, 50);  // stays off the box edges
        const struct {
            double beta, a, b;
        } cases[] = {{0.3, 1.0, 0.0}, {0.5, 0.0, 1.0}, {0.7, 1.0, 1.0}};
        const auto ramp = [](double t, double e) { return t > 0.0 ? std::pow(t, e) : 0.0; };
        for (const auto& c : cases) {
            const GridFunction got = convolve_kernel(box, FracKernel(c.beta, c.a, c.b), grid);
            const double e = 1.0 - c.beta;
            double worst = 0.0;
            for (std::size_t i = 0; i < grid.count; ++i) {
                const double x = grid.point(i);
                const double closed = (c.a * (ramp(1.0 - x, e) - ramp(-x, e)) +
                                       c.b * (ramp(x, e) - ramp(x - 1.0, e))) /
                                      e;
                worst = std::max(worst, std::abs(got.values[i] - closed));
            }
            add_check(rep, "conv_closed_form_beta" + io::format_double(c.beta), worst, "<=",
                      1e-6);
        }
    }

    put(rep, "driver", "gauss_bump(0,1)");
    put(rep, "conv_driver", "indicator_box(0,1)");
    put(rep, "grid_points", std::size_t{50});
    return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"cf-convergence", "exactness", "lfsm-selfsim", "lf-conditions", "frac-identities"};
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
    if (name == "cf-convergence") return cf_convergence(options);
    if (name == "exactness") return exactness(options);
    if (name == "lfsm-selfsim") return lfsm_selfsim(options);
    if (name == "lf-conditions") return lf_conditions_suite(options);
    if (name == "frac-identities") return frac_identities(options);
    throw config_error("unknown suite '" + name +
                       "' (expected cf-convergence, exactness, lfsm-selfsim, lf-conditions, or "
                       "frac-identities)");
}

std::string to_json(const SuiteReport& report) {
    nlohmann::json j;
    j["suite"] = report.suite;
    j["pass"] = report.pass;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["value"] = c.value;
        jc["op"] = c.op;
        jc["threshold"] = c.threshold;
        jc["pass"] = c.pass;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    j["config"] = nlohmann::json(report.config);
    return j.dump(2);
}

NoiseModel make_noise(const std::string& name, double alpha) {
    if (name == "exact") return NoiseModel::exact_sas(alpha);
    if (name == "pareto") return NoiseModel::symmetric_pareto(alpha);
    throw config_error("unknown noise model '" + name + "' (expected exact or pareto)");
}

}  // namespace suites
}  // namespace stablelat
