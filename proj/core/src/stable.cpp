#include "stablelat/stable.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "stablelat/errors.hpp"

namespace stablelat {

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha_closed(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw config_error("alpha must lie in (0, 2], got " + std::to_string(alpha));
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1], symmetric halves.
constexpr double kGlNode[8] = {
    0.0950125098376374402, 0.2816035507792589132, 0.4580167776572273863,
    0.6178762444026437484, 0.7554044083550030339, 0.8656312023878317439,
    0.9445750230732325761, 0.9894009349916499326};
constexpr double kGlWeight[8] = {
    0.1894506104550684963, 0.1826034150449235889, 0.1691565193950025382,
    0.1495959888165767320, 0.1246289712555338720, 0.0951585116824927848,
    0.0622535239386478929, 0.0271524594117540949};

double half_period_integral(double alpha, int k) {
    // int over [k pi, (k+1) pi] of x^{-alpha} sin x, 16-point Gauss-Legendre.
    const double a = k * kPi, b = (k + 1) * kPi;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kGlNode[i];
        const double xl = mid - dx, xr = mid + dx;
        s += kGlWeight[i] *
             (std::pow(xl, -alpha) * std::sin(xl) + std::pow(xr, -alpha) * std::sin(xr));
    }
    return s * half;
}

}  // namespace

StableParams::StableParams(double alpha_, double sigma_) : alpha(alpha_), sigma(sigma_) {
    check_alpha_closed(alpha_);
    if (!(sigma_ >= 0.0) || !std::isfinite(sigma_))
        throw config_error("sigma must be finite and nonnegative, got " + std::to_string(sigma_));
}

double stable_cf(const StableParams& params, double theta) {
    return std::exp(-std::pow(std::abs(params.sigma * theta), params.alpha));
}

double c_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw config_error("c_alpha requires alpha in (0, 2), got " + std::to_string(alpha));

    // Head [0, pi]: substitute the sine series; terms decay factorially.
    //   int_0^pi x^{1-alpha} * (sin x / x) dx
    //     = sum_m (-1)^m pi^{2m+2-alpha} / ((2m+1)! (2m+2-alpha))
    double head = 0.0;
    for (int m = 0; m <= 40; ++m) {
        const double e = 2.0 * m + 2.0 - alpha;
        const double term = std::pow(kPi, e) / (std::tgamma(2.0 * m + 2.0) * e);
        head += (m % 2 == 0) ? term : -term;
        if (term < 1e-18 * std::abs(head)) break;
    }

    // Tail: alternating half-period contributions, accelerated by iterated
    // averaging of the partial sums (the |I_k| decrease monotonically).
    constexpr int kHalfPeriods = 48;
    std::vector<double> partial(kHalfPeriods + 1);
    partial[0] = head;
    for (int k = 1; k <= kHalfPeriods; ++k)
        partial[k] = partial[k - 1] + half_period_integral(alpha, k);
    for (int len = kHalfPeriods; len >= 1; --len)
        for (int i = 0; i < len; ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    return partial[0];
}

NoiseModel NoiseModel::exact_sas(double alpha) {
    check_alpha_closed(alpha);
    return NoiseModel{Kind::ExactSas, alpha, 0.0};
}

NoiseModel NoiseModel::symmetric_pareto(double alpha) {
    return symmetric_pareto(alpha, 1.0 / c_alpha(alpha));
}

NoiseModel NoiseModel::symmetric_pareto(double alpha, double tail_constant) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw config_error("SymmetricPareto requires alpha in (0, 2), got " +
                           std::to_string(alpha));
    if (!(tail_constant > 0.0) || !std::isfinite(tail_constant))
        throw config_error("Pareto tail constant must be positive and finite");
    return NoiseModel{Kind::SymmetricPareto, alpha, tail_constant};
}

double sas_standard(double alpha, double u_angle, double u_exp) {
    const double v = kPi * (u_angle - 0.5);
    const double w = -std::log(u_exp);
    const double t = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
    const double s = std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
    return t * s;
}

NoiseDraw::NoiseDraw(const NoiseModel& model)
    : pareto_(model.kind == NoiseModel::Kind::SymmetricPareto),
      alpha_(model.alpha),
      inv_alpha_(1.0 / model.alpha),
      scale_min_(pareto_ ? std::pow(model.tail_constant, 1.0 / model.alpha) : 0.0) {}

double NoiseDraw::operator()(std::uint64_t w0, std::uint64_t w1) const {
    if (pareto_) {
        // magnitude x_m * U^{-1/alpha} gives P(|xi| >= t) = min(1, K t^{-alpha}) exactly
        const double mag = scale_min_ * std::pow(uniform_oo(w0), -inv_alpha_);
        return (w1 >> 63) ? -mag : mag;
    }
    return sas_standard(alpha_, uniform_oo(w0), uniform_oo(w1));
}

std::vector<double> sample_sas(const StableParams& params, std::size_t n, const SeedSpec& seed) {
    if (!(params.sigma > 0.0))
        throw config_error("sample_sas requires sigma > 0");
    NoiseDraw draw(NoiseModel::exact_sas(params.alpha));
    CounterRng rng(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto w = rng.next_word_pair();
        out[i] = params.sigma * draw(w[0], w[1]);
    }
    return out;
}

std::vector<double> sample_noise(const NoiseModel& model, std::size_t n, const SeedSpec& seed) {
    if (model.kind == NoiseModel::Kind::ExactSas)
        return sample_sas(StableParams(model.alpha, 1.0), n, seed);
    NoiseDraw draw(model);
    CounterRng rng(seed);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto w = rng.next_word_pair();
        out[i] = draw(w[0], w[1]);
    }
    return out;
}

}  // namespace stablelat
