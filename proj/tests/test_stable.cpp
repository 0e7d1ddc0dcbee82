#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "stablelat/errors.hpp"
#include "stablelat/stable.hpp"

namespace sl = stablelat;

TEST_SUITE_BEGIN("stable");

TEST_CASE("characteristic function") {
    const sl::StableParams p15(1.5, 2.0);
    CHECK(sl::stable_cf(p15, 0.0) == 1.0);
    CHECK(sl::stable_cf(p15, 1.0) == doctest::Approx(std::exp(-std::pow(2.0, 1.5))).epsilon(1e-15));
    CHECK(sl::stable_cf(p15, -1.0) == sl::stable_cf(p15, 1.0));
    // alpha = 2 is the Gaussian with variance 2 sigma^2: CF exp(-sigma^2 t^2)
    const sl::StableParams p2(2.0, 0.7);
    CHECK(sl::stable_cf(p2, 3.0) == doctest::Approx(std::exp(-0.49 * 9.0)).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(sl::StableParams(0.0, 1.0), sl::config_error);
    CHECK_THROWS_AS(sl::StableParams(2.5, 1.0), sl::config_error);
    CHECK_THROWS_AS(sl::StableParams(1.5, -1.0), sl::config_error);
    CHECK_THROWS_AS(sl::NoiseModel::exact_sas(0.0), sl::config_error);
    CHECK_THROWS_AS(sl::NoiseModel::symmetric_pareto(2.0), sl::config_error);
}

// Values of int_0^inf x^{-a} sin x dx, frozen from a high-precision
// evaluation of Gamma(1-a) cos(pi a / 2) (continued through a = 1).
TEST_CASE("tail calibration constant") {
    const struct {
        double alpha, want;
    } table[] = {
        {0.25, 1.1321374102050509}, {0.3, 1.1565757701464761},  {0.5, 1.2533141373155003},
        {0.75, 1.387460844095238},  {0.8, 1.4186487255269969},  {1.0, 1.5707963267948966},
        {1.2, 1.7988338344869935},  {1.25, 1.8757866791075366}, {1.5, 2.5066282746310005},
        {1.8, 5.4576897844863673},  {1.9, 10.440422924596875},
    };
    for (const auto& row : table)
        CHECK(sl::c_alpha(row.alpha) == doctest::Approx(row.want).epsilon(1e-10));
}

TEST_CASE("stable sampling is seed-deterministic") {
    const auto a = sl::sample_sas({1.5, 1.0}, 64, {2026, 9});
    const auto b = sl::sample_sas({1.5, 1.0}, 64, {2026, 9});
    CHECK(a == b);
    const auto c = sl::sample_sas({1.5, 1.0}, 64, {2026, 10});
    CHECK(a != c);
}

TEST_CASE("gaussian edge has variance 2 sigma^2") {
    const std::size_t n = 40000;
    const auto x = sl::sample_sas({2.0, 1.0}, n, {77, 0});
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    CHECK(std::abs(mean) < 0.05);
    CHECK(var == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("cauchy edge has unit semi-interquartile range") {
    // alpha = 1 is exactly the standard Cauchy: P(|X| <= 1) = 1/2.
    const std::size_t n = 40000;
    const auto x = sl::sample_sas({1.0, 1.0}, n, {78, 0});
    std::size_t inside = 0;
    for (double v : x) inside += std::abs(v) <= 1.0;
    CHECK(static_cast<double>(inside) / static_cast<double>(n) ==
          doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("pareto noise matches its declared tail") {
    const double alpha = 1.5;
    const sl::NoiseModel model = sl::NoiseModel::symmetric_pareto(alpha);
    CHECK(model.tail_constant == doctest::Approx(1.0 / sl::c_alpha(alpha)).epsilon(1e-14));

    const std::size_t n = 50000;
    const auto x = sl::sample_noise(model, n, {79, 0});
    const double floor = std::pow(model.tail_constant, 1.0 / alpha);
    double min_mag = 1e300;
    double sum_sign = 0.0;
    for (double v : x) {
        min_mag = std::min(min_mag, std::abs(v));
        sum_sign += v > 0 ? 1.0 : -1.0;
    }
    CHECK(min_mag >= floor * (1.0 - 1e-12));  // support is |xi| >= K^{1/alpha}
    CHECK(std::abs(sum_sign) / static_cast<double>(n) < 0.02);

    const double t = 2.0 * floor;
    std::size_t beyond = 0;
    for (double v : x) beyond += std::abs(v) >= t;
    const double want = model.tail_constant * std::pow(t, -alpha);  // = 2^-1.5
    CHECK(static_cast<double>(beyond) / static_cast<double>(n) ==
          doctest::Approx(want).epsilon(0.05));
}

TEST_CASE("word transform matches the sequential sampler") {
    // NoiseDraw is the single words-to-variate map; sample_noise must be
    // exactly NoiseDraw applied to the sequential word-pair stream.
    const sl::NoiseModel model = sl::NoiseModel::symmetric_pareto(1.2);
    const auto xs = sl::sample_noise(model, 32, {81, 4});
    const sl::NoiseDraw draw(model);
    sl::CounterRng rng({81, 4}, 0);
    for (double x : xs) {
        const auto w = rng.next_word_pair();
        CHECK(x == draw(w[0], w[1]));
    }
}

TEST_SUITE_END();
