#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "stablelat/frac_calc.hpp"
#include "stablelat/function_spec.hpp"
#include "stablelat/lattice.hpp"
#include "stablelat/measure_sim.hpp"

namespace stablelat {

/// Moving-average model with memory exponent gamma = H - 1/alpha. The sign
/// of gamma splits two regimes with different fractional representations.
enum class LfsmRegime { LongRange, AntiPersistent };

struct LfsmParams {
    double alpha;  // (1, 2]
    double H;      // (0, 1), H != 1/alpha
    double a;      // side weights, >= 0, not both zero
    double b;

    LfsmParams(double alpha_, double H_, double a_, double b_);
};

struct RegimeInfo {
    double beta;
    LfsmRegime regime;
};

/// Kernel exponent of the fractional representation: beta = 1 + 1/alpha - H
/// in the long-range regime (H > 1/alpha), beta = 1/alpha - H in the
/// anti-persistent one. Always lies in (1/alpha, 1) resp. (0, 1/alpha).
RegimeInfo beta_of(const LfsmParams& params);

/// The time-t moving-average kernel as a function spec.
FunctionSpec lfsm_time_kernel(const LfsmParams& params, double t);

/// Lattice coefficients of the fractionally convolved integrand:
/// g = f * w_{a,b} (long-range) or g = f' * w_{a,b} (anti-persistent; needs
/// a smooth f — indicator drivers should use path sampling instead).
/// Cell integrals are evaluated by adaptive quadrature over pointwise
/// convolution values. Without an explicit window the domain grows until
/// the analytic power-law tail bound drops below trunc_tol/2 of the
/// captured mass, subject to the cell budget; tail_mass_bound reports the
/// analytic remainder either way, so a budget-capped window stays honest.
CellCoefficients discretize_lfsm(const FunctionSpec& spec, const LfsmParams& params, double h,
                                 double trunc_tol, std::optional<Box> window = std::nullopt,
                                 std::size_t max_cells = std::size_t{1} << 17);

/// sample_integral on discretize_lfsm output. With exact-stable noise the
/// sample law is exactly S_alpha(||g_h||_{ell^alpha}).
SampleBatch sample_lfsm_integral(const FunctionSpec& spec, const LfsmParams& params, double h,
                                 const NoiseModel& noise, std::size_t n, const SeedSpec& seed,
                                 double trunc_tol = 1e-3,
                                 std::optional<Box> window = std::nullopt);

struct PathOptions {
    double trunc_tol = 1e-3;
    std::size_t max_cells_per_time = std::size_t{1} << 20;
    std::optional<Box> window;  // common window override for every time point
};

/// Joint samples of the process at the given times (one column per time,
/// strictly increasing, t >= 0; a leading t = 0 gives an identically zero
/// column). Uses the closed-form time-t kernels for both regimes — their
/// cell integrals are exact, and the kernels are admissible even where the
/// convolution route would need smoothness — on one shared noise field.
SampleBatch sample_lfsm_path(const LfsmParams& params, std::span<const double> times, double h,
                             const NoiseModel& noise, std::size_t n, const SeedSpec& seed,
                             const PathOptions& options = {});

/// ||f_1^{a,b}||_{L^alpha(window)}: the scale of the process at t = 1, for
/// callers who want unit-scale normalization. The default window is the
/// kernel's own tail window, which is affordable in the anti-persistent
/// regime; long-range kernels decay slowly, so pass an explicit window (the
/// norm is then the truncated one, matching windowed discretizations).
double lfsm_unit_scale(const LfsmParams& params, std::optional<Box> window = std::nullopt);

}  // namespace stablelat
