#pragma once

#include <functional>
#include <vector>

#include "stablelat/function_spec.hpp"
#include "stablelat/quadrature.hpp"
#include "stablelat/types.hpp"

namespace stablelat {

enum class Side { Plus, Minus };

/// Two-sided power kernel w(x) = a x_-^{-beta} + b x_+^{-beta}, beta in (0,1),
/// a, b >= 0 not both zero. Carries no Gamma normalization.
struct FracKernel {
    double beta;
    double a;
    double b;

    FracKernel(double beta_, double a_, double b_);
};

double kernel_eval(const FracKernel& kernel, double x);

/// Uniform evaluation grid x_i = origin + i*spacing, i = 0..count-1.
struct GridSpec {
    double origin;
    double spacing;
    std::size_t count;

    GridSpec(double origin_, double spacing_, std::size_t count_);
    double point(std::size_t i) const { return origin + static_cast<double>(i) * spacing; }
};

struct GridFunction {
    GridSpec grid;
    std::vector<double> values;
};

/// Function handle for operator composition: pointwise values plus the
/// smoothness metadata the singular quadratures need. hi_cut may be +inf
/// when only left-anchored operators will be applied.
struct CallableFn {
    std::function<double(double)> value;
    std::function<double(double)> deriv;   // needed by derivative operators
    std::function<double(double)> deriv2;  // needed by the difference form
    std::vector<quadrature::Breakpoint> breaks;
    double lo_cut;
    double hi_cut;
};

/// Package a spec as a CallableFn: pointwise values, breakpoints, and the
/// essential support (exact hull when compact, else a 1e-12 L^1 tail box).
/// Derivative slots are filled for smooth specs and left empty otherwise.
CallableFn make_callable(const FunctionSpec& f);

/// Riemann-Liouville fractional integral of order delta in (0, 1]:
///   I^delta_+ f(x) = (1/Gamma(delta)) int_0^inf f(x - s) s^{delta-1} ds,
/// mirrored for the minus side. delta = 1 is the classical running integral.
/// Absolute accuracy ~tol.
double rl_integral(const FunctionSpec& f, double delta, Side side, double x, double tol = 1e-9);
double rl_integral(const CallableFn& f, double delta, Side side, double x, double tol = 1e-9);

/// Riemann-Liouville fractional derivative of order beta in (0, 1) in the
/// integrated-derivative form D^beta_+ f(x) =
/// (1/Gamma(1-beta)) int_0^inf f'(x - s) s^{-beta} ds. Requires a smooth f.
double rl_derivative(const FunctionSpec& f, double beta, Side side, double x, double tol = 1e-9);
double rl_derivative(const CallableFn& f, double beta, Side side, double x, double tol = 1e-9);

/// Marchaud difference form (plus side):
///   (beta/Gamma(1-beta)) int_0^inf (f(x) - f(x-s)) s^{-1-beta} ds,
/// evaluated by a second-order Taylor segment on [0, eps], quadrature on
/// [eps, T], and the analytic tail f(x) T^{-beta}/beta. Kept deliberately
/// independent of the integrated-derivative route.
double marchaud_derivative(const FunctionSpec& f, double beta, double x, double tol = 1e-9);
double marchaud_derivative(const CallableFn& f, double beta, double x, double tol = 1e-9);

/// (f * w)(x): a-side integrates f(x+u) u^{-beta}, b-side f(x-u) u^{-beta},
/// u > 0. Absolute accuracy ~tol. The CallableFn overload reuses cached
/// support metadata, which matters when evaluating at many points.
double convolve_point(const CallableFn& f, const FracKernel& kernel, double x, double tol = 1e-8);
double convolve_point(const FunctionSpec& f, const FracKernel& kernel, double x, double tol = 1e-8);

/// convolve_point on every grid point.
GridFunction convolve_kernel(const FunctionSpec& f, const FracKernel& kernel,
                             const GridSpec& grid, double tol = 1e-8);

/// Scalar moving-average kernel value; same formula as the LfsmKernel leaf.
double lfsm_kernel_eval(double t, double x, double H, double alpha, double a, double b);

}  // namespace stablelat
