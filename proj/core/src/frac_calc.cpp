#include "stablelat/frac_calc.hpp"

#include <cmath>
#include <limits>

#include "stablelat/errors.hpp"

namespace stablelat {

namespace {

// int_0^S g(s) s^e ds with e in (-1, 0]. For e < 0 the weight blows up at
// s = 0 right where g's internal argument (x -/+ s) loses resolution: below
// ulp(x) the shift is absorbed and g returns the value AT x instead of the
// one-sided limit, which costs ~ulp^{1+e} of mass when f jumps there. So the
// limit g(0+) is sampled at `head` (just above that resolution), its pole
// mass integrated in closed form, and the quadrature only ever sees the
// bounded difference (g - g(0+)) s^e away from the head. The discarded
// remainder over [0, head] is O(sup|g - g(0+)| * head^{1+e}) -- zero when g
// is locally constant, and far below tolerance for Lipschitz g.
double weighted_integral(const std::function<double(double)>& g,
                         std::vector<quadrature::Breakpoint> breaks, double S, double e,
                         double head, double abs_tol) {
    if (e >= 0.0) {
        auto integrand = [&g, e](double s) { return g(s) * std::pow(s, e); };
        return quadrature::integrate(integrand, 0.0, S, breaks, abs_tol, 1e-10);
    }
    const double ep1 = e + 1.0;
    if (!(S > 2.0 * head)) return g(0.5 * S) * std::pow(S, ep1) / ep1;
    const double v0 = g(head);
    const double pole = v0 * std::pow(S, ep1) / ep1;
    // The far endpoint is typically a support cut of the underlying f, so g
    // jumps exactly there and loses argument resolution the same way: sample
    // the inside limit and give the last slice its exact power-law mass too.
    const double v1 = g(S - head);
    const double tail =
        (v1 - v0) * (std::pow(S, ep1) - std::pow(S - head, ep1)) / ep1;
    auto integrand = [&g, e, v0](double s) { return (g(s) - v0) * std::pow(s, e); };
    // The power weight leaves every panel of this integrand with algebraic
    // steepness toward its left edge (worst when a breakpoint of g sits close
    // to the pole), so run all panels on the clustered-node rule rather than
    // fixed-depth bisection.
    for (auto& bp : breaks) bp.singular = true;
    breaks.push_back({head, true});
    return pole + tail + quadrature::integrate(integrand, head, S - head, breaks, abs_tol, 1e-10);
}

// Offset at which g's argument x -/+ s is safely distinguishable from x yet
// measure-negligible: four decades above ulp(x).
double head_offset(double x) { return 1e-12 * std::max(1.0, std::abs(x)); }

// Breakpoints of s -> f(x -/+ s) on [0, S], from the breakpoints of f.
std::vector<quadrature::Breakpoint> map_breaks(std::span<const quadrature::Breakpoint> f_breaks,
                                               double x, Side side, double S) {
    std::vector<quadrature::Breakpoint> out;
    for (const auto& b : f_breaks) {
        const double s = (side == Side::Plus) ? x - b.x : b.x - x;
        if (s >= 0.0 && s <= S) out.push_back({s, b.singular});
    }
    return out;
}

// [lo, hi] outside of which f is zero or carries less than ~1e-12 of its
// L^1 mass. Exact for compactly supported specs.
std::pair<double, double> essential_bounds(const FunctionSpec& f) {
    if (f.dim() != 1) throw config_error("fractional operators need a 1-d integrand");
    auto [lo, hi] = f.support_bounds(0);
    if (lo && hi) return {*lo, *hi};
    const Box w = f.tail_window(1.0, 1e-12);
    return {lo ? *lo : w.lo[0], hi ? *hi : w.hi[0]};
}

CallableFn wrap_smooth(const FunctionSpec& f, const char* op) {
    if (!f.smooth())
        throw unsupported_input(std::string(op) +
                                " is only available for smooth integrands; "
                                "use the integral form or the convolution instead");
    return make_callable(f);
}

void check_point(double x) {
    if (!std::isfinite(x)) throw config_error("evaluation point must be finite");
}

void check_order(double v, double lo, double hi, bool hi_closed, const char* what) {
    const bool ok = std::isfinite(v) && v > lo && (hi_closed ? v <= hi : v < hi);
    if (!ok) throw config_error(std::string(what) + " out of range");
}

}  // namespace

CallableFn make_callable(const FunctionSpec& f) {
    auto [lo, hi] = essential_bounds(f);
    CallableFn out;
    out.value = [f](double x) { return f.evaluate1(x); };
    out.breaks = f.breakpoints(0);
    out.lo_cut = lo;
    out.hi_cut = hi;
    if (f.smooth()) {
        out.deriv = [f](double x) { return f.derivative(x); };
        out.deriv2 = [f](double x) { return f.second_derivative(x); };
    }
    return out;
}

FracKernel::FracKernel(double beta_, double a_, double b_) : beta(beta_), a(a_), b(b_) {
    check_order(beta, 0.0, 1.0, false, "kernel exponent beta");
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw config_error("kernel weights must be finite and nonnegative");
    if (a == 0.0 && b == 0.0) throw config_error("kernel weights must not both be zero");
}

double kernel_eval(const FracKernel& kernel, double x) {
    check_point(x);
    if (x == 0.0) throw config_error("kernel has a pole at x = 0");
    return x > 0.0 ? kernel.b * std::pow(x, -kernel.beta) : kernel.a * std::pow(-x, -kernel.beta);
}

GridSpec::GridSpec(double origin_, double spacing_, std::size_t count_)
    : origin(origin_), spacing(spacing_), count(count_) {
    if (!std::isfinite(origin)) throw config_error("grid origin must be finite");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw config_error("grid spacing must be positive");
    if (count == 0) throw config_error("grid needs at least one point");
}

double rl_integral(const CallableFn& f, double delta, Side side, double x, double tol) {
    check_order(delta, 0.0, 1.0, true, "integral order delta");
    check_point(x);
    const double S = (side == Side::Plus) ? x - f.lo_cut : f.hi_cut - x;
    if (!(S > 0.0)) return 0.0;
    if (!std::isfinite(S))
        throw numeric_error("fractional integral window is unbounded on the probed side");
    auto g = [&f, x, side](double s) {
        return f.value(side == Side::Plus ? x - s : x + s);
    };
    const double gamma = std::tgamma(delta);
    return weighted_integral(g, map_breaks(f.breaks, x, side, S), S, delta - 1.0, head_offset(x),
                             tol * gamma) /
           gamma;
}

double rl_integral(const FunctionSpec& f, double delta, Side side, double x, double tol) {
    return rl_integral(make_callable(f), delta, side, x, tol);
}

double rl_derivative(const CallableFn& f, double beta, Side side, double x, double tol) {
    check_order(beta, 0.0, 1.0, false, "derivative order beta");
    check_point(x);
    if (!f.deriv)
        throw unsupported_input("fractional derivative needs a differentiable integrand");
    const double S = (side == Side::Plus) ? x - f.lo_cut : f.hi_cut - x;
    if (!(S > 0.0)) return 0.0;
    if (!std::isfinite(S))
        throw numeric_error("fractional derivative window is unbounded on the probed side");
    auto g = [&f, x, side](double s) {
        const double d = f.deriv(side == Side::Plus ? x - s : x + s);
        return side == Side::Plus ? d : -d;
    };
    const double gamma = std::tgamma(1.0 - beta);
    return weighted_integral(g, map_breaks(f.breaks, x, side, S), S, -beta, head_offset(x),
                             tol * gamma) /
           gamma;
}

double rl_derivative(const FunctionSpec& f, double beta, Side side, double x, double tol) {
    return rl_derivative(wrap_smooth(f, "the integrated-derivative form"), beta, side, x, tol);
}

double marchaud_derivative(const CallableFn& f, double beta, double x, double tol) {
    check_order(beta, 0.0, 1.0, false, "derivative order beta");
    check_point(x);
    if (!f.deriv || !f.deriv2)
        throw unsupported_input("the difference form needs two derivatives of the integrand");
    // Head cutoff chosen so the third-order Taylor remainder
    // ~ max|f'''| eps^{3-beta} stays at the tol scale.
    const double eps =
        std::min(1e-2, std::max(1e-6, std::pow(std::max(tol, 1e-12), 1.0 / (3.0 - beta))));
    const double fx = f.value(x);
    // [0, eps]: f(x) - f(x - s) = f'(x) s - f''(x) s^2/2 + O(s^3), integrated
    // against s^{-1-beta} term by term.
    const double head = f.deriv(x) * std::pow(eps, 1.0 - beta) / (1.0 - beta) -
                        0.5 * f.deriv2(x) * std::pow(eps, 2.0 - beta) / (2.0 - beta);
    // [eps, T]: bounded integrand, ordinary panels. Beyond T the shifted term
    // f(x - s) is gone and the remaining weight integrates in closed form.
    const double T = std::max(x - f.lo_cut, 2.0 * eps);
    auto integrand = [&f, fx, x, beta](double s) {
        return (fx - f.value(x - s)) * std::pow(s, -1.0 - beta);
    };
    // s^{-1-beta} still climbs steeply toward the cutoff; cluster nodes at
    // the left endpoint instead of relying on fixed-depth bisection
    auto mid_breaks = map_breaks(f.breaks, x, Side::Plus, T);
    mid_breaks.push_back({eps, true});
    const double mid = quadrature::integrate(integrand, eps, T, mid_breaks, tol, 1e-10);
    const double tail = fx * std::pow(T, -beta) / beta;
    return beta / std::tgamma(1.0 - beta) * (head + mid + tail);
}

double marchaud_derivative(const FunctionSpec& f, double beta, double x, double tol) {
    return marchaud_derivative(wrap_smooth(f, "the difference form"), beta, x, tol);
}

double convolve_point(const CallableFn& f, const FracKernel& kernel, double x, double tol) {
    check_point(x);
    const double weight_sq = (kernel.a + kernel.b) * (kernel.a + kernel.b);
    double v = 0.0;
    if (kernel.b > 0.0) {
        // b-side sees f to the left of x: b int_0^{x-lo} f(x-u) u^{-beta} du.
        const double S = x - f.lo_cut;
        if (S > 0.0) {
            auto g = [&f, x](double u) { return f.value(x - u); };
            v += kernel.b * weighted_integral(g, map_breaks(f.breaks, x, Side::Plus, S), S,
                                              -kernel.beta, head_offset(x),
                                              tol * kernel.b / weight_sq);
        }
    }
    if (kernel.a > 0.0) {
        // a-side sees f to the right: a int_0^{hi-x} f(x+u) u^{-beta} du.
        const double S = f.hi_cut - x;
        if (S > 0.0) {
            auto g = [&f, x](double u) { return f.value(x + u); };
            v += kernel.a * weighted_integral(g, map_breaks(f.breaks, x, Side::Minus, S), S,
                                              -kernel.beta, head_offset(x),
                                              tol * kernel.a / weight_sq);
        }
    }
    return v;
}

double convolve_point(const FunctionSpec& f, const FracKernel& kernel, double x, double tol) {
    return convolve_point(make_callable(f), kernel, x, tol);
}

GridFunction convolve_kernel(const FunctionSpec& f, const FracKernel& kernel,
                             const GridSpec& grid, double tol) {
    const CallableFn cf = make_callable(f);
    GridFunction out{grid, std::vector<double>(grid.count, 0.0)};
    for (std::size_t i = 0; i < grid.count; ++i)
        out.values[i] = convolve_point(cf, kernel, grid.point(i), tol);
    return out;
}

double lfsm_kernel_eval(double t, double x, double H, double alpha, double a, double b) {
    return FunctionSpec::lfsm_kernel(t, H, alpha, a, b).evaluate1(x);
}

}  // namespace stablelat
