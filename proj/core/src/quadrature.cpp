#include "stablelat/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "stablelat/errors.hpp"

namespace stablelat {
namespace quadrature {

namespace {

struct Panel {
    double a, b;
    bool singular_left, singular_right;
};

std::vector<Panel> split_panels(double a, double b, std::span<const Breakpoint> breaks) {
    const double width = b - a;
    std::vector<Breakpoint> interior;
    for (const auto& bp : breaks)
        if (bp.x > a + 1e-14 * std::abs(width) && bp.x < b - 1e-14 * std::abs(width))
            interior.push_back(bp);
    std::sort(interior.begin(), interior.end(),
              [](const Breakpoint& l, const Breakpoint& r) { return l.x < r.x; });
    // merge near-duplicates, keeping the singular flag if either carries it
    std::vector<Breakpoint> merged;
    for (const auto& bp : interior) {
        if (!merged.empty() && bp.x - merged.back().x < 1e-13 * (1.0 + std::abs(bp.x)))
            merged.back().singular = merged.back().singular || bp.singular;
        else
            merged.push_back(bp);
    }
    // endpoint singularities: a breakpoint sitting on a or b flags that side
    bool sing_a = false, sing_b = false;
    for (const auto& bp : breaks) {
        if (bp.singular && std::abs(bp.x - a) <= 1e-13 * (1.0 + std::abs(a))) sing_a = true;
        if (bp.singular && std::abs(bp.x - b) <= 1e-13 * (1.0 + std::abs(b))) sing_b = true;
    }

    std::vector<Panel> panels;
    double left = a;
    bool left_sing = sing_a;
    for (const auto& bp : merged) {
        panels.push_back({left, bp.x, left_sing, bp.singular});
        left = bp.x;
        left_sing = bp.singular;
    }
    panels.push_back({left, b, left_sing, sing_b});
    return panels;
}

double integrate_panel(const std::function<double(double)>& f, const Panel& p, double tol,
                       double& err_out) {
    if (!(p.b > p.a)) {
        err_out = 0.0;
        return 0.0;
    }
    if (p.singular_left || p.singular_right) {
        // Double-exponential rule reaches arbitrarily close to the endpoints;
        // an integrable power blow-up evaluated there can still overflow, and
        // those evaluations carry negligible weight, so map them to zero.
        auto guarded = [&f](double x) {
            const double v = f(x);
            return std::isfinite(v) ? v : 0.0;
        };
        boost::math::quadrature::tanh_sinh<double> ts;
        double err = 0.0, l1 = 0.0;
        const double v = ts.integrate(guarded, p.a, p.b, tol, &err, &l1);
        err_out = err * (l1 > 0.0 ? l1 : 1.0);  // tanh_sinh reports relative error
        return v;
    }
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, p.a, p.b, 14, tol, &err, &l1);
    err_out = err;
    return v;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const Breakpoint> breakpoints, double abs_tol, double rel_tol) {
    if (!(b > a)) {
        // oriented integral: reversed limits flip the sign; equal (or
        // unordered NaN) limits integrate to zero
        if (b < a) return -integrate(f, b, a, breakpoints, abs_tol, rel_tol);
        return 0.0;
    }
    const auto panels = split_panels(a, b, breakpoints);
    const double panel_tol = std::max(rel_tol, 1e-15);
    double total = 0.0, err_total = 0.0;
    for (const auto& p : panels) {
        double err = 0.0;
        total += integrate_panel(f, p, panel_tol, err);
        err_total += err;
    }
    const double target = abs_tol + rel_tol * std::abs(total);
    if (!std::isfinite(total) || err_total > 1e3 * std::max(target, 1e-300)) {
        std::ostringstream msg;
        msg << "quadrature failed on [" << a << ", " << b << "]: estimate " << total
            << ", error estimate " << err_total << " exceeds target " << target;
        throw numeric_error(msg.str());
    }
    return total;
}

double integrate_box(const std::function<double(double, double)>& f, const Box& box,
                     std::span<const Breakpoint> x_breaks, std::span<const Breakpoint> y_breaks,
                     double abs_tol, double rel_tol) {
    if (box.dim == 1)
        return integrate([&f](double x) { return f(x, 0.0); }, box.lo[0], box.hi[0], x_breaks,
                         abs_tol, rel_tol);
    const double y_lo = box.lo[1], y_hi = box.hi[1];
    const double inner_abs = abs_tol / (10.0 * std::max(1.0, box.hi[0] - box.lo[0]));
    auto outer = [&](double x) {
        return integrate([&f, x](double y) { return f(x, y); }, y_lo, y_hi, y_breaks, inner_abs,
                         rel_tol * 0.1);
    };
    return integrate(outer, box.lo[0], box.hi[0], x_breaks, abs_tol, rel_tol);
}

}  // namespace quadrature
}  // namespace stablelat
