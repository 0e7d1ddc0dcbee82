#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stablelat/types.hpp"

namespace stablelat {
namespace quadrature {

/// A point where an integrand loses smoothness. Panels are split here;
/// a singular breakpoint (integrable endpoint blow-up, e.g. |x-b|^{-beta})
/// switches the adjacent panels to a double-exponential rule.
struct Breakpoint {
    double x;
    bool singular = false;
};

/// Adaptive integral of f over [a, b]. Interior breakpoints split the
/// range into smooth panels: Gauss-Kronrod 15 on regular panels,
/// tanh-sinh next to singular endpoints. Throws numeric_error when the
/// error estimate cannot be brought near abs_tol + rel_tol*|I|.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const Breakpoint> breakpoints = {}, double abs_tol = 1e-10,
                 double rel_tol = 1e-10);

/// Iterated 2-d integral over an axis-aligned box with per-axis breakpoints.
double integrate_box(const std::function<double(double, double)>& f, const Box& box,
                     std::span<const Breakpoint> x_breaks = {},
                     std::span<const Breakpoint> y_breaks = {}, double abs_tol = 1e-9,
                     double rel_tol = 1e-9);

}  // namespace quadrature
}  // namespace stablelat
