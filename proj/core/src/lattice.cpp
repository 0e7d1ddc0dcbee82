#include "stablelat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stablelat/errors.hpp"
#include "stablelat/quadrature.hpp"

namespace stablelat {

namespace {

void check_common(double h, double alpha, double trunc_tol) {
    if (!(h > 0.0) || !std::isfinite(h)) throw config_error("h must be positive and finite");
    if (!(alpha > 0.0) || !(alpha <= 2.0)) throw config_error("alpha must lie in (0, 2]");
    if (!(trunc_tol > 0.0) || !(trunc_tol < 1.0))
        throw config_error("trunc_tol must lie in (0, 1)");
}

IndexBox window_to_cells(const Box& box, double h) {
    IndexBox ib;
    ib.dim = box.dim;
    for (int i = 0; i < box.dim; ++i) {
        // cells h(k+[0,1)) meeting [lo, hi); epsilon guards grid-aligned edges
        ib.lo[i] = static_cast<std::int64_t>(std::floor(box.lo[i] / h + 1e-9));
        ib.hi[i] = static_cast<std::int64_t>(std::ceil(box.hi[i] / h - 1e-9)) - 1;
        if (ib.hi[i] < ib.lo[i]) ib.hi[i] = ib.lo[i] - 1;  // empty axis
    }
    return ib;
}

std::int64_t shell(const CellIndex& k, int dim) {
    std::int64_t s = static_cast<std::int64_t>(std::llabs(k.k[0]));
    if (dim == 2) s = std::max(s, static_cast<std::int64_t>(std::llabs(k.k[1])));
    return s;
}

double alpha_mass(const std::vector<CellEntry>& entries, double alpha) {
    double m = 0.0;
    for (const auto& e : entries) m += std::pow(std::abs(e.value), alpha);
    return m;
}

}  // namespace

bool canonical_cell_less(const CellIndex& a, const CellIndex& b, int dim) {
    const std::int64_t sa = shell(a, dim), sb = shell(b, dim);
    if (sa != sb) return sa < sb;
    if (a.k[0] != b.k[0]) return a.k[0] < b.k[0];
    return a.k[1] < b.k[1];
}

CellCoefficients::CellCoefficients(double h, int dim, double alpha, Scheme scheme, IndexBox window,
                                   std::vector<CellEntry> entries, double tail_mass_bound)
    : h_(h),
      dim_(dim),
      alpha_(alpha),
      scheme_(scheme),
      window_(window),
      entries_(std::move(entries)),
      tail_mass_bound_(tail_mass_bound) {
    check_common(h, alpha, 0.5);
    if (dim != 1 && dim != 2) throw config_error("CellCoefficients: dim must be 1 or 2");
    std::erase_if(entries_, [](const CellEntry& e) { return e.value == 0.0; });
    for (const auto& e : entries_)
        if (!std::isfinite(e.value))
            throw numeric_error("CellCoefficients: non-finite entry value");
    std::sort(entries_.begin(), entries_.end(), [this](const CellEntry& a, const CellEntry& b) {
        return canonical_cell_less(a.index, b.index, dim_);
    });
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].index == entries_[i - 1].index)
            throw config_error("CellCoefficients: duplicate cell index");
}

CellCoefficients CellCoefficients::from_entries(double alpha, std::vector<CellEntry> entries,
                                                int dim, double h, Scheme scheme) {
    IndexBox ib;
    ib.dim = dim;
    if (!entries.empty()) {
        ib.lo = {entries.front().index.k[0], entries.front().index.k[1]};
        ib.hi = ib.lo;
        for (const auto& e : entries)
            for (int ax = 0; ax < dim; ++ax) {
                ib.lo[ax] = std::min(ib.lo[ax], e.index.k[ax]);
                ib.hi[ax] = std::max(ib.hi[ax], e.index.k[ax]);
            }
    }
    return CellCoefficients(h, dim, alpha, scheme, ib, std::move(entries), 0.0);
}

Norms norms(const CellCoefficients& coeffs) {
    double mass = 0.0, linf = 0.0;
    for (const auto& e : coeffs.entries()) {
        mass += std::pow(std::abs(e.value), coeffs.alpha());
        linf = std::max(linf, std::abs(e.value));
    }
    return {std::pow(mass, 1.0 / coeffs.alpha()), linf};
}

CellCoefficients discretize(const FunctionSpec& spec, double h, double alpha, double trunc_tol,
                            std::optional<Box> window) {
    check_common(h, alpha, trunc_tol);
    const int d = spec.dim();
    if (spec.is_structurally_zero())
        return CellCoefficients(h, d, alpha, Scheme::CellAverage, IndexBox{d}, {}, 0.0);

    const Box box = window ? *window : spec.tail_window(alpha, trunc_tol);
    const IndexBox ib = window_to_cells(box, h);
    const double scale = std::pow(h, d * (1.0 / alpha - 1.0));

    std::vector<CellEntry> entries;
    entries.reserve(static_cast<std::size_t>(std::max<std::int64_t>(ib.cell_count(), 0)));
    Cell cell;
    cell.h = h;
    cell.dim = d;
    for (std::int64_t k0 = ib.lo[0]; k0 <= ib.hi[0]; ++k0) {
        cell.index.k[0] = k0;
        if (d == 1) {
            const double v = scale * spec.cell_integral(cell);
            if (v != 0.0) entries.push_back({cell.index, v});
            continue;
        }
        for (std::int64_t k1 = ib.lo[1]; k1 <= ib.hi[1]; ++k1) {
            cell.index.k[1] = k1;
            const double v = scale * spec.cell_integral(cell);
            if (v != 0.0) entries.push_back({cell.index, v});
        }
    }
    const double bound = trunc_tol * alpha_mass(entries, alpha);
    return CellCoefficients(h, d, alpha, Scheme::CellAverage, ib, std::move(entries), bound);
}

CellCoefficients discretize_exact(const FunctionSpec& spec, double h, double alpha,
                                  double trunc_tol, std::optional<Box> window) {
    check_common(h, alpha, trunc_tol);
    if (spec.dim() != 1)
        throw config_error("discretize_exact: the exact scheme is one-dimensional");
    if (spec.is_structurally_zero())
        return CellCoefficients(h, 1, alpha, Scheme::ExactSignedPower, IndexBox{1}, {}, 0.0);

    const Box box = window ? *window : spec.tail_window(alpha, trunc_tol);
    const IndexBox ib = window_to_cells(box, h);
    const auto breaks = spec.breakpoints(0);

    // integrand sign(f)|f|^alpha; odd in f, so negating the spec negates
    // every panel sum bit-exactly
    auto signed_pow_f = [&spec, alpha](double x) {
        return signed_power(spec.evaluate1(x), alpha);
    };

    std::vector<CellEntry> entries;
    entries.reserve(static_cast<std::size_t>(std::max<std::int64_t>(ib.cell_count(), 0)));
    for (std::int64_t k = ib.lo[0]; k <= ib.hi[0]; ++k) {
        const double a = h * static_cast<double>(k);
        const double b = h * static_cast<double>(k + 1);
        const double s = quadrature::integrate(signed_pow_f, a, b, breaks, 1e-14, 1e-11);
        const double u = signed_power(s, 1.0 / alpha);
        if (u != 0.0) entries.push_back({CellIndex::of(k), u});
    }
    const double bound = trunc_tol * alpha_mass(entries, alpha);
    return CellCoefficients(h, 1, alpha, Scheme::ExactSignedPower, ib, std::move(entries), bound);
}

double piecewise_error(const FunctionSpec& spec, double h, double alpha,
                       std::optional<Box> window) {
    check_common(h, alpha, 0.5);
    if (spec.is_structurally_zero()) return 0.0;
    const Box box = window ? *window : spec.tail_window(alpha, 1e-8);
    const IndexBox ib = window_to_cells(box, h);
    const int d = spec.dim();
    if (d != 1) throw config_error("piecewise_error implemented for 1-d specs");

    const double inv_h = 1.0 / h;
    auto diff_mass = [&](double x) {
        Cell cell;
        cell.h = h;
        cell.dim = 1;
        cell.index.k[0] = static_cast<std::int64_t>(std::floor(x * inv_h));
        const double avg = spec.cell_integral(cell) * inv_h;
        return std::pow(std::abs(avg - spec.evaluate1(x)), alpha);
    };
    // split at every cell edge as well as the spec's own breakpoints
    std::vector<quadrature::Breakpoint> breaks = spec.breakpoints(0);
    for (std::int64_t k = ib.lo[0]; k <= ib.hi[0] + 1; ++k)
        breaks.push_back({h * static_cast<double>(k), false});
    const double mass =
        quadrature::integrate(diff_mass, box.lo[0], box.hi[0], breaks, 1e-13, 1e-9);
    return std::pow(mass, 1.0 / alpha);
}

}  // namespace stablelat
