#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stablelat {

/// Identifies an independent random stream. Two SeedSpecs that differ in
/// either field produce statistically independent output; equal SeedSpecs
/// reproduce bit-identical output regardless of thread count.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

inline bool operator==(const SeedSpec& a, const SeedSpec& b) {
    return a.master_seed == b.master_seed && a.stream_id == b.stream_id;
}

/// Axis-aligned box in R^d, d in {1, 2}. Used for integration windows.
struct Box {
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{0.0, 0.0};

    static Box interval(double a, double b) { return Box{1, {a, 0.0}, {b, 0.0}}; }
    static Box rect(double ax, double bx, double ay, double by) {
        return Box{2, {ax, ay}, {bx, by}};
    }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim; ++i) v *= hi[i] - lo[i];
        return v;
    }
};

/// Integer lattice index, d in {1, 2}. Unused coordinates stay 0.
struct CellIndex {
    std::array<std::int64_t, 2> k{0, 0};

    static CellIndex of(std::int64_t k0) { return CellIndex{{k0, 0}}; }
    static CellIndex of(std::int64_t k0, std::int64_t k1) { return CellIndex{{k0, k1}}; }
};

inline bool operator==(const CellIndex& a, const CellIndex& b) { return a.k == b.k; }

/// Half-open lattice cell h*(k + [0,1)^d).
struct Cell {
    CellIndex index;
    double h = 1.0;
    int dim = 1;

    double lo(int axis) const { return h * static_cast<double>(index.k[axis]); }
    double hi(int axis) const { return h * static_cast<double>(index.k[axis] + 1); }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim; ++i) v *= h;
        return v;
    }
};

/// Inclusive index ranges of a lattice window; empty() means no cells.
struct IndexBox {
    int dim = 1;
    std::array<std::int64_t, 2> lo{0, 0};
    std::array<std::int64_t, 2> hi{-1, -1};

    bool empty() const {
        for (int i = 0; i < dim; ++i)
            if (lo[i] > hi[i]) return true;
        return false;
    }
    std::int64_t cell_count() const {
        if (empty()) return 0;
        std::int64_t n = 1;
        for (int i = 0; i < dim; ++i) n *= hi[i] - lo[i] + 1;
        return n;
    }
};

/// sign(x) |x|^p, the signed power used throughout the exact scheme.
double signed_power(double x, double p);

}  // namespace stablelat
