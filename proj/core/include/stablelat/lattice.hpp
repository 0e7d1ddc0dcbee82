#pragma once

#include <optional>
#include <vector>

#include "stablelat/function_spec.hpp"
#include "stablelat/types.hpp"

namespace stablelat {

enum class Scheme { CellAverage, ExactSignedPower };

struct CellEntry {
    CellIndex index;
    double value;
};

/// Canonical ordering of lattice cells: sup-norm shells outward from the
/// origin, lexicographic within a shell. Fixes summation order so results
/// are independent of window construction details.
bool canonical_cell_less(const CellIndex& a, const CellIndex& b, int dim);

/// A finitely supported coefficient family on the h-lattice: the scaled cell
/// values f^h(k) (CellAverage) or the exact one-dimensional scheme u_k
/// (ExactSignedPower). Entries are pruned of exact zeros and held in
/// canonical shell order.
class CellCoefficients {
  public:
    CellCoefficients(double h, int dim, double alpha, Scheme scheme, IndexBox window,
                     std::vector<CellEntry> entries, double tail_mass_bound);

    /// Direct construction from explicit entries on the unit lattice (h = 1),
    /// for coefficient families given by formula rather than discretization.
    static CellCoefficients from_entries(double alpha, std::vector<CellEntry> entries,
                                         int dim = 1, double h = 1.0,
                                         Scheme scheme = Scheme::CellAverage);

    double h() const { return h_; }
    int dim() const { return dim_; }
    double alpha() const { return alpha_; }
    Scheme scheme() const { return scheme_; }
    const IndexBox& window() const { return window_; }
    const std::vector<CellEntry>& entries() const { return entries_; }
    double tail_mass_bound() const { return tail_mass_bound_; }
    bool empty() const { return entries_.empty(); }

  private:
    double h_;
    int dim_;
    double alpha_;
    Scheme scheme_;
    IndexBox window_;
    std::vector<CellEntry> entries_;
    double tail_mass_bound_;
};

struct Norms {
    double l_alpha;
    double l_inf;
};

/// ell^alpha and ell^inf norms of the coefficient family, accumulated in
/// canonical order.
Norms norms(const CellCoefficients& coeffs);

/// CellAverage discretization: entry(k) = h^{d(1/alpha - 1)} * int_cell f.
/// The scaling makes the ell^alpha norm of the entries equal the L^alpha
/// norm of the piecewise-constant cell-average approximation exactly.
/// Window defaults to tail_window(alpha, trunc_tol).
CellCoefficients discretize(const FunctionSpec& spec, double h, double alpha,
                            double trunc_tol = 1e-6, std::optional<Box> window = std::nullopt);

/// Exact one-dimensional scheme: u_k = (int_cell f^{<alpha>})^{<1/alpha>},
/// which reproduces the target stable law exactly at every lattice scale.
CellCoefficients discretize_exact(const FunctionSpec& spec, double h, double alpha,
                                  double trunc_tol = 1e-6,
                                  std::optional<Box> window = std::nullopt);

/// ||f_h - f||_{L^alpha(window)} where f_h is the cell-average approximation.
double piecewise_error(const FunctionSpec& spec, double h, double alpha,
                       std::optional<Box> window = std::nullopt);

}  // namespace stablelat
