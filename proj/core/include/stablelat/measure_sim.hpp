#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stablelat/lattice.hpp"
#include "stablelat/stable.hpp"
#include "stablelat/types.hpp"

namespace stablelat {

/// Replicate-major matrix of simulated values; one row per independent
/// replicate, one column per integrand/time point.
struct SampleBatch {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::string> labels;
    std::vector<double> values;  // row-major

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    std::vector<double> column(std::size_t c) const;
};

/// One tap of a finite lattice filter: weight attached to index offset j in
/// xi_hat(k) = sum_j weight_j * xi(k + j).
struct FilterTap {
    CellIndex offset;
    double weight;
};
using Filter = std::vector<FilterTap>;

/// n independent replicates of sum_k coeff(k) xi(k). The noise field is
/// keyed by (seed, replicate, cell), so values are invariant under thread
/// count, window padding, and entry pruning. Noise alpha must match the
/// coefficients' alpha; the noise is i.i.d. across cells (row-dependent
/// arrays are out of scope).
SampleBatch sample_integral(const CellCoefficients& coeffs, const NoiseModel& noise,
                            std::size_t n, const SeedSpec& seed);

/// Joint sampling of several coefficient families against one shared noise
/// field per replicate; column j is sum_k coeffs[j](k) xi(k).
SampleBatch sample_fdd(std::span<const CellCoefficients> coeffs,
                       std::span<const std::string> labels, const NoiseModel& noise,
                       std::size_t n, const SeedSpec& seed);

/// Coefficient family g with sum_k f(k) xi_hat(k) = sum_l g(l) xi(l):
/// g(l) = sum_j weight_j f(l - j).
CellCoefficients convolve_coefficients(const CellCoefficients& coeffs, const Filter& filter);

/// sum_k coeff(k) xi_hat(k) sampled by rearranging onto the plain field;
/// bit-identical to sample_integral(convolve_coefficients(...), ...).
SampleBatch sample_filtered(const CellCoefficients& coeffs, const Filter& filter,
                            const NoiseModel& noise, std::size_t n, const SeedSpec& seed);

/// The raw field value xi(cell) for a given replicate: exposed so tests can
/// verify rearrangement identities against the exact noise the samplers see.
double noise_field_value(const NoiseModel& noise, const SeedSpec& seed, std::uint64_t replicate,
                         const CellIndex& index);

}  // namespace stablelat
