#include "stablelat/measure_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "stablelat/errors.hpp"
#include "stablelat/rng.hpp"
#include "stablelat/threads.hpp"

namespace stablelat {

namespace {

void check_noise_match(const CellCoefficients& coeffs, const NoiseModel& noise) {
    if (noise.alpha != coeffs.alpha())
        throw config_error("noise alpha " + std::to_string(noise.alpha) +
                           " does not match coefficient alpha " +
                           std::to_string(coeffs.alpha()));
}

}  // namespace

std::vector<double> SampleBatch::column(std::size_t c) const {
    std::vector<double> out(rows);
    for (std::size_t r = 0; r < rows; ++r) out[r] = values[r * cols + c];
    return out;
}

double noise_field_value(const NoiseModel& noise, const SeedSpec& seed, std::uint64_t replicate,
                         const CellIndex& index) {
    const NoiseDraw draw(noise);
    const auto w = cell_block(seed, replicate, index);
    return draw(w[0], w[1]);
}

SampleBatch sample_integral(const CellCoefficients& coeffs, const NoiseModel& noise,
                            std::size_t n, const SeedSpec& seed) {
    check_noise_match(coeffs, noise);
    SampleBatch batch;
    batch.rows = n;
    batch.cols = 1;
    batch.labels = {"value"};
    batch.values.assign(n, 0.0);
    if (coeffs.empty() || n == 0) return batch;

    const NoiseDraw draw(noise);
    const auto& entries = coeffs.entries();
    const auto limit = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (std::int64_t r = 0; r < limit; ++r) {
        double acc = 0.0;
        for (const auto& e : entries) {
            const auto w = cell_block(seed, static_cast<std::uint64_t>(r), e.index);
            acc += e.value * draw(w[0], w[1]);
        }
        batch.values[static_cast<std::size_t>(r)] = acc;
    }
    return batch;
}

SampleBatch sample_fdd(std::span<const CellCoefficients> coeffs,
                       std::span<const std::string> labels, const NoiseModel& noise,
                       std::size_t n, const SeedSpec& seed) {
    if (coeffs.empty()) throw config_error("sample_fdd: need at least one coefficient family");
    if (!labels.empty() && labels.size() != coeffs.size())
        throw config_error("sample_fdd: label count must match column count");
    for (const auto& c : coeffs) {
        check_noise_match(c, noise);
        if (c.h() != coeffs[0].h() || c.dim() != coeffs[0].dim())
            throw config_error("sample_fdd: all families must share one lattice");
    }

    // shared noise field: union of all supports in canonical order
    const int d = coeffs[0].dim();
    std::vector<CellIndex> cells;
    for (const auto& c : coeffs)
        for (const auto& e : c.entries()) cells.push_back(e.index);
    std::sort(cells.begin(), cells.end(),
              [d](const CellIndex& a, const CellIndex& b) { return canonical_cell_less(a, b, d); });
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    auto position = [&cells, d](const CellIndex& k) {
        const auto it = std::lower_bound(
            cells.begin(), cells.end(), k,
            [d](const CellIndex& a, const CellIndex& b) { return canonical_cell_less(a, b, d); });
        return static_cast<std::size_t>(it - cells.begin());
    };
    std::vector<std::vector<std::pair<std::size_t, double>>> columns(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        columns[j].reserve(coeffs[j].entries().size());
        for (const auto& e : coeffs[j].entries()) columns[j].emplace_back(position(e.index), e.value);
    }

    SampleBatch batch;
    batch.rows = n;
    batch.cols = coeffs.size();
    if (labels.empty()) {
        batch.labels.resize(coeffs.size());
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            batch.labels[j] = "col" + std::to_string(j);
    } else {
        batch.labels.assign(labels.begin(), labels.end());
    }
    batch.values.assign(n * coeffs.size(), 0.0);
    if (n == 0 || cells.empty()) return batch;

    const NoiseDraw draw(noise);
    const auto limit = static_cast<std::int64_t>(n);
#pragma omp parallel num_threads(effective_threads())
    {
        std::vector<double> xi(cells.size());  // one field buffer per worker
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < limit; ++r) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const auto w = cell_block(seed, static_cast<std::uint64_t>(r), cells[i]);
                xi[i] = draw(w[0], w[1]);
            }
            for (std::size_t j = 0; j < columns.size(); ++j) {
                double acc = 0.0;
                for (const auto& [pos, coeff] : columns[j]) acc += coeff * xi[pos];
                batch.values[static_cast<std::size_t>(r) * batch.cols + j] = acc;
            }
        }
    }
    return batch;
}

CellCoefficients convolve_coefficients(const CellCoefficients& coeffs, const Filter& filter) {
    if (filter.empty()) throw config_error("filter must have at least one tap");
    for (const auto& tap : filter)
        if (!std::isfinite(tap.weight)) throw config_error("filter weights must be finite");

    const int d = coeffs.dim();
    auto less = [d](const CellIndex& a, const CellIndex& b) {
        return canonical_cell_less(a, b, d);
    };
    std::map<CellIndex, double, decltype(less)> acc(less);
    for (const auto& tap : filter) {
        if (tap.weight == 0.0) continue;
        for (const auto& e : coeffs.entries()) {
            CellIndex l = e.index;
            l.k[0] += tap.offset.k[0];
            if (d == 2) l.k[1] += tap.offset.k[1];
            acc[l] += tap.weight * e.value;
        }
    }
    std::vector<CellEntry> entries;
    entries.reserve(acc.size());
    for (const auto& [k, v] : acc) entries.push_back({k, v});

    double weight_l1 = 0.0;
    for (const auto& tap : filter) weight_l1 += std::abs(tap.weight);
    const double bound =
        coeffs.tail_mass_bound() * std::pow(weight_l1, coeffs.alpha());

    IndexBox ib;
    ib.dim = d;
    if (!entries.empty()) {
        ib.lo = {entries.front().index.k[0], entries.front().index.k[1]};
        ib.hi = ib.lo;
        for (const auto& e : entries)
            for (int ax = 0; ax < d; ++ax) {
                ib.lo[ax] = std::min(ib.lo[ax], e.index.k[ax]);
                ib.hi[ax] = std::max(ib.hi[ax], e.index.k[ax]);
            }
    }
    return CellCoefficients(coeffs.h(), d, coeffs.alpha(), coeffs.scheme(), ib,
                            std::move(entries), bound);
}

SampleBatch sample_filtered(const CellCoefficients& coeffs, const Filter& filter,
                            const NoiseModel& noise, std::size_t n, const SeedSpec& seed) {
    return sample_integral(convolve_coefficients(coeffs, filter), noise, n, seed);
}

}  // namespace stablelat
