#pragma once

#include <array>
#include <cstdint>

#include "stablelat/types.hpp"

namespace stablelat {

/// Philox-style 4x64 counter-based block cipher, 10 rounds.
/// A block is a pure function of (counter, key): no state, no sequencing.
/// Every random quantity in this library is derived from a block whose
/// counter encodes *what* is being drawn (cell index, replicate, position),
/// never *when* it is drawn, which is what makes output independent of
/// thread count and evaluation order.
namespace philox {

inline constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
inline constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
inline constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4>& counter,
                                   const std::array<std::uint64_t, 2>& key);

}  // namespace philox

/// Maps signed lattice coordinates onto the counter's unsigned words.
inline std::uint64_t zigzag(std::int64_t k) {
    return (static_cast<std::uint64_t>(k) << 1) ^ static_cast<std::uint64_t>(k >> 63);
}

/// Counter-domain tags keep cell-keyed field draws and sequential draws
/// from ever colliding under the same SeedSpec.
inline constexpr std::uint64_t kDomainField = 0;
inline constexpr std::uint64_t kDomainSequence = 1;

/// Block addressed by lattice cell: counter = (zigzag k0, replicate, zigzag k1, field tag).
std::array<std::uint64_t, 4> cell_block(const SeedSpec& seed, std::uint64_t replicate,
                                        const CellIndex& index);

/// Converts one 64-bit word to a uniform double on the open interval (0,1).
/// 52 random bits centered in their bucket: the extremes are 2^-53 and
/// 1 - 2^-53, both exactly representable, so neither endpoint can appear.
/// (With 53 bits the top value 2^53 - 0.5 rounds to 2^53 and yields 1.0.)
inline double uniform_oo(std::uint64_t w) {
    return (static_cast<double>(w >> 12) + 0.5) * 0x1.0p-52;
}

/// Buffered sequential uniform stream: counter = (block#, substream, 0, sequence tag).
/// Deterministic given (seed, substream); consecutive draws walk the block counter.
class CounterRng {
  public:
    explicit CounterRng(const SeedSpec& seed, std::uint64_t substream = 0);

    std::uint64_t next_u64();
    /// Uniform on (0,1), both endpoints excluded.
    double next_uniform() { return uniform_oo(next_u64()); }
    /// Two words drawn as one unit; never straddles a block boundary.
    std::array<std::uint64_t, 2> next_word_pair();

  private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 4> buffer_;
    int pos_ = 4;  // buffer exhausted
};

}  // namespace stablelat
