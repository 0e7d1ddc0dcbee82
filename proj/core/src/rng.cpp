#include "stablelat/rng.hpp"

namespace stablelat {

namespace philox {

namespace {

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> block(const std::array<std::uint64_t, 4>& counter,
                                   const std::array<std::uint64_t, 2>& key) {
    std::uint64_t c0 = counter[0], c1 = counter[1], c2 = counter[2], c3 = counter[3];
    std::uint64_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(c0, kMul0, hi0, lo0);
        mulhilo(c2, kMul1, hi1, lo1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
}

}  // namespace philox

std::array<std::uint64_t, 4> cell_block(const SeedSpec& seed, std::uint64_t replicate,
                                        const CellIndex& index) {
    return philox::block({zigzag(index.k[0]), replicate, zigzag(index.k[1]), kDomainField},
                         {seed.master_seed, seed.stream_id});
}

CounterRng::CounterRng(const SeedSpec& seed, std::uint64_t substream)
    : key_{seed.master_seed, seed.stream_id},
      counter_{0, substream, 0, kDomainSequence} {}

void CounterRng::refill() {
    buffer_ = philox::block(counter_, key_);
    ++counter_[0];
    pos_ = 0;
}

std::uint64_t CounterRng::next_u64() {
    if (pos_ >= 4) refill();
    return buffer_[pos_++];
}

std::array<std::uint64_t, 2> CounterRng::next_word_pair() {
    if (pos_ >= 3) refill();
    std::array<std::uint64_t, 2> w{buffer_[pos_], buffer_[pos_ + 1]};
    pos_ += 2;
    return w;
}

}  // namespace stablelat
