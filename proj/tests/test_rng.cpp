#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "stablelat/rng.hpp"

namespace sl = stablelat;

TEST_SUITE_BEGIN("rng");

// Known-answer vectors computed with an independent implementation of the
// same 4x64-10 construction (multipliers/Weyl constants as in rng.hpp).
// Any silent change to the round function breaks every seeded result in
// the library, so these are pinned bit-for-bit.
TEST_CASE("block known answers") {
    using A4 = std::array<std::uint64_t, 4>;
    using A2 = std::array<std::uint64_t, 2>;

    CHECK(sl::philox::block(A4{0, 0, 0, 0}, A2{0, 0}) ==
          A4{0x16554d9eca36314cull, 0xdb20fe9d672d0fdcull, 0xd7e772cee186176bull,
             0x7e68b68aec7ba23bull});
    CHECK(sl::philox::block(A4{0xffffffffffffffffull, 0xffffffffffffffffull,
                               0xffffffffffffffffull, 0xffffffffffffffffull},
                            A2{0xffffffffffffffffull, 0xffffffffffffffffull}) ==
          A4{0x87b092c3013fe90bull, 0x438c3c67be8d0224ull, 0x9cc7d7c69cd777b6ull,
             0xa09caebf594f0ba0ull});
    CHECK(sl::philox::block(A4{0x243f6a8885a308d3ull, 0x13198a2e03707344ull,
                               0xa4093822299f31d0ull, 0x082efa98ec4e6c89ull},
                            A2{0x452821e638d01377ull, 0xbe5466cf34e90c6cull}) ==
          A4{0xa528f45403e61d95ull, 0x38c72dbd566e9788ull, 0xa5a1610e72fd18b5ull,
             0x57bd43b5e52b7fe6ull});
    CHECK(sl::philox::block(A4{1, 2, 3, 4}, A2{42, 7}) ==
          A4{0x50988134c0ca9272ull, 0xe3779e6513b83290ull, 0xe9cba072d3a876aaull,
             0xf07bb1a7425522bfull});
}

TEST_CASE("zigzag is injective and order-friendly near zero") {
    CHECK(sl::zigzag(0) == 0);
    CHECK(sl::zigzag(-1) == 1);
    CHECK(sl::zigzag(1) == 2);
    CHECK(sl::zigzag(-2) == 3);
    CHECK(sl::zigzag(2) == 4);
    std::set<std::uint64_t> seen;
    for (std::int64_t k = -100; k <= 100; ++k) seen.insert(sl::zigzag(k));
    CHECK(seen.size() == 201);
}

TEST_CASE("uniform_oo maps into the open interval") {
    CHECK(sl::uniform_oo(0) > 0.0);
    CHECK(sl::uniform_oo(0xffffffffffffffffull) < 1.0);
    CHECK(sl::uniform_oo(0x8000000000000000ull) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("cell blocks are keyed by position, not draw order") {
    const sl::SeedSpec seed{123, 5};
    const auto a = sl::cell_block(seed, 0, sl::CellIndex::of(7));
    const auto b = sl::cell_block(seed, 0, sl::CellIndex::of(7));
    CHECK(a == b);  // pure function of (seed, replicate, cell)

    CHECK(sl::cell_block(seed, 0, sl::CellIndex::of(8)) != a);
    CHECK(sl::cell_block(seed, 1, sl::CellIndex::of(7)) != a);
    CHECK(sl::cell_block(sl::SeedSpec{123, 6}, 0, sl::CellIndex::of(7)) != a);
    CHECK(sl::cell_block(sl::SeedSpec{124, 5}, 0, sl::CellIndex::of(7)) != a);
    // The index value is the key: a 1-d cell k IS the 2-d cell (k, 0), so
    // the same field value comes back; only a genuinely different index
    // (nonzero second coordinate) draws fresh noise.
    CHECK(sl::cell_block(seed, 0, sl::CellIndex::of(7, 0)) == a);
    CHECK(sl::cell_block(seed, 0, sl::CellIndex::of(7, 1)) != a);
}

TEST_CASE("sequential stream is reproducible and distinct per substream") {
    sl::CounterRng r1({99, 0}, 0);
    sl::CounterRng r2({99, 0}, 0);
    for (int i = 0; i < 100; ++i) CHECK(r1.next_u64() == r2.next_u64());

    sl::CounterRng r3({99, 0}, 1);
    bool all_equal = true;
    sl::CounterRng r4({99, 0}, 0);
    for (int i = 0; i < 16; ++i) all_equal = all_equal && (r3.next_u64() == r4.next_u64());
    CHECK_FALSE(all_equal);
}

TEST_CASE("word pairs never straddle blocks") {
    // Drawing pairs must give the same words as drawing singles whenever the
    // pair starts at an even offset, and must skip the orphan word when it
    // does not: consuming 1 word then pairs stays aligned with block edges.
    sl::CounterRng singles({7, 3}, 2);
    sl::CounterRng pairs({7, 3}, 2);
    const std::uint64_t w0 = singles.next_u64();
    CHECK(w0 == pairs.next_u64());
    for (int i = 0; i < 50; ++i) {
        const auto p = pairs.next_word_pair();
        // find p in the singles stream: it must appear as two adjacent words
        std::uint64_t a = singles.next_u64();
        std::uint64_t b = singles.next_u64();
        if (a != p[0]) {  // pair skipped the block's orphan third word
            a = b;
            b = singles.next_u64();
        }
        CHECK(a == p[0]);
        CHECK(b == p[1]);
    }
}

TEST_SUITE_END();
