#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "riddlesmith/rng.hpp"

using namespace rsm;

// Reference vectors computed with an independent splitmix64/xoshiro256**
// implementation before this module was written.

TEST_CASE("splitmix64 matches the published sequence from state 0") {
    uint64_t state = 0;
    CHECK(splitmix64_next(state) == 0xe220a8397b1dcdafull);
    CHECK(splitmix64_next(state) == 0x6e789e6aa1b965f4ull);
    CHECK(splitmix64_next(state) == 0x06c45d188009454full);
    CHECK(splitmix64_next(state) == 0xf88bb8a8724c81ecull);
    CHECK(splitmix64_next(state) == 0x1b39896a51a8749bull);
}

TEST_CASE("splitmix64 from state 42") {
    uint64_t state = 42;
    CHECK(splitmix64_next(state) == 0xbdd732262feb6e95ull);
    CHECK(splitmix64_next(state) == 0x28efe333b266f103ull);
    CHECK(splitmix64_next(state) == 0x47526757130f9f52ull);
}

TEST_CASE("splitmix64_mix single-step helper") {
    CHECK(splitmix64_mix(7) == 0x63cbe1e459320dd7ull);
}

TEST_CASE("xoshiro256** core from a fixed state") {
    // state (1,2,3,4) via a stream stand-in: drive the documented recurrence
    // through the public stream API is not possible, so cross-check derived
    // streams against the reference instead.
    RngStream a(7, 0);
    CHECK(a.next_u64() == 0xb358faf74ef9765aull);
    CHECK(a.next_u64() == 0x475c3d964f482cd2ull);
    CHECK(a.next_u64() == 0xd6f1d349952c7996ull);
    CHECK(a.next_u64() == 0xfb2938731e807240ull);
}

TEST_CASE("derived stream reference vectors") {
    RngStream b(7, 1);
    CHECK(b.next_u64() == 0x34b6da3cbe4e8cc9ull);
    CHECK(b.next_u64() == 0x3a5ba09a72cfb81cull);

    RngStream zero(0, 0);
    CHECK(zero.next_u64() == 0x99ec5f36cb75f2b4ull);

    RngStream big(12345, 99);
    CHECK(big.next_u64() == 0xeec43c18010ae8e9ull);
    CHECK(big.next_u64() == 0xa4022abe12712fe1ull);
    CHECK(big.next_u64() == 0x36266ad1bf10a659ull);
    CHECK(big.next_u64() == 0x381d593b8a14fb2bull);
}

TEST_CASE("equal (seed, index) pairs give identical streams") {
    RngStream a(7, 0), b(7, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream indices diverge immediately") {
    RngStream a(7, 0), b(7, 1);
    CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("zero seed is a valid stream") {
    RngStream s(0, 0);
    std::set<uint64_t> seen;
    for (int i = 0; i < 64; ++i) seen.insert(s.next_u64());
    CHECK(seen.size() == 64);
}

TEST_CASE("below produces in-range uniform-ish draws") {
    RngStream s(11, 3);
    std::array<int, 10> histogram{};
    for (int i = 0; i < 10000; ++i) {
        const uint64_t v = s.below(10);
        REQUIRE(v < 10);
        ++histogram[static_cast<size_t>(v)];
    }
    for (int count : histogram) {
        CHECK(count > 800);
        CHECK(count < 1200);
    }
}

TEST_CASE("range is inclusive on both ends") {
    RngStream s(5, 5);
    bool saw_lo = false, saw_hi = false;
    for (int i = 0; i < 1000; ++i) {
        const int64_t v = s.range(-2, 2);
        REQUIRE(v >= -2);
        REQUIRE(v <= 2);
        saw_lo |= v == -2;
        saw_hi |= v == 2;
    }
    CHECK(saw_lo);
    CHECK(saw_hi);
}

TEST_CASE("shuffle is a permutation and deterministic per stream") {
    std::vector<int> a{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<int> b = a;
    RngStream s1(9, 0), s2(9, 0);
    s1.shuffle(a);
    s2.shuffle(b);
    CHECK(a == b);
    std::sort(a.begin(), a.end());
    CHECK(a == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("riddle stream indices are stable and collision-free in practice") {
    std::set<uint64_t> seen;
    for (int cat = 0; cat < 7; ++cat)
        for (uint64_t i = 0; i < 1000; ++i) CHECK(seen.insert(riddle_stream_index(cat, i)).second);
}
