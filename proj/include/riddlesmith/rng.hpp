#pragma once
#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace rsm {

// splitmix64 step: advances the state by the golden gamma and mixes.
// Used for stream derivation and for hashing small integer tuples.
inline uint64_t splitmix64_next(uint64_t& state) noexcept {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t splitmix64_mix(uint64_t x) noexcept {
    return splitmix64_next(x);
}

// xoshiro256** seeded from (master_seed, stream_index) via a splitmix64 chain.
// Equal inputs reproduce the same sequence; distinct stream indices land the
// chain at unrelated start states, which is what the per-riddle streams need.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(uint64_t master_seed, uint64_t stream_index)
        : master_seed_(master_seed), stream_index_(stream_index) {
        uint64_t chain = master_seed ^ (stream_index * 0xD2B74407B1CE6E93ull);
        for (auto& word : state_) word = splitmix64_next(chain);
    }

    uint64_t master_seed() const noexcept { return master_seed_; }
    uint64_t stream_index() const noexcept { return stream_index_; }

    uint64_t next_u64() noexcept {
        const uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = std::rotl(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, n). Lemire's multiply-then-reject.
    uint64_t below(uint64_t n) noexcept {
        if (n <= 1) return 0;
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<uint64_t>(m);
        if (lo < n) {
            const uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    // Integer in [lo, hi] inclusive.
    int64_t range(int64_t lo, int64_t hi) noexcept {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    double unit() noexcept {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool chance(double p) noexcept { return unit() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) noexcept {
        return items[below(items.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& items) noexcept {
        for (size_t i = items.size(); i > 1; --i) {
            using std::swap;
            swap(items[i - 1], items[below(i)]);
        }
    }

private:
    uint64_t master_seed_;
    uint64_t stream_index_;
    std::array<uint64_t, 4> state_;
};

inline RngStream derive_stream(uint64_t master_seed, uint64_t stream_index) {
    return RngStream(master_seed, stream_index);
}

// Stable stream index for riddle i of category ordinal c. Independent of the
// generation plan's other categories, so partial plans reproduce full-plan output.
inline uint64_t riddle_stream_index(int category_ordinal, uint64_t i) noexcept {
    return splitmix64_mix((static_cast<uint64_t>(category_ordinal + 1) << 40) ^ i);
}

// Reserved stream index for the shared icon library.
inline constexpr uint64_t kIconLibraryStream = 0x49434F4E53ull;

}  // namespace rsm
