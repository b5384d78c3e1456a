// Deterministic, platform-independent random streams.
//
// Everything seed-dependent in the pipeline is keyed off a (seed, tag, index)
// triple, so results never depend on thread scheduling or std library
// implementation details.
#pragma once

#include <cstdint>
#include <string_view>

#include "rnfs/int.hpp"

namespace rnfs {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)) ^ splitmix64(b));
}

inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
  public:
    Rng() : state_(0x853c49e6748fea9bULL) {}
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x2545f4914f6cdd1dULL)) {}

    // Independent substream for (tag, index); used for per-context and
    // per-pair derivation.
    Rng derive(std::string_view tag, std::uint64_t index = 0) const {
        return Rng(mix_key(mix_key(state_, hash_tag(tag)), index));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, bound), bound > 0; unbiased by rejection.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t range_i64(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return next() & 1; }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform Int in [lo, hi] inclusive.
    Int range_int(const Int& lo, const Int& hi) {
        Int span = hi - lo + 1;
        std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
        for (;;) {
            Int r = random_bits(bits);
            if (r < span) return lo + r;
        }
    }

  private:
    Int random_bits(std::size_t bits) {
        Int r = 0;
        std::size_t words = (bits + 63) / 64;
        for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t x = next();
            Int w;
            mpz_import(w.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &x);
            r <<= 64;
            r |= w;
        }
        std::size_t excess = words * 64 - bits;
        if (excess) r >>= excess;
        return r;
    }

    std::uint64_t state_;
};

}  // namespace rnfs
