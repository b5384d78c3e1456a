// Smoothness detection and factorization, homogeneous evaluation, and the
// brute-force Psi counters used as oracles by the other modules.
//
// Convention: B-smooth means every prime factor p satisfies p <= B
// (inclusive), and the Psi counters use z <= x.
#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "rnfs/int.hpp"
#include "rnfs/primes.hpp"

namespace rnfs {

struct HomogeneousPoly;

struct Factorization {
    int sign = 1;  // +1 or -1
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;  // (prime, exponent), sorted

    Int value() const {
        Int v = sign;
        for (auto [p, e] : factors)
            for (std::uint32_t i = 0; i < e; ++i) v *= Int(static_cast<unsigned long>(p));
        return v;
    }
};

struct NotSmooth {
    Int residual;  // unfactored part, > bound
};

using SmoothResult = std::variant<Factorization, NotSmooth>;

// Complete factorization of z if all prime factors are <= bound, otherwise
// NotSmooth with the residual. z in {-1, 1} gives an empty factor list with
// the sign; z = 0 is a domain error.
SmoothResult factor_if_smooth(const Int& z, std::uint64_t bound, const PrimeTable& table);

// 64-bit fast path: factors |v| over `primes`; returns true and fills `out`
// when smooth (residual 1), false otherwise with `residual` set.
bool smooth_factor_u64(std::uint64_t v, std::span<const std::uint32_t> primes,
                       std::uint64_t bound,
                       std::vector<std::pair<std::uint64_t, std::uint32_t>>& out,
                       std::uint64_t& residual);

// Pure smoothness test on 64 bits, no factor recording.
bool is_smooth_u64(std::uint64_t v, std::span<const std::uint32_t> primes, std::uint64_t bound);

// Exact sum coeffs[i] * a^i * b^(d-i).
Int eval_homogeneous(const HomogeneousPoly& f, const Int& a, const Int& b);

// Exact counts by enumeration (p <= y, z <= x, z = 1 counted). These are
// test oracles; x above 1e8 is refused.
std::uint64_t psi_count(std::uint64_t x, std::uint64_t y);
// Count restricted to z = s (mod r); coprime=true restricts to gcd(z,r) = 1
// instead (the Psi_r variant, in which case s is ignored).
std::uint64_t psi_count_ap(std::uint64_t x, std::uint64_t y, std::uint64_t r, std::uint64_t s);
std::uint64_t psi_count_coprime(std::uint64_t x, std::uint64_t y, std::uint64_t r);

// Per-residue counts mod r in one enumeration pass: out[a] = Psi(x,y;r,a).
std::vector<std::uint64_t> psi_counts_mod(std::uint64_t x, std::uint64_t y, std::uint64_t r);

}  // namespace rnfs
