// Prime sieve and deterministic 64-bit primality testing.
#pragma once

#include <cstdint>
#include <vector>

#include "rnfs/int.hpp"

namespace rnfs {

// Primes up to and including `limit`.
std::vector<std::uint32_t> prime_sieve(std::uint64_t limit);

// Shared read-only prime table; built once per smoothness bound.
struct PrimeTable {
    std::uint64_t bound = 0;
    std::vector<std::uint32_t> primes;

    PrimeTable() = default;
    explicit PrimeTable(std::uint64_t b) : bound(b), primes(prime_sieve(b)) {}
};

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin; the fixed base set is valid for all inputs
// below 3.3e24, in particular for the whole 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Primality for Int: deterministic below 2^64, otherwise Miller-Rabin with
// 40 rounds via GMP.
bool is_probable_prime(const Int& n);

// Legendre symbol (a/p) for odd prime p.
int legendre_u64(std::uint64_t a, std::uint64_t p);
int legendre_int(const Int& a, const Int& p);

}  // namespace rnfs
