#include "rnfs/primes.hpp"

#include <stdexcept>

namespace rnfs {

std::vector<std::uint32_t> prime_sieve(std::uint64_t limit) {
    if (limit > (1ULL << 32)) throw std::domain_error("prime_sieve: limit too large");
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!comp[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!comp[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

bool is_probable_prime(const Int& n) {
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

int legendre_u64(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    std::uint64_t r = powmod_u64(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

int legendre_int(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

}  // namespace rnfs
