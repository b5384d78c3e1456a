#include "rnfs/smooth.hpp"

#include <stdexcept>

#include "rnfs/poly.hpp"

namespace rnfs {

bool smooth_factor_u64(std::uint64_t v, std::span<const std::uint32_t> primes,
                       std::uint64_t bound,
                       std::vector<std::pair<std::uint64_t, std::uint32_t>>& out,
                       std::uint64_t& residual) {
    out.clear();
    residual = 1;
    if (v == 0) return false;
    for (std::uint32_t p : primes) {
        if (v == 1) return true;
        std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
        if (pp > v) {
            // residual is prime here
            if (v <= bound) {
                out.emplace_back(v, 1);
                return true;
            }
            residual = v;
            return false;
        }
        if (v % p == 0) {
            std::uint32_t e = 0;
            do {
                v /= p;
                ++e;
            } while (v % p == 0);
            out.emplace_back(p, e);
        }
    }
    if (v == 1) return true;
    residual = v;
    return false;
}

bool is_smooth_u64(std::uint64_t v, std::span<const std::uint32_t> primes, std::uint64_t bound) {
    if (v == 0) return false;
    for (std::uint32_t p : primes) {
        if (v == 1) return true;
        std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
        if (pp > v) return v <= bound;
        while (v % p == 0) v /= p;
    }
    return v == 1;
}

SmoothResult factor_if_smooth(const Int& z, std::uint64_t bound, const PrimeTable& table) {
    if (bound < 2) throw std::domain_error("factor_if_smooth: bound must be >= 2");
    if (table.bound < bound) throw std::invalid_argument("factor_if_smooth: prime table too small");
    if (z == 0) throw std::domain_error("factor_if_smooth: 0 is never smooth");

    Factorization f;
    f.sign = sgn(z) < 0 ? -1 : 1;
    Int v = abs(z);
    if (fits_u64(v)) {
        std::uint64_t residual;
        if (smooth_factor_u64(to_u64(v), table.primes, bound, f.factors, residual))
            return f;
        return NotSmooth{Int(static_cast<unsigned long>(residual))};
    }
    for (std::uint32_t p : table.primes) {
        if (static_cast<std::uint64_t>(p) > bound) break;
        if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            std::uint32_t e = 0;
            do {
                mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(v.get_mpz_t(), p));
            f.factors.emplace_back(p, e);
        }
        if (v == 1) return f;
    }
    if (v == 1) return f;
    return NotSmooth{v};
}

Int eval_homogeneous(const HomogeneousPoly& f, const Int& a, const Int& b) {
    // Horner in a, with matching powers of b.
    Int acc = f.coeffs[static_cast<std::size_t>(f.d)];
    for (int i = f.d - 1; i >= 0; --i) {
        acc *= a;
        Int term = f.coeffs[static_cast<std::size_t>(i)];
        for (int k = i; k < f.d; ++k) term *= b;
        acc += term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Psi counters (enumeration of smooth numbers as prime products).
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kPsiLimit = 100'000'000;

template <typename Fn>
void for_each_smooth(std::uint64_t x, std::uint64_t y, Fn&& fn) {
    if (x < 1) return;
    auto primes = prime_sieve(y);
    struct Frame {
        std::uint64_t value;
        std::size_t max_idx;  // next prime index may be <= max_idx
    };
    std::vector<Frame> stack;
    stack.push_back({1, primes.size()});
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        fn(fr.value);
        for (std::size_t i = 0; i < fr.max_idx; ++i) {
            std::uint64_t p = primes[i];
            if (p > x / fr.value) break;
            stack.push_back({fr.value * p, i + 1});
        }
    }
}

void check_psi_domain(std::uint64_t x, std::uint64_t y) {
    if (x < 1) throw std::domain_error("psi_count: x must be >= 1");
    if (y < 2) throw std::domain_error("psi_count: y must be >= 2");
    if (x > kPsiLimit) throw std::domain_error("psi_count: x above enumeration oracle limit 1e8");
}

}  // namespace

std::uint64_t psi_count(std::uint64_t x, std::uint64_t y) {
    check_psi_domain(x, y);
    std::uint64_t n = 0;
    for_each_smooth(x, y, [&](std::uint64_t) { ++n; });
    return n;
}

std::uint64_t psi_count_ap(std::uint64_t x, std::uint64_t y, std::uint64_t r, std::uint64_t s) {
    check_psi_domain(x, y);
    if (r < 1 || s >= r) throw std::domain_error("psi_count_ap: need 0 <= s < r");
    std::uint64_t n = 0;
    for_each_smooth(x, y, [&](std::uint64_t v) { n += (v % r == s); });
    return n;
}

std::uint64_t psi_count_coprime(std::uint64_t x, std::uint64_t y, std::uint64_t r) {
    check_psi_domain(x, y);
    if (r < 1) throw std::domain_error("psi_count_coprime: r must be >= 1");
    std::uint64_t n = 0;
    for_each_smooth(x, y, [&](std::uint64_t v) { n += (std::gcd(v, r) == 1); });
    return n;
}

std::vector<std::uint64_t> psi_counts_mod(std::uint64_t x, std::uint64_t y, std::uint64_t r) {
    check_psi_domain(x, y);
    if (r < 1) throw std::domain_error("psi_counts_mod: r must be >= 1");
    std::vector<std::uint64_t> counts(r, 0);
    for_each_smooth(x, y, [&](std::uint64_t v) { ++counts[v % r]; });
    return counts;
}

}  // namespace rnfs
