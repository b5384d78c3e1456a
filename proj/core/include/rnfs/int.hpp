// Arbitrary-precision integer alias and small helpers on top of GMP.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rnfs {

using Int = mpz_class;

inline std::string to_dec(const Int& v) { return v.get_str(10); }

inline Int from_dec(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    Int v;
    if (mpz_set_str(v.get_mpz_t(), std::string(s).c_str(), 10) != 0)
        throw std::invalid_argument("bad integer literal: " + std::string(s));
    return v;
}

inline bool fits_u64(const Int& v) { return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64; }
inline bool fits_i64(const Int& v) { return mpz_sizeinbase(v.get_mpz_t(), 2) <= 63; }

inline std::uint64_t to_u64(const Int& v) {
    std::uint64_t lo = mpz_getlimbn(v.get_mpz_t(), 0);
    return mpz_size(v.get_mpz_t()) == 0 ? 0 : lo;
}

inline std::int64_t to_i64(const Int& v) {
    auto mag = static_cast<std::int64_t>(to_u64(v));
    return sgn(v) < 0 ? -mag : mag;
}

inline Int powmod(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int isqrt(const Int& v) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

// Exact square root, or nullopt if v is not a perfect square.
inline std::optional<Int> perfect_sqrt(const Int& v) {
    if (sgn(v) < 0) return std::nullopt;
    Int r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return r;
}

inline std::optional<Int> mod_inverse(const Int& a, const Int& mod) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

// Representative of v mod m in [0, m).
inline Int mod_reduce(const Int& v, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Centred representative of v mod m in (-m/2, m/2].
inline Int mod_centred(const Int& v, const Int& m) {
    Int r = mod_reduce(v, m);
    if (2 * r > m) r -= m;
    return r;
}

}  // namespace rnfs
