// Univariate polynomial arithmetic and factorization over prime fields F_r.
//
// Two coefficient rings are used: 64-bit moduli for factor-base work and GMP
// moduli for the large character primes. Coefficients are stored ascending
// (index i holds the x^i coefficient) and normalized with no trailing zeros.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rnfs/int.hpp"
#include "rnfs/primes.hpp"
#include "rnfs/rng.hpp"

namespace rnfs {

struct Fp64 {
    using Elem = std::uint64_t;
    std::uint64_t p;

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { Elem s = a + b; return s >= p || s < a ? s - p : s; }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem neg(Elem a) const { return a ? p - a : 0; }
    Elem mul(Elem a, Elem b) const { return mulmod_u64(a, b, p); }
    Elem inv(Elem a) const { return powmod_u64(a, p - 2, p); }
    Elem from_i64(std::int64_t v) const {
        std::int64_t m = v % static_cast<std::int64_t>(p);
        return m < 0 ? static_cast<Elem>(m + static_cast<std::int64_t>(p)) : static_cast<Elem>(m);
    }
    Elem reduce_int(const Int& v) const {
        Int r;
        mpz_mod_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
        return to_u64(r);
    }
    std::uint64_t random_elem(Rng& rng) const { return rng.below(p); }
    Int modulus_int() const { return Int(static_cast<unsigned long>(p)); }
};

struct FpZ {
    using Elem = Int;
    Int p;

    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem add(const Elem& a, const Elem& b) const { Int s = a + b; if (s >= p) s -= p; return s; }
    Elem sub(const Elem& a, const Elem& b) const { Int s = a - b; if (s < 0) s += p; return s; }
    Elem neg(const Elem& a) const { return a == 0 ? Int(0) : Int(p - a); }
    Elem mul(const Elem& a, const Elem& b) const { return mod_reduce(a * b, p); }
    Elem inv(const Elem& a) const {
        auto r = mod_inverse(a, p);
        if (!r) throw std::domain_error("FpZ::inv: not invertible");
        return *r;
    }
    Elem from_i64(std::int64_t v) const { return mod_reduce(Int(static_cast<long>(v)), p); }
    Elem reduce_int(const Int& v) const { return mod_reduce(v, p); }
    Elem random_elem(Rng& rng) const { return rng.range_int(0, p - 1); }
    Int modulus_int() const { return p; }
};

template <class R>
using ModPoly = std::vector<typename R::Elem>;

template <class R>
void poly_trim(const R& ring, ModPoly<R>& f) {
    while (!f.empty() && ring.is_zero(f.back())) f.pop_back();
}

template <class R>
int poly_deg(const ModPoly<R>& f) {
    return static_cast<int>(f.size()) - 1;
}

template <class R>
ModPoly<R> poly_x(const R& ring) {
    return ModPoly<R>{ring.zero(), ring.one()};
}

template <class R>
ModPoly<R> poly_add(const R& ring, const ModPoly<R>& a, const ModPoly<R>& b) {
    ModPoly<R> r(std::max(a.size(), b.size()), ring.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ring.add(r[i], b[i]);
    poly_trim(ring, r);
    return r;
}

template <class R>
ModPoly<R> poly_sub(const R& ring, const ModPoly<R>& a, const ModPoly<R>& b) {
    ModPoly<R> r(std::max(a.size(), b.size()), ring.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = ring.sub(r[i], b[i]);
    poly_trim(ring, r);
    return r;
}

template <class R>
ModPoly<R> poly_mul(const R& ring, const ModPoly<R>& a, const ModPoly<R>& b) {
    if (a.empty() || b.empty()) return {};
    ModPoly<R> r(a.size() + b.size() - 1, ring.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = ring.add(r[i + j], ring.mul(a[i], b[j]));
    poly_trim(ring, r);
    return r;
}

template <class R>
ModPoly<R> poly_scale(const R& ring, const ModPoly<R>& a, const typename R::Elem& s) {
    ModPoly<R> r = a;
    for (auto& c : r) c = ring.mul(c, s);
    poly_trim(ring, r);
    return r;
}

template <class R>
ModPoly<R> poly_monic(const R& ring, const ModPoly<R>& a) {
    if (a.empty()) return a;
    return poly_scale(ring, a, ring.inv(a.back()));
}

// Remainder of a mod b (b nonzero).
template <class R>
ModPoly<R> poly_rem(const R& ring, ModPoly<R> a, const ModPoly<R>& b) {
    if (b.empty()) throw std::domain_error("poly_rem: division by zero polynomial");
    auto invlead = ring.inv(b.back());
    while (a.size() >= b.size()) {
        auto q = ring.mul(a.back(), invlead);
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[off + i] = ring.sub(a[off + i], ring.mul(q, b[i]));
        poly_trim(ring, a);
        if (a.empty()) break;
    }
    return a;
}

template <class R>
ModPoly<R> poly_divexact(const R& ring, ModPoly<R> a, const ModPoly<R>& b) {
    if (b.empty()) throw std::domain_error("poly_divexact: division by zero polynomial");
    ModPoly<R> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, ring.zero());
    auto invlead = ring.inv(b.back());
    while (a.size() >= b.size()) {
        auto c = ring.mul(a.back(), invlead);
        std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[off + i] = ring.sub(a[off + i], ring.mul(c, b[i]));
        poly_trim(ring, a);
        if (a.empty()) break;
    }
    if (!a.empty()) throw std::domain_error("poly_divexact: division not exact");
    poly_trim(ring, q);
    return q;
}

template <class R>
ModPoly<R> poly_gcd(const R& ring, ModPoly<R> a, ModPoly<R> b) {
    poly_trim(ring, a);
    poly_trim(ring, b);
    while (!b.empty()) {
        auto r = poly_rem(ring, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = poly_monic(ring, a);
    return a;
}

template <class R>
ModPoly<R> poly_deriv(const R& ring, const ModPoly<R>& a) {
    ModPoly<R> r;
    for (std::size_t i = 1; i < a.size(); ++i)
        r.push_back(ring.mul(a[i], ring.from_i64(static_cast<std::int64_t>(i))));
    poly_trim(ring, r);
    return r;
}

template <class R>
typename R::Elem poly_eval(const R& ring, const ModPoly<R>& a, const typename R::Elem& x) {
    auto acc = ring.zero();
    for (std::size_t i = a.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), a[i]);
    return acc;
}

template <class R>
ModPoly<R> poly_mulmod(const R& ring, const ModPoly<R>& a, const ModPoly<R>& b,
                       const ModPoly<R>& mod) {
    return poly_rem(ring, poly_mul(ring, a, b), mod);
}

// base^exp mod `mod`, exp an arbitrary-precision nonnegative integer.
template <class R>
ModPoly<R> poly_powmod(const R& ring, ModPoly<R> base, const Int& exp, const ModPoly<R>& mod) {
    ModPoly<R> result{ring.one()};
    base = poly_rem(ring, std::move(base), mod);
    std::size_t bits = exp == 0 ? 0 : mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = poly_mulmod(ring, result, result, mod);
        if (mpz_tstbit(exp.get_mpz_t(), i)) result = poly_mulmod(ring, result, base, mod);
    }
    return result;
}

// Distinct-degree based irreducibility test. Requires the field
// characteristic to exceed deg f is NOT required; standard Rabin test.
template <class R>
bool poly_irreducible(const R& ring, const ModPoly<R>& f) {
    int d = poly_deg(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    Int q = ring.modulus_int();
    ModPoly<R> fm = poly_monic(ring, f);
    ModPoly<R> x = poly_x(ring);
    // x^(q^d) == x (mod f)
    ModPoly<R> t = x;
    Int qd = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    if (poly_powmod(ring, x, qd, fm) != x) return false;
    // gcd(x^(q^(d/l)) - x, f) == 1 for each prime l | d
    std::vector<int> prime_divs;
    int dd = d;
    for (int l = 2; l * l <= dd; ++l)
        if (dd % l == 0) {
            prime_divs.push_back(l);
            while (dd % l == 0) dd /= l;
        }
    if (dd > 1) prime_divs.push_back(dd);
    for (int l : prime_divs) {
        Int e = 1;
        for (int i = 0; i < d / l; ++i) e *= q;
        ModPoly<R> xe = poly_powmod(ring, x, e, fm);
        ModPoly<R> g = poly_gcd(ring, poly_sub(ring, xe, x), fm);
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

// Equal-degree splitting (Cantor-Zassenhaus) of a monic squarefree product
// of degree-k irreducibles over an odd-characteristic field.
template <class R>
void poly_edf(const R& ring, const ModPoly<R>& f, int k, Rng& rng,
              std::vector<ModPoly<R>>& out) {
    int d = poly_deg(f);
    if (d == k) {
        out.push_back(f);
        return;
    }
    Int q = ring.modulus_int();
    Int e = 1;
    for (int i = 0; i < k; ++i) e *= q;
    e = (e - 1) / 2;
    for (;;) {
        ModPoly<R> t(static_cast<std::size_t>(d), ring.zero());
        for (auto& c : t) c = ring.random_elem(rng);
        poly_trim(ring, t);
        if (poly_deg(t) < 1) continue;
        ModPoly<R> g = poly_gcd(ring, t, f);
        if (poly_deg(g) > 0 && poly_deg(g) < d) {
            poly_edf(ring, g, k, rng, out);
            poly_edf(ring, poly_divexact(ring, f, g), k, rng, out);
            return;
        }
        ModPoly<R> h = poly_powmod(ring, t, e, f);
        h = poly_sub(ring, h, ModPoly<R>{ring.one()});
        g = poly_gcd(ring, h, f);
        if (poly_deg(g) > 0 && poly_deg(g) < d) {
            poly_edf(ring, g, k, rng, out);
            poly_edf(ring, poly_divexact(ring, f, g), k, rng, out);
            return;
        }
    }
}

struct PolyFactor {
    int degree;
    int multiplicity;
};

// Full factorization of a nonzero polynomial over an odd prime field whose
// characteristic exceeds deg f (all our moduli do). Returns monic
// irreducible factors with multiplicities.
template <class R>
std::vector<std::pair<ModPoly<R>, int>> poly_factor(const R& ring, ModPoly<R> f, Rng& rng) {
    std::vector<std::pair<ModPoly<R>, int>> out;
    poly_trim(ring, f);
    if (poly_deg(f) < 1) return out;
    f = poly_monic(ring, f);

    // Radical carries every distinct irreducible factor exactly once
    // (characteristic exceeds the degree, so the derivative never vanishes).
    ModPoly<R> der = poly_deriv(ring, f);
    ModPoly<R> rad = der.empty() ? f : poly_divexact(ring, f, poly_gcd(ring, f, der));

    // Distinct-degree then equal-degree factorization of the radical.
    std::vector<ModPoly<R>> irreducibles;
    ModPoly<R> x = poly_x(ring);
    ModPoly<R> h = x;
    ModPoly<R> v = rad;
    Int q = ring.modulus_int();
    for (int k = 1; poly_deg(v) >= 2 * k; ++k) {
        h = poly_powmod(ring, h, q, v);
        ModPoly<R> g = poly_gcd(ring, poly_sub(ring, h, x), v);
        if (poly_deg(g) > 0) {
            poly_edf(ring, g, k, rng, irreducibles);
            v = poly_divexact(ring, v, g);
            if (poly_deg(v) >= 1) h = poly_rem(ring, h, v);
        }
    }
    if (poly_deg(v) >= 1) irreducibles.push_back(poly_monic(ring, v));

    // Multiplicities by exact division.
    for (auto& irr : irreducibles) {
        ModPoly<R> g = f;
        int e = 0;
        while (poly_deg(g) >= poly_deg(irr)) {
            ModPoly<R> r = poly_rem(ring, g, irr);
            if (!r.empty()) break;
            g = poly_divexact(ring, g, irr);
            ++e;
        }
        out.emplace_back(irr, e);
    }
    return out;
}

// Roots of f over F_r. Enumerates directly for small r, otherwise splits
// gcd(x^r - x, f) with Cantor-Zassenhaus.
template <class R>
std::vector<typename R::Elem> poly_roots(const R& ring, const ModPoly<R>& f, Rng& rng) {
    std::vector<typename R::Elem> roots;
    ModPoly<R> g = f;
    poly_trim(ring, g);
    if (poly_deg(g) < 1) return roots;
    Int q = ring.modulus_int();
    if (q <= 4096) {
        std::uint64_t qq = to_u64(q);
        for (std::uint64_t s = 0; s < qq; ++s) {
            auto e = ring.from_i64(static_cast<std::int64_t>(s));
            if (ring.is_zero(poly_eval(ring, g, e))) roots.push_back(e);
        }
        return roots;
    }
    g = poly_monic(ring, g);
    ModPoly<R> x = poly_x(ring);
    ModPoly<R> xq = poly_powmod(ring, x, q, g);
    ModPoly<R> lin = poly_gcd(ring, poly_sub(ring, xq, x), g);
    if (poly_deg(lin) < 1) return roots;
    std::vector<ModPoly<R>> parts;
    poly_edf(ring, lin, 1, rng, parts);
    for (auto& part : parts) roots.push_back(ring.neg(part[0]));
    return roots;
}

}  // namespace rnfs
