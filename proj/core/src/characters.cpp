#include "rnfs/characters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "rnfs/modpoly.hpp"
#include "rnfs/primes.hpp"

namespace rnfs {

namespace {

// f(x,1) reduced mod r.
template <class R>
ModPoly<R> reduce_poly(const R& ring, const std::vector<Int>& coeffs) {
    ModPoly<R> out;
    out.reserve(coeffs.size());
    for (const auto& ci : coeffs) out.push_back(ring.reduce_int(ci));
    poly_trim(ring, out);
    return out;
}

Int pow_int(const Int& base, int e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// exp(x) as an Int, chunked so large exponents do not overflow double.
Int exp_int(double x) {
    Int r = 1;
    while (x > 500.0) {
        Int chunk;
        mpz_set_d(chunk.get_mpz_t(), std::exp(500.0));
        r *= chunk;
        x -= 500.0;
    }
    Int last;
    mpz_set_d(last.get_mpz_t(), std::exp(x));
    return r * last;
}

}  // namespace

std::optional<std::vector<std::uint64_t>> find_roots_mod_p(const HomogeneousPoly& f,
                                                           std::uint64_t r) {
    if (!is_prime_u64(r)) throw std::domain_error("find_roots_mod_p: r must be prime");
    if (mpz_divisible_ui_p(f.lead().get_mpz_t(), static_cast<unsigned long>(r)))
        return std::nullopt;  // excluded from the factor base
    std::vector<std::uint64_t> roots;
    if (r <= 4096) {
        Fp64 ring{r};
        auto fp = reduce_poly(ring, f.coeffs);
        for (std::uint64_t s = 0; s < r; ++s)
            if (poly_eval(ring, fp, s) == 0) roots.push_back(s);
        return roots;
    }
    Fp64 ring{r};
    auto fp = reduce_poly(ring, f.coeffs);
    Rng rng(0x5eedULL ^ r);
    for (auto s : poly_roots(ring, fp, rng)) roots.push_back(s);
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// Character evaluation.
// ---------------------------------------------------------------------------

namespace {

template <class R>
int legendre_polyfield_impl(const R& ring, ModPoly<R> g, ModPoly<R> p_poly) {
    poly_trim(ring, g);
    poly_trim(ring, p_poly);
    int k = poly_deg(p_poly);
    if (k < 1) throw std::domain_error("legendre_polyfield: modulus must be nonconstant");
    g = poly_rem(ring, std::move(g), p_poly);
    if (g.empty()) return 0;
    Int q = ring.modulus_int();
    Int e = 1;
    for (int i = 0; i < k; ++i) e *= q;
    e = (e - 1) / 2;
    ModPoly<R> res = poly_powmod(ring, g, e, p_poly);
    if (poly_deg(res) != 0) throw std::logic_error("legendre_polyfield: non-constant power");
    Int c = [&] {
        if constexpr (std::is_same_v<R, Fp64>)
            return Int(static_cast<unsigned long>(res[0]));
        else
            return res[0];
    }();
    if (c == 1) return 1;
    if (c == ring.modulus_int() - 1) return -1;
    throw std::logic_error("legendre_polyfield: power is not a square root of unity");
}

}  // namespace

int legendre_polyfield(const std::vector<Int>& g, const std::vector<Int>& p_poly, const Int& r) {
    if (r <= 2) throw std::domain_error("legendre_polyfield: r must be an odd prime");
    if (fits_u64(r) && to_u64(r) < (1ULL << 62)) {
        Fp64 ring{to_u64(r)};
        return legendre_polyfield_impl(ring, reduce_poly(ring, g), reduce_poly(ring, p_poly));
    }
    FpZ ring{r};
    return legendre_polyfield_impl(ring, reduce_poly(ring, g), reduce_poly(ring, p_poly));
}

int char_eval(const CharacterSpec& spec, const Int& a, const Int& b) {
    const Int& r = spec.r;
    const int k = spec.degree();
    Int bm = mod_reduce(b, r);
    if (bm == 0) {
        // constant symbol case: a - bX reduces to the constant a
        Int am = mod_reduce(a, r);
        if (am == 0) return 0;
        int base = legendre_int(am, r);
        return k % 2 == 0 ? base * base : base;
    }
    if (k == 1) {
        // degree-1 shortcut: Legendre(a - b s, r)
        Int val = mod_reduce(a - b * spec.root(), r);
        if (val == 0) return 0;
        return legendre_int(val, r);
    }
    // chain: (-b / r)^k * (-1)^(((r-1)/2)((r^k-1)/2)) * Legendre(s(a b^-1), r)
    auto binv = mod_inverse(bm, r);
    if (!binv) return 0;  // unreachable for prime r, b != 0 mod r
    Int t = mod_reduce(a * *binv, r);
    Int sval = 0;
    for (std::size_t i = spec.p_poly.size(); i-- > 0;) sval = mod_reduce(sval * t + spec.p_poly[i], r);
    if (sval == 0) return 0;
    int sym = legendre_int(sval, r);
    int negb = legendre_int(mod_reduce(-b, r), r);
    if (k % 2 == 1) sym *= negb;  // (-b/r)^k collapses by parity
    // (-1)^(((r-1)/2)((r^k-1)/2)): odd exactly when r = 3 (mod 4) and k odd
    bool e1 = mpz_tstbit(Int((r - 1) / 2).get_mpz_t(), 0);
    bool rk3mod4 = (mod_reduce(r, 4) == 3) && (k % 2 == 1);
    if (e1 && rk3mod4) sym = -sym;
    return sym;
}

// ---------------------------------------------------------------------------
// Ideal sampling.
// ---------------------------------------------------------------------------

namespace {

template <class R>
std::optional<CharacterSpec> pick_factor(const R& ring, const HomogeneousPoly& f, int k,
                                         const Int& r, Rng& rng) {
    auto fp = reduce_poly(ring, f.coeffs);
    if (poly_deg(fp) < 1) return std::nullopt;
    auto factors = poly_factor(ring, fp, rng);
    std::vector<ModPoly<R>> eligible;
    for (auto& [irr, mult] : factors)
        if (mult == 1 && poly_deg(irr) <= k) eligible.push_back(irr);
    std::size_t j = eligible.size();
    if (j == 0) return std::nullopt;
    std::uint64_t idx = rng.below(static_cast<std::uint64_t>(f.d));
    if (idx >= j) return std::nullopt;  // accept with probability j/d
    CharacterSpec spec;
    spec.r = r;
    for (const auto& ci : eligible[idx]) {
        if constexpr (std::is_same_v<R, Fp64>)
            spec.p_poly.push_back(Int(static_cast<unsigned long>(ci)));
        else
            spec.p_poly.push_back(ci);
    }
    return spec;
}

std::optional<CharacterSpec> try_draw(const HomogeneousPoly& f, const Int& delta_f, int k,
                                      const Int& r, Rng& rng) {
    if (r <= 2 || r <= f.d) return std::nullopt;
    if (!is_probable_prime(r)) return std::nullopt;
    if (mpz_divisible_p(f.lead().get_mpz_t(), r.get_mpz_t())) return std::nullopt;
    if (delta_f != 0 && mpz_divisible_p(delta_f.get_mpz_t(), r.get_mpz_t())) return std::nullopt;
    if (fits_u64(r) && to_u64(r) < (1ULL << 62)) {
        Fp64 ring{to_u64(r)};
        return pick_factor(ring, f, k, r, rng);
    }
    FpZ ring{r};
    return pick_factor(ring, f, k, r, rng);
}

}  // namespace

std::optional<CharacterSpec> ideal_sampler_forced(const HomogeneousPoly& f, int k, const Int& r,
                                                  Rng& rng) {
    return try_draw(f, discriminant(f), k, r, rng);
}

std::optional<CharacterSpec> ideal_sampler(const HomogeneousPoly& f, const Int& x_bound,
                                           Rng& rng, std::int64_t iteration_cap) {
    if (x_bound < 4) throw std::domain_error("ideal_sampler: x_bound too small");
    Int delta_f = discriminant(f);
    for (std::int64_t it = 0; it < iteration_cap; ++it) {
        int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(f.d)));
        Int lo, hi;
        mpz_root(lo.get_mpz_t(), x_bound.get_mpz_t(), static_cast<unsigned long>(k + 1));
        mpz_root(hi.get_mpz_t(), x_bound.get_mpz_t(), static_cast<unsigned long>(k));
        if (lo + 1 > hi) continue;
        Int r = rng.range_int(lo + 1, hi);
        auto spec = try_draw(f, delta_f, k, r, rng);
        if (spec) return spec;
    }
    return std::nullopt;
}

std::vector<CharacterSpec> sample_character_list(const HomogeneousPoly& f, const NfsParams& p,
                                                 Rng& rng) {
    Int delta_f = discriminant(f);
    std::vector<CharacterSpec> out;
    std::int64_t attempts = 0;
    const std::int64_t cap = 2'000'000;
    if (p.faithful_characters) {
        double d4 = std::pow(static_cast<double>(p.d), 4.0);
        Int lo = exp_int(d4), hi = 2 * lo;
        while (static_cast<int>(out.size()) < p.char_count && attempts++ < cap) {
            Int r = rng.range_int(lo, hi);
            auto spec = try_draw(f, delta_f, 1, r, rng);
            if (!spec) continue;
            if (std::find(out.begin(), out.end(), *spec) != out.end()) continue;
            out.push_back(std::move(*spec));
        }
        return out;
    }
    Int x_bound = pow_int(Int(static_cast<unsigned long>(p.B_prime)), p.d + 1);
    while (static_cast<int>(out.size()) < p.char_count && attempts++ < cap) {
        auto spec = ideal_sampler(f, x_bound, rng, 10'000);
        if (!spec) continue;
        if (std::find(out.begin(), out.end(), *spec) != out.end()) continue;
        out.push_back(std::move(*spec));
    }
    return out;
}

std::string characters_to_json(const std::vector<CharacterSpec>& specs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : specs) {
        nlohmann::json j;
        j["r"] = to_dec(s.r);
        std::vector<std::string> poly;
        poly.reserve(s.p_poly.size());
        for (const auto& ci : s.p_poly) poly.push_back(to_dec(ci));
        j["poly"] = poly;
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

std::vector<CharacterSpec> characters_from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<CharacterSpec> out;
    for (const auto& j : arr) {
        CharacterSpec s;
        s.r = from_dec(j.at("r").get<std::string>());
        for (const auto& c : j.at("poly")) s.p_poly.push_back(from_dec(c.get<std::string>()));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace rnfs
