#include "rnfs/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rnfs/modpoly.hpp"
#include "rnfs/qpoly.hpp"
#include "rnfs/smooth.hpp"

namespace rnfs {

bool HomogeneousPoly::invariants_hold() const {
    if (d < 1 || coeffs.size() != static_cast<std::size_t>(d) + 1) return false;
    if (eval_homogeneous(*this, m, 1) != n) return false;
    if (!c.empty()) {
        if (c.size() != static_cast<std::size_t>(d)) return false;
        if (lead() != 1 + c[0]) return false;
    }
    return true;
}

Int choose_m(const Int& n, int d, Rng& rng) {
    if (d < 1) throw std::domain_error("choose_m: degree must be >= 1");
    Int hi, lo;
    mpz_root(hi.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(d));
    Int half = n / 2;
    mpz_root(lo.get_mpz_t(), half.get_mpz_t(), static_cast<unsigned long>(d));
    // smallest m with 2 m^d > n
    Int check;
    mpz_pow_ui(check.get_mpz_t(), lo.get_mpz_t(), static_cast<unsigned long>(d));
    if (2 * check <= n) lo += 1;
    mpz_pow_ui(check.get_mpz_t(), lo.get_mpz_t(), static_cast<unsigned long>(d));
    if (2 * check <= n) lo += 1;
    if (lo > hi) throw std::domain_error("choose_m: empty m range (n too small for degree)");
    return rng.range_int(lo, hi);
}

HomogeneousPoly base_m_expansion(const Int& n, const Int& m, int d) {
    if (m < 2) throw std::domain_error("base_m_expansion: m must be >= 2");
    Int md;
    mpz_pow_ui(md.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(d));
    if (!(md <= n && n < 2 * md))
        throw std::domain_error("base_m_expansion: need m^d <= n < 2 m^d");
    HomogeneousPoly f;
    f.d = d;
    f.m = m;
    f.n = n;
    f.coeffs.assign(static_cast<std::size_t>(d) + 1, Int(0));
    Int t = n;
    for (int i = 0; i < d; ++i) {
        f.coeffs[static_cast<std::size_t>(i)] = mod_reduce(t, m);
        t /= m;
    }
    f.coeffs[static_cast<std::size_t>(d)] = t;  // equals 1 by the range condition
    return f;
}

HomogeneousPoly randomize_poly(const HomogeneousPoly& fhat, const Int& H, Rng& rng) {
    for (const auto& ci : fhat.c)
        if (ci != 0) throw std::invalid_argument("randomize_poly: input already randomized");
    HomogeneousPoly f = fhat;
    f.c.assign(static_cast<std::size_t>(f.d), Int(0));
    for (int i = 0; i < f.d; ++i) {
        Int ci = rng.range_int(-H, H - 1);  // centred interval I(2H)
        f.c[static_cast<std::size_t>(i)] = ci;
        // c_i (x - my) x^(d-1-i) y^i
        f.coeffs[static_cast<std::size_t>(f.d - i)] += ci;
        f.coeffs[static_cast<std::size_t>(f.d - 1 - i)] -= ci * f.m;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Resultants and discriminants.
// ---------------------------------------------------------------------------

Int resultant(const std::vector<Int>& a_in, const std::vector<Int>& b_in) {
    std::vector<Int> a = a_in, b = b_in;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (!b.empty() && b.back() == 0) b.pop_back();
    if (a.empty() || b.empty()) return 0;
    int m = static_cast<int>(a.size()) - 1;
    int n = static_cast<int>(b.size()) - 1;
    if (m == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), a[0].get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    if (n == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), b[0].get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    int size = m + n;
    std::vector<std::vector<Int>> M(static_cast<std::size_t>(size),
                                    std::vector<Int>(static_cast<std::size_t>(size), Int(0)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[r][r + k] = a[static_cast<std::size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) M[n + r][r + k] = b[static_cast<std::size_t>(n - k)];

    // Bareiss fraction-free elimination.
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < size - 1; ++k) {
        if (M[k][k] == 0) {
            int swap = -1;
            for (int i = k + 1; i < size; ++i)
                if (M[i][k] != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(M[static_cast<std::size_t>(k)], M[static_cast<std::size_t>(swap)]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                Int num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign * M[static_cast<std::size_t>(size - 1)][static_cast<std::size_t>(size - 1)];
}

Int discriminant(const HomogeneousPoly& f) {
    if (f.d < 2) throw std::domain_error("discriminant: degree must be >= 2");
    if (f.lead() == 0) throw std::domain_error("discriminant: leading coefficient is zero");
    std::vector<Int> u = f.univariate();
    std::vector<Int> du;
    for (std::size_t i = 1; i < u.size(); ++i) du.push_back(u[i] * Int(static_cast<long>(i)));
    Int res = resultant(u, du);
    Int disc;
    mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.lead().get_mpz_t());
    if ((static_cast<long>(f.d) * (f.d - 1) / 2) % 2 == 1) disc = -disc;
    return disc;
}

Int discriminant_of_order(const HomogeneousPoly& f) {
    Int fd_pow;
    mpz_pow_ui(fd_pow.get_mpz_t(), f.lead().get_mpz_t(),
               static_cast<unsigned long>(f.d) * static_cast<unsigned long>(f.d - 1));
    return discriminant(f) * fd_pow;
}

// ---------------------------------------------------------------------------
// Irreducibility over Q: big-prime Zassenhaus.
// ---------------------------------------------------------------------------

namespace {

std::vector<Int> primitive_part(std::vector<Int> v) {
    Int content = 0;
    for (const auto& x : v) content = gcd(content, x);
    if (content > 1)
        for (auto& x : v) x /= content;
    if (!v.empty() && v.back() < 0)
        for (auto& x : v) x = -x;
    return v;
}

// Does g divide f over Q? (both integer polynomials, g nonconstant)
bool divides_exactly(const std::vector<Int>& f, const std::vector<Int>& g) {
    QPoly rem = qpoly_mod(qpoly_from_int(f), qpoly_from_int(g));
    return rem.empty();
}

}  // namespace

IrreducibilityResult is_irreducible(const HomogeneousPoly& f) {
    std::vector<Int> u = f.univariate();
    while (!u.empty() && u.back() == 0) u.pop_back();
    if (u.empty()) throw std::domain_error("is_irreducible: zero polynomial");
    if (static_cast<int>(u.size()) - 1 != f.d || f.lead() == 0)
        throw std::domain_error("is_irreducible: leading coefficient is zero");
    int d = static_cast<int>(u.size()) - 1;
    if (d == 0) throw std::domain_error("is_irreducible: constant polynomial");
    u = primitive_part(std::move(u));
    if (d == 1) return {true, std::nullopt};

    // Repeated factor over Q => reducible with the gcd as witness.
    {
        QPoly qf = qpoly_from_int(u);
        QPoly qd;
        for (std::size_t i = 1; i < u.size(); ++i) qd.push_back(Rat(u[i]) * Rat(static_cast<long>(i)));
        QPoly g = qpoly_gcd(qf, qd);
        if (qpoly_deg(g) >= 1) return {false, primitive_part(qpoly_primitive(g))};
    }

    // Coefficient bound for any proper factor, scaled by the leading
    // coefficient (Landau-Mignotte).
    Int norm2 = 0;
    for (const auto& ci : u) norm2 += ci * ci;
    Int bound = isqrt(norm2) + 1 + abs(u.back());
    Int binom = 1;
    for (int i = 0; i < (d - 1) / 2; ++i) binom = binom * Int(d - 1 - i) / Int(i + 1);
    bound *= binom * abs(u.back());

    // One prime larger than twice the bound: factor candidates lift without
    // Hensel steps.
    Int p = 2 * bound + 3;
    for (;;) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (mpz_divisible_p(u.back().get_mpz_t(), p.get_mpz_t())) continue;
        break;
    }
    FpZ ring{p};
    ModPoly<FpZ> fp;
    for (const auto& ci : u) fp.push_back(ring.reduce_int(ci));
    poly_trim(ring, fp);
    Rng rng(0xced2ull ^ static_cast<std::uint64_t>(d));
    // A prime dividing the discriminant would leave repeated factors; we
    // already know f is squarefree over Q, so just step past such primes.
    for (;;) {
        ModPoly<FpZ> der = poly_deriv(ring, fp);
        if (poly_deg(poly_gcd(ring, fp, der)) == 0) break;
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        while (mpz_divisible_p(u.back().get_mpz_t(), p.get_mpz_t()))
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        ring.p = p;
        fp.clear();
        for (const auto& ci : u) fp.push_back(ring.reduce_int(ci));
        poly_trim(ring, fp);
    }

    auto factors = poly_factor(ring, fp, rng);
    if (factors.size() == 1 && factors[0].second == 1) return {true, std::nullopt};

    // Zassenhaus subset search: any true factor of degree <= d/2 appears as
    // lead * (subset product) reduced to centred representatives.
    std::vector<ModPoly<FpZ>> parts;
    for (auto& [irr, mult] : factors)
        for (int i = 0; i < mult; ++i) parts.push_back(irr);
    std::size_t t = parts.size();
    for (std::uint32_t mask = 1; mask + 1 < (1u << t); ++mask) {
        int degsum = 0;
        for (std::size_t i = 0; i < t; ++i)
            if (mask & (1u << i)) degsum += poly_deg(parts[i]);
        if (degsum < 1 || degsum > d / 2) continue;
        ModPoly<FpZ> prod{ring.reduce_int(u.back())};
        for (std::size_t i = 0; i < t; ++i)
            if (mask & (1u << i)) prod = poly_mul(ring, prod, parts[i]);
        std::vector<Int> cand;
        cand.reserve(prod.size());
        for (const auto& ci : prod) cand.push_back(mod_centred(ci, p));
        cand = primitive_part(std::move(cand));
        if (static_cast<int>(cand.size()) - 1 < 1) continue;
        if (divides_exactly(u, cand)) return {false, cand};
    }
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// JSON round trip.
// ---------------------------------------------------------------------------

std::string poly_to_json(const HomogeneousPoly& f) {
    nlohmann::json j;
    j["d"] = f.d;
    auto strings = [](const std::vector<Int>& v) {
        std::vector<std::string> out;
        out.reserve(v.size());
        for (const auto& x : v) out.push_back(to_dec(x));
        return out;
    };
    j["coeffs"] = strings(f.coeffs);
    j["m"] = to_dec(f.m);
    j["n"] = to_dec(f.n);
    j["c"] = strings(f.c);
    return j.dump();
}

HomogeneousPoly poly_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    HomogeneousPoly f;
    f.d = j.at("d").get<int>();
    for (const auto& s : j.at("coeffs")) f.coeffs.push_back(from_dec(s.get<std::string>()));
    f.m = from_dec(j.at("m").get<std::string>());
    f.n = from_dec(j.at("n").get<std::string>());
    for (const auto& s : j.at("c")) f.c.push_back(from_dec(s.get<std::string>()));
    if (f.coeffs.size() != static_cast<std::size_t>(f.d) + 1)
        throw std::invalid_argument("poly_from_json: coefficient count mismatch");
    return f;
}

}  // namespace rnfs
