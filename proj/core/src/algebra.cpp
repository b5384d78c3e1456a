#include "rnfs/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rnfs/modpoly.hpp"
#include "rnfs/params.hpp"
#include "rnfs/primes.hpp"

namespace rnfs {

namespace {
std::atomic<std::uint64_t> g_sqrt_verifications{0};
}

std::uint64_t algebraic_sqrt_verifications() { return g_sqrt_verifications.load(); }

NumberRing NumberRing::from_poly(const HomogeneousPoly& f) {
    NumberRing nr;
    nr.d = f.d;
    nr.fd = f.lead();
    if (nr.fd == 0) throw std::domain_error("NumberRing: zero leading coefficient");
    nr.g.assign(static_cast<std::size_t>(f.d) + 1, Int(0));
    // g_i = f_i * f_d^(d-1-i), g_d = 1
    for (int i = 0; i < f.d; ++i) {
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), nr.fd.get_mpz_t(), static_cast<unsigned long>(f.d - 1 - i));
        nr.g[static_cast<std::size_t>(i)] = f.coeffs[static_cast<std::size_t>(i)] * pw;
    }
    nr.g[static_cast<std::size_t>(f.d)] = 1;
    return nr;
}

NumberRing::Elem NumberRing::one() const {
    Elem e(static_cast<std::size_t>(d), Int(0));
    e[0] = 1;
    return e;
}

NumberRing::Elem NumberRing::mul(const Elem& a, const Elem& b) const {
    std::vector<Int> prod(static_cast<std::size_t>(2 * d - 1), Int(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            prod[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] *
                                                     b[static_cast<std::size_t>(j)];
    // reduce by monic g
    for (int k = 2 * d - 2; k >= d; --k) {
        Int c = prod[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        prod[static_cast<std::size_t>(k)] = 0;
        for (int i = 0; i < d; ++i)
            prod[static_cast<std::size_t>(k - d + i)] -= c * g[static_cast<std::size_t>(i)];
    }
    prod.resize(static_cast<std::size_t>(d));
    return prod;
}

NumberRing::Elem NumberRing::linear(const Int& a, const Int& b) const {
    Elem e(static_cast<std::size_t>(d), Int(0));
    e[0] = a * fd;
    e[1] -= b;
    return e;
}

NumberRing::Elem NumberRing::scaled_derivative() const {
    // f_d^(d-1) f'(alpha) in the theta basis: alpha^(i-1) = theta^(i-1)/f_d^(i-1),
    // so the theta^(i-1) coefficient is i f_i f_d^(d-i) = i g_i f_d (and d f_d
    // for i = d).
    Elem e(static_cast<std::size_t>(d), Int(0));
    for (int i = 1; i < d; ++i)
        e[static_cast<std::size_t>(i - 1)] = Int(i) * g[static_cast<std::size_t>(i)] * fd;
    e[static_cast<std::size_t>(d - 1)] = Int(d) * fd;
    return e;
}

Int NumberRing::norm(const Elem& e) const {
    std::vector<Int> epoly = e;
    while (!epoly.empty() && epoly.back() == 0) epoly.pop_back();
    if (epoly.empty()) return 0;
    return resultant(g, epoly);
}

Int NumberRing::eval_mod(const Elem& e, const Int& m, const Int& n) const {
    Int t = mod_reduce(fd * m, n);
    Int acc = 0;
    for (std::size_t i = e.size(); i-- > 0;) acc = mod_reduce(acc * t + e[i], n);
    return acc;
}

// ---------------------------------------------------------------------------
// Rational square root.
// ---------------------------------------------------------------------------

Int rational_sqrt(const std::vector<Relation>& subset, const HomogeneousPoly& f) {
    const Int& n = f.n;
    if (subset.size() % 2 != 0)
        throw std::logic_error("rational_sqrt: subset cardinality must be even");
    int sign = 1;
    std::map<std::uint64_t, std::uint64_t> exps;
    for (const auto& rel : subset) {
        sign *= rel.rational.sign;
        for (auto [p, e] : rel.rational.factors) exps[p] += e;
    }
    if (sign != 1) throw std::logic_error("rational_sqrt: negative sign product");
    // u = f'(m,1) * prod p^(e/2) * f_d^(|S|/2) mod n
    Int u = 0;
    for (int i = 1; i <= f.d; ++i) {
        Int term = Int(i) * f.coeffs[static_cast<std::size_t>(i)];
        Int mp;
        mpz_powm_ui(mp.get_mpz_t(), f.m.get_mpz_t(), static_cast<unsigned long>(i - 1),
                    n.get_mpz_t());
        u += term * mp;
    }
    u = mod_reduce(u, n);
    for (auto [p, e] : exps) {
        if (e % 2 != 0) throw std::logic_error("rational_sqrt: odd exponent (matrix bug)");
        Int pe = powmod(Int(static_cast<unsigned long>(p)), Int(static_cast<unsigned long>(e / 2)), n);
        u = mod_reduce(u * pe, n);
    }
    Int fd_half = powmod(mod_reduce(f.lead(), n), Int(static_cast<unsigned long>(subset.size() / 2)), n);
    u = mod_reduce(u * fd_half, n);
    return u;
}

// ---------------------------------------------------------------------------
// Algebraic square root.
// ---------------------------------------------------------------------------

namespace {

// W and its square root in F_q[x]/(g) for an inert prime q = 3 (mod 4).
struct ResidueRoot {
    std::uint64_t q;
    std::vector<std::uint64_t> root;  // degree < d
};

std::vector<std::uint64_t> reduce_elem(const NumberRing& nr, const NumberRing::Elem& e,
                                       std::uint64_t q) {
    std::vector<std::uint64_t> out;
    out.reserve(e.size());
    Fp64 ring{q};
    for (const auto& c : e) out.push_back(ring.reduce_int(c));
    return out;
}

}  // namespace

QPoly AlgebraicSquareRoot::v_alpha(const HomogeneousPoly& f) const {
    // v_i = w_i f_d^i / f_d^(d-1)
    QPoly v;
    Int fd = f.lead();
    Int denom;
    mpz_pow_ui(denom.get_mpz_t(), fd.get_mpz_t(), static_cast<unsigned long>(f.d - 1));
    for (std::size_t i = 0; i < w_theta.size(); ++i) {
        Int num = w_theta[i];
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), fd.get_mpz_t(), static_cast<unsigned long>(i));
        Rat r(num * pw, denom);
        r.canonicalize();
        v.push_back(r);
    }
    qpoly_trim(v);
    return v;
}

Int AlgebraicSquareRoot::value_at_m(const HomogeneousPoly& f) const {
    NumberRing nr = NumberRing::from_poly(f);
    Int raw = nr.eval_mod(w_theta, f.m, f.n);
    Int denom;
    mpz_pow_ui(denom.get_mpz_t(), f.lead().get_mpz_t(), static_cast<unsigned long>(f.d - 1));
    auto inv = mod_inverse(mod_reduce(denom, f.n), f.n);
    if (!inv)
        throw std::logic_error("algebraic value_at_m: f_d shares a factor with n "
                               "(should have been caught as a free factor)");
    return mod_reduce(raw * *inv, f.n);
}

AlgebraicSqrtResult algebraic_sqrt(const std::vector<Relation>& subset, const HomogeneousPoly& f,
                                   Rng& rng) {
    if (subset.size() % 2 != 0)
        throw std::logic_error("algebraic_sqrt: subset cardinality must be even");
    {
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> exps;
        for (const auto& rel : subset)
            for (const auto& af : rel.algebraic) exps[{af.r, af.s}] += af.e;
        for (const auto& [rs, e] : exps)
            if (e % 2 != 0) throw std::logic_error("algebraic_sqrt: odd e_(r,s) (matrix bug)");
    }

    const NumberRing nr = NumberRing::from_poly(f);
    const int d = nr.d;

    // W = (f_d^(d-1) f'(alpha))^2 * prod (a f_d - b theta)
    NumberRing::Elem fprime = nr.scaled_derivative();
    NumberRing::Elem W = nr.mul(fprime, fprime);
    for (const auto& rel : subset)
        W = nr.mul(W, nr.linear(Int(static_cast<long>(rel.a)), Int(static_cast<long>(rel.b))));

    // Norm must be a perfect square (d odd makes the norm of a square
    // nonnegative); its integer root pins the sign at every prime.
    Int normW = nr.norm(W);
    if (normW == 0) throw std::logic_error("algebraic_sqrt: zero product");
    auto snorm = perfect_sqrt(normW);
    if (!snorm) return NotASquare{};
    const Int S_N = *snorm;

    // Coefficient bound for w from the embedding bound: every conjugate of w
    // has absolute value at most sqrt(max_j |W^(j)|) and the basis change
    // from power sums stays moderate at these degrees.
    double log2_wcoef;
    {
        double maxg = 1.0;
        for (const auto& gi : nr.g) maxg = std::max(maxg, log_int(abs(gi) + 1));
        double theta_bound = std::log2(2.0) + maxg / std::log(2.0);  // log2(1 + max |g_i|)
        double w1 = 0;
        for (const auto& wi : W) w1 = std::max(w1, log_int(abs(wi) + 1) / std::log(2.0));
        double lw = w1 + std::log2(static_cast<double>(d)) + (d - 1) * theta_bound;
        log2_wcoef = lw / 2.0 + theta_bound * (d - 1) + std::log2(static_cast<double>(d)) + 16.0;
    }

    Int delta_g = 0;
    {
        // disc(g) = Res(g, g') (monic): primes dividing it are skipped
        std::vector<Int> gd;
        for (std::size_t i = 1; i < nr.g.size(); ++i) gd.push_back(nr.g[i] * Int(static_cast<long>(i)));
        delta_g = resultant(nr.g, gd);
    }

    for (int attempt = 0; attempt < 4; ++attempt) {
        double target_bits = (log2_wcoef + 1.0) * std::pow(2.0, attempt);
        std::vector<ResidueRoot> roots;
        double have_bits = 0;
        Rng qrng = rng.derive("sqrtq", static_cast<std::uint64_t>(attempt));
        int iters = 0;
        while (have_bits < target_bits && ++iters < 100000) {
            std::uint64_t q = (qrng.next() >> 34) | 1;  // ~30-bit odd
            if (q < 1000) continue;
            if (q % 4 != 3 || !is_prime_u64(q)) continue;
            if (mpz_divisible_ui_p(nr.fd.get_mpz_t(), static_cast<unsigned long>(q)) ||
                (delta_g != 0 && mpz_divisible_ui_p(delta_g.get_mpz_t(), static_cast<unsigned long>(q))) ||
                mpz_divisible_ui_p(S_N.get_mpz_t(), static_cast<unsigned long>(q))) {

                continue;
            }
            Fp64 ring{q};
            ModPoly<Fp64> gq;
            for (const auto& gi : nr.g) gq.push_back(ring.reduce_int(gi));
            poly_trim(ring, gq);
            if (poly_deg(gq) != d || !poly_irreducible(ring, gq)) continue;
            ModPoly<Fp64> Wq = reduce_elem(nr, W, q);
            poly_trim(ring, Wq);
            if (Wq.empty()) continue;

            Int qd = 1;
            for (int i = 0; i < d; ++i) qd *= Int(static_cast<unsigned long>(q));
            // Euler criterion in F_(q^d)
            ModPoly<Fp64> euler = poly_powmod(ring, Wq, (qd - 1) / 2, gq);
            if (poly_deg(euler) != 0)
                throw std::logic_error("algebraic_sqrt: Euler power not constant");
            if (euler[0] == q - 1) return NotASquare{};  // certified non-square
            // square root by exponentiation: q^d = 3 (mod 4)
            ModPoly<Fp64> wq = poly_powmod(ring, Wq, (qd + 1) / 4, gq);
            // norm to F_q: wq^(1 + q + ... + q^(d-1))
            ModPoly<Fp64> nrm{ring.one()};
            Int e = 0;
            Int qq = 1;
            for (int i = 0; i < d; ++i) {
                e += qq;
                qq *= Int(static_cast<unsigned long>(q));
            }
            nrm = poly_powmod(ring, wq, e, gq);
            if (poly_deg(nrm) != 0) throw std::logic_error("algebraic_sqrt: norm not constant");
            std::uint64_t want = Fp64{q}.reduce_int(S_N);
            if (nrm[0] == ring.neg(want)) {
                // flip the branch
                for (auto& c : wq) c = ring.neg(c);
            } else if (nrm[0] != want) {

                continue;
            }
            wq.resize(static_cast<std::size_t>(d), 0);
            roots.push_back({q, std::vector<std::uint64_t>(wq.begin(), wq.end())});
            have_bits += std::log2(static_cast<double>(q));
        }
        if (have_bits < target_bits) continue;

        // CRT the coefficients to centred representatives.
        std::vector<Int> w(static_cast<std::size_t>(d), Int(0));
        Int M = 1;
        std::vector<Int> residue(static_cast<std::size_t>(d), Int(0));
        for (const auto& rr : roots) {
            Int q(static_cast<unsigned long>(rr.q));
            if (M == 1) {
                for (int i = 0; i < d; ++i)
                    residue[static_cast<std::size_t>(i)] =
                        Int(static_cast<unsigned long>(rr.root[static_cast<std::size_t>(i)]));
                M = q;
                continue;
            }
            Int minv = *mod_inverse(mod_reduce(M, q), q);
            Int newM = M * q;
            for (int i = 0; i < d; ++i) {
                Int cur = residue[static_cast<std::size_t>(i)];
                Int target = Int(static_cast<unsigned long>(rr.root[static_cast<std::size_t>(i)]));
                Int t = mod_reduce((target - cur) * minv, q);
                residue[static_cast<std::size_t>(i)] = mod_reduce(cur + M * t, newM);
            }
            M = newM;
        }
        for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = mod_centred(residue[static_cast<std::size_t>(i)], M);

        // Exact verification: w^2 = W in Z[theta].
        NumberRing::Elem sq = nr.mul(w, w);
        if (sq == W) {
            g_sqrt_verifications.fetch_add(1);
            return AlgebraicSquareRoot{std::move(w)};
        }
        // insufficient CRT modulus or a pseudo-square: widen and retry
    }
    return NotASquare{};
}

std::vector<Int> extract_factors(const Int& u, const Int& v_at_m, const Int& n) {
    if (mod_reduce(u * u - v_at_m * v_at_m, n) != 0)
        throw std::logic_error("extract_factors: u^2 != v^2 (mod n)");
    std::vector<Int> out;
    for (const Int& cand : {gcd(u + v_at_m, n), gcd(abs(u - v_at_m), n)}) {
        if (cand != 1 && cand != n && cand != 0) {
            if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rnfs
