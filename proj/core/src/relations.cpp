#include "rnfs/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "rnfs/primes.hpp"

namespace rnfs {

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::NotCoprime: return "NotCoprime";
        case RejectReason::RationalNotSmooth: return "RationalNotSmooth";
        case RejectReason::AlgebraicNotSmooth: return "AlgebraicNotSmooth";
        case RejectReason::ProjectivePrime: return "ProjectivePrime";
        case RejectReason::ZeroValue: return "ZeroValue";
    }
    return "?";
}

FactorBase build_factor_base(const HomogeneousPoly& f, std::uint64_t B, std::uint64_t B_prime) {
    FactorBase fb;
    fb.B = B;
    fb.B_prime = B_prime;
    PrimeTable table(std::max(B, B_prime));
    for (std::uint32_t p : table.primes)
        if (p <= B) fb.rational_primes.push_back(p);
    fb.entry_of_prime.assign(B_prime + 1, -1);
    for (std::uint32_t p : table.primes) {
        if (p > B_prime) break;
        fb.algebraic_primes.push_back(p);
        auto roots = find_roots_mod_p(f, p);
        if (!roots || roots->empty()) continue;  // r | f_d excluded; rootless primes carry no column
        FactorBase::AlgebraicEntry e;
        e.r = p;
        for (auto s : *roots) e.roots.push_back(static_cast<std::uint32_t>(s));
        fb.entry_of_prime[p] = static_cast<std::int32_t>(fb.algebraic.size());
        fb.pair_count += e.roots.size();
        fb.algebraic.push_back(std::move(e));
    }
    return fb;
}

std::pair<std::int64_t, std::int64_t> sample_pair(std::uint64_t A, Rng& rng) {
    if (A < 1) throw std::domain_error("sample_pair: A must be >= 1");
    std::uint64_t lo = (A + 1) / 2;
    for (;;) {
        std::uint64_t bmag = lo + rng.below(A - lo + 1);
        std::uint64_t a = rng.below(A);
        if (a >= bmag) continue;  // rejection keeps (a, |b|) jointly uniform
        std::int64_t b = static_cast<std::int64_t>(bmag);
        if (rng.coin()) b = -b;
        return {static_cast<std::int64_t>(a), b};
    }
}

std::uint64_t relation_target(const FactorBase& fb, std::size_t char_count) {
    return 2 + fb.rational_primes.size() + fb.pair_count + char_count + 16;
}

void RelationContext::init_fast_path(std::uint64_t A) {
    small = false;
    if (!fits_i64(f.m)) return;
    m_i64 = to_i64(f.m);
    // |a - mb| <= A(m+1) must fit in int64; |f(a,b)| <= (d+1) maxc A^d in int128.
    long double rat = static_cast<long double>(A) * (std::fabsl(static_cast<long double>(m_i64)) + 1);
    if (rat > 4.0e18L) return;
    Int maxc = 0;
    for (const auto& ci : f.coeffs) maxc = std::max(maxc, Int(abs(ci)));
    long double bound = static_cast<long double>(f.d + 1) * log_int(maxc + 1) / std::log(2.0L);
    // log2 of (d+1) * maxc * A^d
    long double log2fab = std::log2l(static_cast<long double>(f.d + 1)) +
                          log_int(maxc + 1) / std::logl(2.0L) +
                          f.d * std::log2l(static_cast<long double>(A) + 1);
    (void)bound;
    if (log2fab > 120.0L) return;
    coeffs_i128.clear();
    for (const auto& ci : f.coeffs) {
        if (!fits_i64(ci)) return;
        coeffs_i128.push_back(static_cast<__int128>(to_i64(ci)));
    }
    small = true;
}

namespace {

__int128 eval_i128(const std::vector<__int128>& coeffs, std::int64_t a, std::int64_t b) {
    __int128 acc = coeffs.back();
    __int128 bp = 1;
    std::size_t d = coeffs.size() - 1;
    __int128 result = 0;
    // Horner in a with a final multiply by powers of b.
    for (std::size_t i = d; i-- > 0;) {
        acc = acc * a;
        bp *= b;
        acc += coeffs[i] * bp;
    }
    result = acc;
    return result;
}

std::uint64_t u64_abs(std::int64_t v) {
    return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

}  // namespace

std::variant<Relation, RejectReason> build_relation(const RelationContext& ctx, std::int64_t a,
                                                    std::int64_t b) {
    if (b == 0) return RejectReason::ZeroValue;
    if (std::gcd(u64_abs(a), u64_abs(b)) != 1) return RejectReason::NotCoprime;

    Relation rel;
    rel.a = a;
    rel.b = b;

    // rational side: a - mb
    std::uint64_t residual = 0;
    bool rat_neg;
    std::uint64_t rat_mag;
    Int vr_big;
    if (ctx.small) {
        __int128 vr = static_cast<__int128>(a) - static_cast<__int128>(ctx.m_i64) * b;
        if (vr == 0) return RejectReason::ZeroValue;
        rat_neg = vr < 0;
        __int128 mag = rat_neg ? -vr : vr;
        rat_mag = static_cast<std::uint64_t>(mag);
        if (!smooth_factor_u64(rat_mag, ctx.fb.rational_primes, ctx.fb.B, rel.rational.factors,
                               residual))
            return RejectReason::RationalNotSmooth;
    } else {
        vr_big = Int(static_cast<long>(a)) - ctx.f.m * Int(static_cast<long>(b));
        if (vr_big == 0) return RejectReason::ZeroValue;
        rat_neg = sgn(vr_big) < 0;
        Int v = abs(vr_big);
        for (std::uint32_t p : ctx.fb.rational_primes) {
            std::uint32_t e = 0;
            while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
                mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
                ++e;
            }
            if (e) rel.rational.factors.emplace_back(p, e);
            if (v == 1) break;
        }
        if (v != 1) return RejectReason::RationalNotSmooth;
    }
    rel.rational.sign = rat_neg ? -1 : 1;

    // algebraic side: f(a,b) must factor over the admitted (r,s) pairs
    std::vector<std::pair<std::uint64_t, std::uint32_t>> alg_factors;
    bool alg_neg;
    if (ctx.small) {
        __int128 v = eval_i128(ctx.coeffs_i128, a, b);
        if (v == 0) return RejectReason::ZeroValue;
        alg_neg = v < 0;
        __int128 mag = alg_neg ? -v : v;
        if (mag >> 64) {
            // big residual path: peel with 64-bit division once below 2^64
            Int big = 0;
            // reconstruct magnitude into Int
            std::uint64_t hi = static_cast<std::uint64_t>(mag >> 64);
            std::uint64_t lomag = static_cast<std::uint64_t>(mag);
            big = Int(static_cast<unsigned long>(hi));
            big <<= 64;
            big += Int(static_cast<unsigned long>(lomag));
            rel.fab = alg_neg ? Int(-big) : big;
            for (std::uint32_t p : ctx.fb.algebraic_primes) {
                std::uint32_t e = 0;
                while (mpz_divisible_ui_p(big.get_mpz_t(), p)) {
                    mpz_divexact_ui(big.get_mpz_t(), big.get_mpz_t(), p);
                    ++e;
                }
                if (e) alg_factors.emplace_back(p, e);
                if (fits_u64(big)) break;
            }
            if (!fits_u64(big)) return RejectReason::AlgebraicNotSmooth;
            std::uint64_t rest = to_u64(big);
            std::vector<std::pair<std::uint64_t, std::uint32_t>> tail;
            std::uint64_t res2 = 0;
            if (rest != 1 &&
                !smooth_factor_u64(rest, ctx.fb.algebraic_primes, ctx.fb.B_prime, tail, res2))
                return RejectReason::AlgebraicNotSmooth;
            // merge tail into alg_factors
            for (auto [p, e] : tail) {
                bool merged = false;
                for (auto& [q, eq] : alg_factors)
                    if (q == p) {
                        eq += e;
                        merged = true;
                        break;
                    }
                if (!merged) alg_factors.emplace_back(p, e);
            }
            std::sort(alg_factors.begin(), alg_factors.end());
        } else {
            std::uint64_t magu = static_cast<std::uint64_t>(mag);
            rel.fab = Int(static_cast<unsigned long>(magu));
            if (alg_neg) rel.fab = -rel.fab;
            if (!smooth_factor_u64(magu, ctx.fb.algebraic_primes, ctx.fb.B_prime, alg_factors,
                                   residual))
                return RejectReason::AlgebraicNotSmooth;
        }
    } else {
        Int v = eval_homogeneous(ctx.f, Int(static_cast<long>(a)), Int(static_cast<long>(b)));
        if (v == 0) return RejectReason::ZeroValue;
        rel.fab = v;
        alg_neg = sgn(v) < 0;
        Int mag = abs(v);
        for (std::uint32_t p : ctx.fb.algebraic_primes) {
            std::uint32_t e = 0;
            while (mpz_divisible_ui_p(mag.get_mpz_t(), p)) {
                mpz_divexact_ui(mag.get_mpz_t(), mag.get_mpz_t(), p);
                ++e;
            }
            if (e) alg_factors.emplace_back(p, e);
            if (mag == 1) break;
        }
        if (mag != 1) return RejectReason::AlgebraicNotSmooth;
    }

    // apportion each prime to its root: e_(r,s) with a = b s (mod r)
    rel.algebraic.reserve(alg_factors.size());
    for (auto [r, e] : alg_factors) {
        if (u64_abs(b) % r == 0) return RejectReason::ProjectivePrime;
        const auto* entry = ctx.fb.entry(r);
        if (!entry) return RejectReason::AlgebraicNotSmooth;  // prime excluded from the base
        std::uint64_t am = u64_abs(a) % r;  // a >= 0 in the sample region, but stay safe
        if (a < 0) am = (r - am) % r;
        std::uint64_t bm = u64_abs(b) % r;
        if (b < 0) bm = (r - bm) % r;
        std::uint64_t s = mulmod_u64(am, powmod_u64(bm, r - 2, r), r);
        if (!std::binary_search(entry->roots.begin(), entry->roots.end(),
                                static_cast<std::uint32_t>(s)))
            throw std::logic_error("build_relation: congruence root missing from factor base");
        rel.algebraic.push_back({r, s, e});
    }
    // fold the sign of f(a,b) into the factorization record via fab (sign is
    // read from fab by the matrix assembly)

    rel.char_bits.reserve(ctx.chars.size());
    for (const auto& spec : ctx.chars) {
        int v = char_eval(spec, Int(static_cast<long>(a)), Int(static_cast<long>(b)));
        if (v == 0)
            throw std::logic_error("build_relation: character vanished on an accepted pair");
        rel.char_bits.push_back(static_cast<std::int8_t>(v));
    }
    return rel;
}

// ---------------------------------------------------------------------------
// Stochastic deepening.
// ---------------------------------------------------------------------------

namespace {
constexpr std::uint64_t kSearchBlock = 16384;
}

SearchOutcome stochastic_search(SearchDriver& driver, const SearchOptions& opts) {
    if (opts.levels < 1 || opts.base_budget < 1)
        throw std::domain_error("stochastic_search: levels and budget must be >= 1");
    SearchOutcome out;
    std::uint64_t serial = 0;
    for (int level = 0; level < opts.levels; ++level) {
        LevelStats stats;
        stats.level = level;
        std::uint64_t contexts = 1ULL << level;
        std::uint64_t q = static_cast<std::uint64_t>(opts.base_budget) / contexts;
        std::uint64_t rem = static_cast<std::uint64_t>(opts.base_budget) % contexts;
        for (std::uint64_t c = 0; c < contexts; ++c) {
            std::uint64_t budget = q + (c < rem ? 1 : 0);
            if (budget == 0) continue;
            auto ctx = driver.make_context(serial);
            std::uint64_t this_serial = serial++;
            ++stats.contexts;
            if (ctx->free_factor()) {
                out.free_factor = ctx->free_factor();
                out.levels.push_back(stats);
                return out;
            }
            if (ctx->dead()) {
                ++stats.dead;
                continue;
            }
            const std::uint64_t target = ctx->target_count();
            const std::uint64_t checkpoint =
                opts.early_abort
                    ? std::max<std::uint64_t>(
                          kSearchBlock,
                          static_cast<std::uint64_t>(static_cast<double>(budget) /
                                                     std::max(opts.ln_n, 8.0)))
                    : 0;
            bool checked = false;
            std::uint64_t pos = 0;
            while (pos < budget) {
                std::uint64_t end = std::min(pos + kSearchBlock, budget);
                ctx->run_block(pos, end, opts.workers);
                pos = end;
                if (ctx->accepted_count() >= target) {
                    stats.pairs += pos;
                    stats.accepted += ctx->accepted_count();
                    out.total_pairs += pos;
                    out.levels.push_back(stats);
                    out.winner = std::move(ctx);
                    out.winner_serial = this_serial;
                    return out;
                }
                if (opts.early_abort && !checked && pos >= checkpoint) {
                    checked = true;
                    double extrapolated = static_cast<double>(ctx->accepted_count()) *
                                          (static_cast<double>(budget) / static_cast<double>(pos));
                    if (extrapolated < 0.5 * static_cast<double>(target)) {
                        ++stats.aborted;
                        break;
                    }
                }
            }
            out.total_pairs += pos;
            stats.pairs += pos;
            stats.accepted += ctx->accepted_count();
        }
        out.levels.push_back(stats);
    }
    return out;
}

void canonicalize_relations(std::vector<Relation>& rels) {
    std::sort(rels.begin(), rels.end(), [](const Relation& x, const Relation& y) {
        auto kx = std::tuple(u64_abs(x.b), x.b, x.a);
        auto ky = std::tuple(u64_abs(y.b), y.b, y.a);
        return kx < ky;
    });
    rels.erase(std::unique(rels.begin(), rels.end(),
                           [](const Relation& x, const Relation& y) {
                               return x.a == y.a && x.b == y.b;
                           }),
               rels.end());
}

// ---------------------------------------------------------------------------
// JSONL.
// ---------------------------------------------------------------------------

std::string relation_to_json(const Relation& rel) {
    nlohmann::json j;
    j["a"] = std::to_string(rel.a);
    j["b"] = std::to_string(rel.b);
    j["sign"] = rel.rational.sign;
    nlohmann::json rat = nlohmann::json::array();
    for (auto [p, e] : rel.rational.factors)
        rat.push_back({std::to_string(p), e});
    j["rational"] = std::move(rat);
    nlohmann::json alg = nlohmann::json::array();
    for (const auto& af : rel.algebraic)
        alg.push_back({std::to_string(af.r), std::to_string(af.s), af.e});
    j["algebraic"] = std::move(alg);
    j["fab"] = to_dec(rel.fab);
    std::string bits;
    bits.reserve(rel.char_bits.size());
    for (auto v : rel.char_bits) bits.push_back(v > 0 ? '+' : '-');
    j["chars"] = bits;
    return j.dump();
}

Relation relation_from_json(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    Relation rel;
    rel.a = std::stoll(j.at("a").get<std::string>());
    rel.b = std::stoll(j.at("b").get<std::string>());
    rel.rational.sign = j.at("sign").get<int>();
    for (const auto& e : j.at("rational"))
        rel.rational.factors.emplace_back(std::stoull(e[0].get<std::string>()),
                                          e[1].get<std::uint32_t>());
    for (const auto& e : j.at("algebraic"))
        rel.algebraic.push_back({std::stoull(e[0].get<std::string>()),
                                 std::stoull(e[1].get<std::string>()), e[2].get<std::uint32_t>()});
    rel.fab = from_dec(j.at("fab").get<std::string>());
    for (char c : j.at("chars").get<std::string>())
        rel.char_bits.push_back(c == '+' ? 1 : -1);
    return rel;
}

}  // namespace rnfs
