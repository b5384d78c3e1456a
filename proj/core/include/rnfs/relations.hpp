// Pair sampling, double-smoothness relation building with algebraic exponent
// assignment, and the stochastic-deepening search schedule.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "rnfs/characters.hpp"
#include "rnfs/poly.hpp"
#include "rnfs/rng.hpp"
#include "rnfs/smooth.hpp"

namespace rnfs {

enum class RejectReason {
    NotCoprime,
    RationalNotSmooth,
    AlgebraicNotSmooth,
    ProjectivePrime,  // r | b and r | f(a,b)
    ZeroValue,
};

const char* reject_reason_name(RejectReason r);

struct AlgebraicFactor {
    std::uint64_t r;
    std::uint64_t s;
    std::uint32_t e;
    auto operator<=>(const AlgebraicFactor&) const = default;
};

// Accepted pair (a,b) with the rational factorization of a - mb, algebraic
// exponents e_(r,s), the cached f(a,b), and the frozen character bits.
struct Relation {
    std::int64_t a = 0;
    std::int64_t b = 0;
    Factorization rational;
    std::vector<AlgebraicFactor> algebraic;
    Int fab;
    std::vector<std::int8_t> char_bits;  // +1 / -1
};

// Rational primes <= B plus the (r,s) pairs with r <= B'. Primes dividing
// the leading coefficient are excluded (their roots are not well defined for
// the e_(r,s) bookkeeping); ramified primes stay in the base.
struct FactorBase {
    std::uint64_t B = 0, B_prime = 0;
    std::vector<std::uint32_t> rational_primes;
    struct AlgebraicEntry {
        std::uint32_t r;
        std::vector<std::uint32_t> roots;  // sorted
    };
    std::vector<AlgebraicEntry> algebraic;
    std::vector<std::uint32_t> algebraic_primes;  // all primes <= B' (for trial division)
    std::vector<std::int32_t> entry_of_prime;     // prime -> index into `algebraic`, -1 if excluded
    std::size_t pair_count = 0;                   // total number of (r,s) columns

    const AlgebraicEntry* entry(std::uint64_t r) const {
        if (r >= entry_of_prime.size() || entry_of_prime[r] < 0) return nullptr;
        return &algebraic[static_cast<std::size_t>(entry_of_prime[r])];
    }
};

FactorBase build_factor_base(const HomogeneousPoly& f, std::uint64_t B, std::uint64_t B_prime);

// Uniform over {(a,b) : 0 <= a < |b|, |b| in [ceil(A/2), A]}, both signs of b
// equiprobable.
std::pair<std::int64_t, std::int64_t> sample_pair(std::uint64_t A, Rng& rng);

// One (m, f) search context: the polynomial, its factor base, and the frozen
// character list.
struct RelationContext {
    HomogeneousPoly f;
    FactorBase fb;
    std::vector<CharacterSpec> chars;

    // evaluation fast path (set up by init)
    bool small = false;
    std::int64_t m_i64 = 0;
    std::vector<__int128> coeffs_i128;

    void init_fast_path(std::uint64_t A);
};

std::variant<Relation, RejectReason> build_relation(const RelationContext& ctx, std::int64_t a,
                                                    std::int64_t b);

// The factor-base-driven relation target: 2 + |S| + sum of root counts +
// character count + safety margin 16.
std::uint64_t relation_target(const FactorBase& fb, std::size_t char_count);

// ---------------------------------------------------------------------------
// Stochastic deepening.
// ---------------------------------------------------------------------------

// One candidate (m, f) context as seen by the search schedule. Pair tests are
// driven by index so that any worker split of a block yields identical
// results.
class SearchContext {
  public:
    virtual ~SearchContext() = default;
    virtual std::uint64_t target_count() const = 0;
    virtual std::uint64_t accepted_count() const = 0;
    virtual void run_block(std::uint64_t begin, std::uint64_t end, int workers) = 0;
    // Context unable to accept anything (reducible f, degenerate lead).
    virtual bool dead() const { return false; }
    // A factor of n found as a side effect (reducible-witness shortcut).
    virtual std::optional<Int> free_factor() const { return std::nullopt; }
};

class SearchDriver {
  public:
    virtual ~SearchDriver() = default;
    virtual std::unique_ptr<SearchContext> make_context(std::uint64_t serial) = 0;
};

struct LevelStats {
    int level = 0;
    std::uint64_t contexts = 0;
    std::uint64_t pairs = 0;
    std::uint64_t accepted = 0;
    std::uint64_t aborted = 0;
    std::uint64_t dead = 0;
};

struct SearchOutcome {
    std::unique_ptr<SearchContext> winner;  // null: exhausted (or free factor)
    std::uint64_t winner_serial = 0;
    std::optional<Int> free_factor;
    std::vector<LevelStats> levels;
    std::uint64_t total_pairs = 0;
};

struct SearchOptions {
    int levels = 1;
    std::int64_t base_budget = 1;
    bool early_abort = false;
    double ln_n = 8.0;  // early-abort checkpoint divisor is max(ln n, 8)
    int workers = 1;
};

// Iterates levels i = 0..levels-1; level i draws 2^i fresh contexts, each
// given a budget summing to base_budget per level (distributed to within one
// pair). Returns as soon as one context reaches its target.
SearchOutcome stochastic_search(SearchDriver& driver, const SearchOptions& opts);

// Canonical ordering for merged relation sets: sort by (|b|, b, a).
void canonicalize_relations(std::vector<Relation>& rels);

// JSONL serialization (one relation per line; big integers as decimal
// strings).
std::string relation_to_json(const Relation& rel);
Relation relation_from_json(const std::string& line);

}  // namespace rnfs
