// Quadratic characters on the number ring: first-degree primes (roots of f
// mod r), stochastic character ideals, and evaluation through function-field
// reciprocity.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rnfs/int.hpp"
#include "rnfs/params.hpp"
#include "rnfs/poly.hpp"
#include "rnfs/rng.hpp"

namespace rnfs {

// A prime ideal (r, p_poly): p_poly monic irreducible over F_r, dividing
// f(x,1) mod r exactly once. Degree-1 specs are the pairs (r, s).
struct CharacterSpec {
    Int r;
    std::vector<Int> p_poly;  // ascending, monic, coefficients in [0, r)

    int degree() const { return static_cast<int>(p_poly.size()) - 1; }
    Int root() const { return mod_reduce(-p_poly[0], r); }
    bool operator==(const CharacterSpec&) const = default;
};

// Exact root set of f(x,1) mod r, sorted; nullopt when r divides the leading
// coefficient (such primes are excluded from the factor base).
std::optional<std::vector<std::uint64_t>> find_roots_mod_p(const HomogeneousPoly& f,
                                                           std::uint64_t r);

// The exponentiation oracle: g^((r^k-1)/2) reduced mod (p_poly, r), mapped to
// {+1, -1, 0}. g is given by ascending integer coefficients.
int legendre_polyfield(const std::vector<Int>& g, const std::vector<Int>& p_poly, const Int& r);

// chi_(r,s)(a - b alpha) via the function-field reciprocity chain; equals
// legendre_polyfield(a - bX, p_poly, r).
int char_eval(const CharacterSpec& spec, const Int& a, const Int& b);

// The six-step sampler: degree bound k uniform in [1,d], r uniform in
// (x_bound^(1/(k+1)), x_bound^(1/k)], Miller-Rabin screen, factor f mod r,
// emit a uniform simple irreducible factor of degree <= k with probability
// j/d. Returns nullopt after the iteration cap (Exhausted).
std::optional<CharacterSpec> ideal_sampler(const HomogeneousPoly& f, const Int& x_bound,
                                           Rng& rng, std::int64_t iteration_cap = 1'000'000);

// Steps 3-5 for a forced (k, r) draw; test hook for the sampler internals.
std::optional<CharacterSpec> ideal_sampler_forced(const HomogeneousPoly& f, int k, const Int& r,
                                                  Rng& rng);

// A frozen character list for one polynomial. In the default mode character
// primes are taken just above B' (x_bound = B'^(d+1)); in faithful mode r is
// drawn from [exp(d^4), 2 exp(d^4)] with degree-1 ideals, as the listing
// specifies.
std::vector<CharacterSpec> sample_character_list(const HomogeneousPoly& f, const NfsParams& p,
                                                 Rng& rng);

// JSON array of {"r": "...", "poly": ["...", ...]} with constant-first
// decimal strings.
std::string characters_to_json(const std::vector<CharacterSpec>& specs);
std::vector<CharacterSpec> characters_from_json(const std::string& text);

}  // namespace rnfs
