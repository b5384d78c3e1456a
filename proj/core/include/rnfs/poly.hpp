// Polynomial selection: base-m expansion, randomization by multiples of
// (x - my), irreducibility screening, and discriminants.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rnfs/int.hpp"
#include "rnfs/rng.hpp"

namespace rnfs {

// Degree-d bivariate homogeneous integer polynomial with f(m,1) = n.
// coeffs[i] is the coefficient of x^i y^(d-i).
struct HomogeneousPoly {
    int d = 0;
    std::vector<Int> coeffs;
    Int m, n;
    std::vector<Int> c;  // randomization summands, |c_i| <= H, c.size() == d (empty for f-hat)

    const Int& lead() const { return coeffs[static_cast<std::size_t>(d)]; }
    // f(x, 1) as a univariate coefficient vector, ascending.
    std::vector<Int> univariate() const { return coeffs; }
    bool invariants_hold() const;
};

// m uniform over the integers in ((n/2)^(1/d), n^(1/d)]; every result
// satisfies m^d <= n < 2 m^d.
Int choose_m(const Int& n, int d, Rng& rng);

// The base-m polynomial f-hat: monic, digits in [0, m), f(m,1) = n.
HomogeneousPoly base_m_expansion(const Int& n, const Int& m, int d);

// f = f-hat + sum c_i (x - my) x^(d-1-i) y^i with c_i uniform on I(2H).
HomogeneousPoly randomize_poly(const HomogeneousPoly& fhat, const Int& H, Rng& rng);

struct IrreducibilityResult {
    bool irreducible;
    // A nontrivial integer polynomial factor of f(x,1) when reducible
    // (ascending coefficients).
    std::optional<std::vector<Int>> witness;
};

// Exact decision for f(x,1) over the rationals.
IrreducibilityResult is_irreducible(const HomogeneousPoly& f);

// Discriminant of f(x,1) via the Sylvester resultant of f and f'.
Int discriminant(const HomogeneousPoly& f);

// Discriminant of the minimal polynomial of f_d * alpha:
// disc_g = disc_f * f_d^(d(d-1)).
Int discriminant_of_order(const HomogeneousPoly& f);

// Resultant of two integer polynomials (ascending coefficients) via
// fraction-free elimination on the Sylvester matrix.
Int resultant(const std::vector<Int>& a, const std::vector<Int>& b);

// JSON round trip (decimal strings for all big integers).
std::string poly_to_json(const HomogeneousPoly& f);
HomogeneousPoly poly_from_json(const std::string& text);

}  // namespace rnfs
