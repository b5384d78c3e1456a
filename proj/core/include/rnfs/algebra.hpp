// Rational and algebraic square roots of kernel-selected relation subsets,
// and factor extraction from a congruence of squares.
//
// Internally everything algebraic lives in Z[theta] for theta = f_d alpha,
// whose minimal polynomial g is monic with integer coefficients. The paper's
// product P = f'(alpha)^2 prod f_d(a - b alpha) is scaled by the square
// f_d^(2(d-1)) into W = (f_d^(d-1) f'(alpha))^2 prod (a f_d - b theta), and
// the returned root w satisfies w^2 = W exactly, i.e. v = w / f_d^(d-1) has
// v^2 = P (mod f).
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "rnfs/int.hpp"
#include "rnfs/poly.hpp"
#include "rnfs/qpoly.hpp"
#include "rnfs/relations.hpp"
#include "rnfs/rng.hpp"

namespace rnfs {

// The monic order Z[theta]: g(x) = f_d^(d-1) f(x / f_d), elements are
// theta-basis coefficient vectors of length d.
struct NumberRing {
    int d = 0;
    Int fd;
    std::vector<Int> g;  // ascending, g[d] = 1

    static NumberRing from_poly(const HomogeneousPoly& f);

    using Elem = std::vector<Int>;
    Elem one() const;
    Elem mul(const Elem& a, const Elem& b) const;
    // a f_d - b theta
    Elem linear(const Int& a, const Int& b) const;
    // f_d^(d-1) f'(alpha) expressed in theta
    Elem scaled_derivative() const;
    // Field norm of an element: Res(g, e).
    Int norm(const Elem& e) const;
    // Evaluate at theta -> f_d m (mod n), i.e. the image in Z/nZ.
    Int eval_mod(const Elem& e, const Int& m, const Int& n) const;
};

// u = f'(m,1) * prod p^(sum e_p / 2) * f_d^(|S|/2) mod n. Preconditions
// (even exponents, even cardinality, positive sign product) are enforced and
// violations throw std::logic_error (a matrix bug upstream).
Int rational_sqrt(const std::vector<Relation>& subset, const HomogeneousPoly& f);

struct AlgebraicSquareRoot {
    std::vector<Int> w_theta;  // w in Z[theta] with w^2 = W exactly
    // v = w / f_d^(d-1) as rational coefficients in the alpha-basis
    QPoly v_alpha(const HomogeneousPoly& f) const;
    // v(m) mod n
    Int value_at_m(const HomogeneousPoly& f) const;
};

struct NotASquare {};

using AlgebraicSqrtResult = std::variant<AlgebraicSquareRoot, NotASquare>;

// Square root of P = f'(alpha)^2 prod f_d(a - b alpha) in the number field,
// via square checks and roots in residue fields F_q[x]/(g) for inert q, CRT
// on coefficients, and a norm-matched sign choice (d odd). The returned root
// is always verified by exact polynomial arithmetic.
AlgebraicSqrtResult algebraic_sqrt(const std::vector<Relation>& subset, const HomogeneousPoly& f,
                                   Rng& rng);

// Running count of exact w^2 = W verifications performed and passed; a
// failed verification throws, so passed == performed always.
std::uint64_t algebraic_sqrt_verifications();

// Nontrivial divisors among gcd(u +- v, n); empty result means Trivial.
// Requires u^2 = v^2 (mod n).
std::vector<Int> extract_factors(const Int& u, const Int& v_at_m, const Int& n);

}  // namespace rnfs
