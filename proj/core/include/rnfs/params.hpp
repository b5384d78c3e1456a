// L-notation arithmetic, smooth-density estimation, and derivation of the
// tuning constants into a concrete parameter set.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "rnfs/int.hpp"

namespace rnfs {

// All tuning constants for one factorization attempt.
struct NfsParams {
    Int n;
    int d = 3;  // odd, >= 3
    double delta = 0, kappa = 0, sigma = 0, beta = 0, beta_prime = 0;
    std::uint64_t B = 2, B_prime = 2;  // smoothness bounds
    std::uint64_t A = 2;               // pair-search bound: |b| in [A/2, A], 0 <= a < |b|
    Int H = 1;                         // coefficient half-range: c_i in I(2H)
    int char_count = 1;
    int deepening_levels = 1;
    std::int64_t budget_per_level = 1;
    int batch_k = 3;
    bool faithful_characters = false;
    bool early_abort = true;
    std::string profile = "desk";  // "desk" or "paper"

    // Throws ConstraintViolation naming the first violated constraint.
    void validate() const;
};

struct ConstraintViolation : std::invalid_argument {
    explicit ConstraintViolation(const std::string& what) : std::invalid_argument(what) {}
};

// exp(c * (ln n)^a * (ln ln n)^(1-a)); requires n >= 16.
double l_value(const Int& n, double a, double c);
// Same with the logarithm supplied directly (test hook for exact logs).
double l_value_from_logs(double log_n, double a, double c);

double log_int(const Int& n);

// Dickman's rho via numeric integration of u rho'(u) = -rho(u-1).
double dickman_rho(double u);

// Smooth-density estimate L_n(b-a, d(b-a)/c)^-1 for the probability that an
// L_n(b,d)-sized integer is L_n(a,c)-smooth, clamped to at most 1.
// value_exp = (b, d), bound_exp = (a, c); requires bound exponent a < b.
double cep_density(std::pair<double, double> value_exp, std::pair<double, double> bound_exp,
                   const Int& n);

// Derivation of a full parameter set for n. Overrides are key=value pairs
// with the same keys as the CLI --set flag; unknown keys are rejected.
NfsParams derive_params(const Int& n, const std::map<std::string, std::string>& overrides = {});

// Formula count of quadratic characters (before the desk cap).
Int char_count_formula(const Int& n, int d, double delta, double kappa);

}  // namespace rnfs
