#include "rnfs/params.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace rnfs {

double log_int(const Int& n) {
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double l_value_from_logs(double log_n, double a, double c) {
    double llog = std::log(log_n);
    return std::exp(c * std::pow(log_n, a) * std::pow(llog, 1.0 - a));
}

double l_value(const Int& n, double a, double c) {
    if (n < 16) throw std::domain_error("l_value: n must be >= 16");
    return l_value_from_logs(log_int(n), a, c);
}

// ---------------------------------------------------------------------------
// Dickman rho.
//
// Grid integration of the delay equation u rho'(u) = -rho(u-1), advanced by
// two interleaved Simpson chains of step 2h (the integrand at u depends only
// on grid values one unit back, so this is pure quadrature accumulation).
// ---------------------------------------------------------------------------

namespace {

constexpr int kRhoStepsPerUnit = 4096;
constexpr int kRhoMaxU = 96;

const std::vector<long double>& rho_grid() {
    static std::vector<long double> grid;
    static std::once_flag once;
    std::call_once(once, [] {
        const int n = kRhoStepsPerUnit;
        const long double h = 1.0L / n;
        grid.assign(static_cast<std::size_t>(kRhoMaxU) * n + 1, 0.0L);
        for (int i = 0; i <= n; ++i) grid[i] = 1.0L;
        auto integrand = [&](std::size_t j) { return grid[j - n] / (static_cast<long double>(j) * h); };
        // Warm-up: one trapezoid step each for the two Simpson chains.
        grid[n + 1] = grid[n] - h / 2 * (integrand(n) + integrand(n + 1));
        grid[n + 2] = grid[n] - h / 3 * (integrand(n) + 4 * integrand(n + 1) + integrand(n + 2));
        for (std::size_t j = n + 3; j < grid.size(); ++j) {
            long double v = grid[j - 2] - h / 3 * (integrand(j - 2) + 4 * integrand(j - 1) + integrand(j));
            grid[j] = v > 0 ? v : 0.0L;
        }
        // Enforce monotonicity against last-digit quadrature noise.
        for (std::size_t j = 1; j < grid.size(); ++j)
            if (grid[j] > grid[j - 1]) grid[j] = grid[j - 1];
    });
    return grid;
}

}  // namespace

double dickman_rho(double u) {
    if (u < 0) throw std::domain_error("dickman_rho: negative argument");
    if (u <= 1.0) return 1.0;
    const auto& grid = rho_grid();
    if (u >= kRhoMaxU) return 0.0;
    const double t = u * kRhoStepsPerUnit;
    const std::size_t i = static_cast<std::size_t>(t);
    if (static_cast<double>(i) == t) return static_cast<double>(grid[i]);
    // Cubic interpolation in log space (rho is positive and log-smooth).
    std::size_t i0 = std::min(std::max<std::size_t>(i, 1) - 1, grid.size() - 4);
    long double x[4], y[4];
    bool logspace = true;
    for (int k = 0; k < 4; ++k) {
        x[k] = static_cast<long double>(i0 + k) / kRhoStepsPerUnit;
        y[k] = grid[i0 + k];
        if (y[k] <= 0) logspace = false;
    }
    if (!logspace) return static_cast<double>(grid[i]);
    long double lu = u, acc = 0;
    for (int a = 0; a < 4; ++a) {
        long double term = std::log(y[a]);
        for (int b = 0; b < 4; ++b)
            if (a != b) term *= (lu - x[b]) / (x[a] - x[b]);
        acc += term;
    }
    double v = static_cast<double>(std::exp(acc));
    return std::min(v, 1.0);
}

double cep_density(std::pair<double, double> value_exp, std::pair<double, double> bound_exp,
                   const Int& n) {
    auto [b, d] = value_exp;
    auto [a, c] = bound_exp;
    if (!(a < b)) throw std::domain_error("cep_density: bound exponent must be below value exponent");
    if (c <= 0) throw std::domain_error("cep_density: bound coefficient must be positive");
    double coef = d * (b - a) / c;
    if (coef <= 0) return 1.0;
    double ln = log_int(n);
    double r = std::exp(-coef * std::pow(ln, b - a) * std::pow(std::log(ln), 1.0 - (b - a)));
    return std::min(r, 1.0);
}

Int char_count_formula(const Int& n, int d, double delta, double kappa) {
    double ln = log_int(n);
    double lln = std::log(ln);
    double log2n = ln / std::log(2.0);
    double v = 4.0 * d *
               (delta * kappa * log2n +
                (delta * delta * kappa / (2.0 * std::log(2.0))) * std::pow(ln, 4.0 / 3.0) /
                    std::cbrt(lln));
    Int r;
    mpz_set_d(r.get_mpz_t(), std::ceil(v));
    return r;
}

// ---------------------------------------------------------------------------
// Parameter derivation.
// ---------------------------------------------------------------------------

namespace {

constexpr double kTol = 1e-9;

std::uint64_t ceil_l_u64(double log_n, double a, double c, std::uint64_t lo) {
    double v = std::ceil(l_value_from_logs(log_n, a, c));
    if (v > 9e18) throw ConstraintViolation("derived bound exceeds 64-bit range");
    auto u = static_cast<std::uint64_t>(v);
    return std::max(u, lo);
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "on") return true;
    if (v == "0" || v == "false" || v == "off") return false;
    throw ConstraintViolation("bad boolean value: " + v);
}

}  // namespace

void NfsParams::validate() const {
    if (d < 3 || d % 2 == 0) throw ConstraintViolation("d must be odd and >= 3");
    if (B < 2 || B_prime < 2) throw ConstraintViolation("smoothness bounds must be >= 2");
    if (A < 2) throw ConstraintViolation("pair bound A must be >= 2");
    if (H < 1) throw ConstraintViolation("coefficient half-range H must be >= 1");
    if (char_count < 1) throw ConstraintViolation("char_count must be >= 1");
    if (deepening_levels < 1) throw ConstraintViolation("deepening_levels must be >= 1");
    if (budget_per_level < 1) throw ConstraintViolation("budget_per_level must be >= 1");
    if (batch_k < 3) throw ConstraintViolation("batch_k must be >= 3");
    if (delta <= 0 || kappa <= 0 || sigma <= 0 || beta <= 0 || beta_prime <= 0)
        throw ConstraintViolation("constants must be positive");
    // Eq. const-bounds and the d-bound. The optimum sits exactly on the
    // boundary (the slack epsilon is fixed to zero), so the comparisons
    // carry a small tolerance.
    if (!(kappa > 1.0 / delta - kTol))
        throw ConstraintViolation("const-bounds: kappa > 1/delta violated");
    double rhs = std::max(beta, beta_prime) + (1.0 / delta) / (3.0 * beta) +
                 (sigma * delta + kappa) / (3.0 * beta_prime);
    if (!(2.0 * sigma > rhs - kTol))
        throw ConstraintViolation("const-bounds: 2*sigma lower bound violated");
    if (!(1.0 / delta < (kappa + sigma * delta) / 2.0 + kTol))
        throw ConstraintViolation("d-bound: 1/delta < (kappa+sigma*delta)/2 violated");
}

NfsParams derive_params(const Int& n, const std::map<std::string, std::string>& overrides) {
    if (n < 4) throw std::domain_error("derive_params: n must be >= 4");

    NfsParams p;
    p.n = n;
    p.delta = std::cbrt(3.0);
    p.kappa = 1.0 / std::cbrt(3.0);
    p.beta = p.beta_prime = p.sigma = std::cbrt(8.0 / 9.0);

    // Pass 1: constants, profile and flags.
    for (const auto& [k, v] : overrides) {
        if (k == "delta") p.delta = std::stod(v);
        else if (k == "kappa") p.kappa = std::stod(v);
        else if (k == "sigma") p.sigma = std::stod(v);
        else if (k == "beta") p.beta = std::stod(v);
        else if (k == "beta_prime") p.beta_prime = std::stod(v);
        else if (k == "profile") {
            if (v != "desk" && v != "paper") throw ConstraintViolation("profile must be desk or paper");
            p.profile = v;
        } else if (k == "faithful_characters") p.faithful_characters = parse_bool(v);
        else if (k == "early_abort") p.early_abort = parse_bool(v);
        else if (k == "d" || k == "B" || k == "B_prime" || k == "A" || k == "H" ||
                 k == "char_count" || k == "deepening_levels" || k == "budget_per_level" ||
                 k == "batch_k") {
            // handled in pass 2
        } else {
            throw ConstraintViolation("unknown parameter key: " + k);
        }
    }

    const bool tiny = n < (Int(1) << 20);
    const double ln = n >= 16 ? log_int(n) : std::log(16.0);
    const double lln = std::log(ln);
    const double x13 = std::cbrt(ln) * std::pow(lln, 2.0 / 3.0);
    const double x23 = std::pow(ln, 2.0 / 3.0) * std::cbrt(lln);

    // Degree: nearest odd integer to delta*(ln n/lnln n)^(1/3); ties and
    // sub-3 values clamp to 3.
    double draw = p.delta * std::cbrt(ln / lln);
    {
        double lower = 2.0 * std::floor((draw - 1.0) / 2.0) + 1.0;
        double upper = lower + 2.0;
        double pick = (draw - lower <= upper - draw) ? lower : upper;
        p.d = static_cast<int>(std::max(3.0, pick));
    }

    if (p.profile == "paper") {
        p.B = ceil_l_u64(ln, 1.0 / 3.0, p.beta, tiny ? 50 : 2);
        p.B_prime = ceil_l_u64(ln, 1.0 / 3.0, p.beta_prime, tiny ? 50 : 2);
        p.A = ceil_l_u64(ln, 1.0 / 3.0, p.sigma, tiny ? 200 : 2);
        double hexp = (p.kappa - 1.0 / p.delta) * x23;
        if (hexp < 700.0) {
            p.H = Int(static_cast<unsigned long>(std::ceil(std::exp(std::max(0.0, hexp)))));
        } else {
            mpz_class h;
            mpz_set_d(h.get_mpz_t(), std::ceil(std::exp(700.0)));
            p.H = h;  // far beyond desk scale; never exercised in earnest
        }
        if (p.H < 1) p.H = 1;
    } else {
        // Desk curve: measured at n in [2^24, 2^34] so that the expected
        // number of doubly-smooth pairs in the search region comfortably
        // exceeds the factor-base size. The asymptotic formulas are far too
        // small at this scale.
        p.B = p.B_prime = std::max<std::uint64_t>(tiny ? 50 : 2,
                                                  static_cast<std::uint64_t>(std::llround(
                                                      std::exp(1.03 * x13 + 1.93))));
        p.A = std::max<std::uint64_t>(tiny ? 200 : 2, static_cast<std::uint64_t>(std::llround(
                                                          std::exp(0.51 * x13 + 3.80))));
        p.H = 2;
    }

    Int cc = char_count_formula(n, p.d, p.delta, p.kappa);
    Int cap = tiny ? 16 : 64;
    p.char_count = static_cast<int>(to_u64(cc < cap ? cc : cap));

    p.batch_k = std::max(3, static_cast<int>(std::ceil(4.0 / 3.0 * lln)));
    p.deepening_levels = 8;
    {
        long double region = 1.5L * static_cast<long double>(p.A) * static_cast<long double>(p.A);
        p.budget_per_level = static_cast<std::int64_t>(
            std::min<long double>(region < 200000.0L ? 200000.0L : region, 4.0e15L));
    }

    // Pass 2: direct quantity overrides.
    for (const auto& [k, v] : overrides) {
        if (k == "d") p.d = std::stoi(v);
        else if (k == "B") p.B = std::stoull(v);
        else if (k == "B_prime") p.B_prime = std::stoull(v);
        else if (k == "A") p.A = std::stoull(v);
        else if (k == "H") p.H = from_dec(v);
        else if (k == "char_count") p.char_count = std::stoi(v);
        else if (k == "deepening_levels") p.deepening_levels = std::stoi(v);
        else if (k == "budget_per_level") p.budget_per_level = std::stoll(v);
        else if (k == "batch_k") p.batch_k = std::stoi(v);
    }

    p.validate();
    return p;
}

}  // namespace rnfs
