// End-to-end orchestration: the randomized NFS driver, the Dixon baseline,
// congruence verification, and machine-readable factor reports.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rnfs/int.hpp"
#include "rnfs/params.hpp"

namespace rnfs {

enum class FactorStatus { Factored, Prime, PerfectPower, Exhausted };

const char* status_name(FactorStatus s);

struct Counters {
    std::uint64_t pairs_tested = 0;
    std::uint64_t relations = 0;
    std::uint64_t contexts = 0;
    std::uint64_t dead_contexts = 0;
    std::uint64_t aborted_contexts = 0;
    std::uint64_t kernel_draws = 0;
    std::uint64_t not_a_square = 0;
    std::uint64_t sqrt_verifications = 0;
    std::uint64_t matrix_rows = 0;
    std::uint64_t matrix_cols = 0;
    std::uint64_t outer_attempts = 0;
    std::uint64_t peeled_factors = 0;
};

struct FactorReport {
    Int n = 0;
    FactorStatus status = FactorStatus::Exhausted;
    std::vector<Int> factors;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::int64_t congruences_tried = 0;
    std::int64_t fruitful_count = 0;
    Counters counters;
    std::map<std::string, std::string> params_used;
    double elapsed_seconds = 0;  // excluded from JSON unless asked

    bool factors_verified() const;
};

// Verified congruence x^2 = y^2 (mod n) out of one kernel draw.
struct CongruenceOfSquares {
    Int n, x, y;
    std::vector<std::uint32_t> subset;  // relation indices
    bool fruitful = false;
};

struct VerifyResult {
    bool valid;
    bool fruitful;
};

// Exact check of x^2 = y^2 (mod n); fruitful iff x != +-y (mod n).
VerifyResult verify_congruence(const Int& x, const Int& y, const Int& n);

struct PipelineConfig {
    std::map<std::string, std::string> overrides;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string algo = "auto";  // auto | nfs | dixon
    std::string relations_out;
    std::string relations_in;
    std::optional<std::uint64_t> dixon_B;
};

// Full tool flow: screening, algorithm selection, factorization.
FactorReport factor_number(const Int& n, const PipelineConfig& config);

// The spec-level operations (screening included).
FactorReport random_nfs_factor(const Int& n, const NfsParams& params, std::uint64_t seed,
                               int workers = 1, const std::string& relations_out = {},
                               const std::string& relations_in = {});
FactorReport dixon_factor(const Int& n, std::uint64_t B, std::uint64_t seed);

// Keep drawing uniform kernel congruences until `want` of them have been
// produced (for fruitfulness statistics); the run does not stop at the first
// factor.
std::vector<CongruenceOfSquares> nfs_congruence_survey(const Int& n, const NfsParams& params,
                                                       std::uint64_t seed, int want,
                                                       FactorReport* report = nullptr);

// Deterministic JSON rendering (keys sorted, big integers as decimal
// strings). Timing is included only on request so that fixed-seed reports
// are byte-identical.
std::string report_to_json(const FactorReport& report, bool include_timing = false);

}  // namespace rnfs
