// Sparse GF(2) matrix assembly from relations and kernel extraction.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rnfs/characters.hpp"
#include "rnfs/relations.hpp"
#include "rnfs/rng.hpp"

namespace rnfs {

// Column legend: [rational sign, algebraic sign, rational primes <= B,
// (r,s) pairs, character bits, all-ones parity column].
struct ColumnLegend {
    enum class Kind : std::uint8_t {
        RationalSign,
        AlgebraicSign,
        RationalPrime,
        AlgebraicPair,
        Character,
        Parity
    };
    struct Column {
        Kind kind;
        std::uint64_t r = 0;  // prime for RationalPrime/AlgebraicPair, index for Character
        std::uint64_t s = 0;  // root for AlgebraicPair
    };
    std::vector<Column> columns;
};

struct SparseMatrixGF2 {
    std::uint32_t n_rows = 0;
    std::uint32_t n_cols = 0;
    std::vector<std::vector<std::uint32_t>> rows;  // sorted column indices per row
    ColumnLegend legend;                           // empty for raw matrices
};

SparseMatrixGF2 make_matrix(std::uint32_t n_rows, std::uint32_t n_cols,
                            std::vector<std::vector<std::uint32_t>> rows);

// Row i encodes ord_p(a - mb) mod 2, the sign of a - mb, e_(r,s) mod 2, the
// sign of f(a,b), character bits (-1 -> 1, +1 -> 0), and the parity 1.
SparseMatrixGF2 assemble_matrix(const std::vector<Relation>& relations, const FactorBase& fb,
                                const std::vector<CharacterSpec>& chars);

SparseMatrixGF2 transpose(const SparseMatrixGF2& m);

// Rank over GF(2).
std::uint32_t rank(const SparseMatrixGF2& m);

// Basis of {v : Mv = 0}; each basis vector packed into 64-bit words.
struct KernelBasis {
    std::uint32_t n = 0;  // vector length (= n_cols)
    std::vector<std::vector<std::uint64_t>> basis;

    std::uint32_t dim() const { return static_cast<std::uint32_t>(basis.size()); }
};

KernelBasis kernel_basis(const SparseMatrixGF2& m);

// Uniform random nonzero kernel vector (basis + random nonzero combination),
// or nullopt when the kernel is trivial.
std::optional<std::vector<std::uint8_t>> kernel_vector(const SparseMatrixGF2& m, Rng& rng);

// Plain Wiedemann alternative for larger sparse systems (flag-selected; the
// result is verified and resampled, not uniform).
std::optional<std::vector<std::uint8_t>> kernel_vector_wiedemann(const SparseMatrixGF2& m,
                                                                 Rng& rng);

bool matrix_times_vector_is_zero(const SparseMatrixGF2& m, const std::vector<std::uint8_t>& v);

// Coordinate text dump: header "rows cols", then one "row col" pair per line.
void dump_matrix(const SparseMatrixGF2& m, std::ostream& os);

}  // namespace rnfs
