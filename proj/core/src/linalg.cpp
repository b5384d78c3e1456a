#include "rnfs/linalg.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace rnfs {

SparseMatrixGF2 make_matrix(std::uint32_t n_rows, std::uint32_t n_cols,
                            std::vector<std::vector<std::uint32_t>> rows) {
    if (rows.size() != n_rows) throw std::invalid_argument("make_matrix: row count mismatch");
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        if (!r.empty() && r.back() >= n_cols)
            throw std::invalid_argument("make_matrix: column index out of range");
    }
    SparseMatrixGF2 m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    m.rows = std::move(rows);
    return m;
}

SparseMatrixGF2 assemble_matrix(const std::vector<Relation>& relations, const FactorBase& fb,
                                const std::vector<CharacterSpec>& chars) {
    if (relations.empty()) throw std::domain_error("assemble_matrix: empty relation list");

    SparseMatrixGF2 m;
    auto& legend = m.legend;
    legend.columns.push_back({ColumnLegend::Kind::RationalSign});
    legend.columns.push_back({ColumnLegend::Kind::AlgebraicSign});
    std::map<std::uint64_t, std::uint32_t> prime_col;
    for (std::uint32_t p : fb.rational_primes) {
        prime_col[p] = static_cast<std::uint32_t>(legend.columns.size());
        legend.columns.push_back({ColumnLegend::Kind::RationalPrime, p});
    }
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t> pair_col;
    for (const auto& entry : fb.algebraic)
        for (std::uint32_t s : entry.roots) {
            pair_col[{entry.r, s}] = static_cast<std::uint32_t>(legend.columns.size());
            legend.columns.push_back({ColumnLegend::Kind::AlgebraicPair, entry.r, s});
        }
    std::uint32_t char_base = static_cast<std::uint32_t>(legend.columns.size());
    for (std::size_t i = 0; i < chars.size(); ++i)
        legend.columns.push_back({ColumnLegend::Kind::Character, i});
    std::uint32_t parity_col = static_cast<std::uint32_t>(legend.columns.size());
    legend.columns.push_back({ColumnLegend::Kind::Parity});

    m.n_rows = static_cast<std::uint32_t>(relations.size());
    m.n_cols = static_cast<std::uint32_t>(legend.columns.size());
    m.rows.reserve(relations.size());
    for (const auto& rel : relations) {
        std::vector<std::uint32_t> row;
        if (rel.rational.sign < 0) row.push_back(0);
        if (sgn(rel.fab) < 0) row.push_back(1);
        for (auto [p, e] : rel.rational.factors) {
            if (e % 2 == 0) continue;
            auto it = prime_col.find(p);
            if (it == prime_col.end())
                throw std::invalid_argument("assemble_matrix: relation references unknown prime");
            row.push_back(it->second);
        }
        for (const auto& af : rel.algebraic) {
            if (af.e % 2 == 0) continue;
            auto it = pair_col.find({af.r, af.s});
            if (it == pair_col.end())
                throw std::invalid_argument("assemble_matrix: relation references unknown (r,s)");
            row.push_back(it->second);
        }
        if (rel.char_bits.size() != chars.size())
            throw std::invalid_argument("assemble_matrix: character bit count mismatch");
        for (std::size_t i = 0; i < rel.char_bits.size(); ++i)
            if (rel.char_bits[i] < 0) row.push_back(char_base + static_cast<std::uint32_t>(i));
        row.push_back(parity_col);
        std::sort(row.begin(), row.end());
        m.rows.push_back(std::move(row));
    }
    return m;
}

SparseMatrixGF2 transpose(const SparseMatrixGF2& m) {
    SparseMatrixGF2 t;
    t.n_rows = m.n_cols;
    t.n_cols = m.n_rows;
    t.rows.assign(m.n_cols, {});
    for (std::uint32_t i = 0; i < m.n_rows; ++i)
        for (std::uint32_t j : m.rows[i]) t.rows[j].push_back(i);
    return t;
}

// ---------------------------------------------------------------------------
// Dense packed elimination.
// ---------------------------------------------------------------------------

namespace {

struct Packed {
    std::uint32_t rows, cols, words;
    std::vector<std::uint64_t> bits;

    Packed(const SparseMatrixGF2& m)
        : rows(m.n_rows), cols(m.n_cols), words((m.n_cols + 63) / 64), bits() {
        bits.assign(static_cast<std::size_t>(rows) * words, 0);
        for (std::uint32_t i = 0; i < rows; ++i)
            for (std::uint32_t j : m.rows[i]) row(i)[j / 64] ^= 1ULL << (j % 64);
    }

    std::uint64_t* row(std::uint32_t i) { return bits.data() + static_cast<std::size_t>(i) * words; }
    const std::uint64_t* row(std::uint32_t i) const {
        return bits.data() + static_cast<std::size_t>(i) * words;
    }
    bool get(std::uint32_t i, std::uint32_t j) const { return (row(i)[j / 64] >> (j % 64)) & 1; }
    void xor_rows(std::uint32_t dst, std::uint32_t src) {
        auto* d = row(dst);
        const auto* s = row(src);
        for (std::uint32_t w = 0; w < words; ++w) d[w] ^= s[w];
    }
};

}  // namespace

std::uint32_t rank(const SparseMatrixGF2& m) {
    Packed p(m);
    std::uint32_t r = 0;
    for (std::uint32_t col = 0; col < p.cols && r < p.rows; ++col) {
        std::uint32_t pivot = r;
        while (pivot < p.rows && !p.get(pivot, col)) ++pivot;
        if (pivot == p.rows) continue;
        std::swap_ranges(p.row(r), p.row(r) + p.words, p.row(pivot));
        for (std::uint32_t i = 0; i < p.rows; ++i)
            if (i != r && p.get(i, col)) p.xor_rows(i, r);
        ++r;
    }
    return r;
}

KernelBasis kernel_basis(const SparseMatrixGF2& m) {
    Packed p(m);
    std::uint32_t words = (m.n_cols + 63) / 64;
    std::vector<std::int32_t> pivot_of_col(m.n_cols, -1);
    std::uint32_t r = 0;
    for (std::uint32_t col = 0; col < p.cols && r < p.rows; ++col) {
        std::uint32_t pivot = r;
        while (pivot < p.rows && !p.get(pivot, col)) ++pivot;
        if (pivot == p.rows) continue;
        std::swap_ranges(p.row(r), p.row(r) + p.words, p.row(pivot));
        for (std::uint32_t i = 0; i < p.rows; ++i)
            if (i != r && p.get(i, col)) p.xor_rows(i, r);
        pivot_of_col[col] = static_cast<std::int32_t>(r);
        ++r;
    }
    KernelBasis kb;
    kb.n = m.n_cols;
    for (std::uint32_t col = 0; col < m.n_cols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<std::uint64_t> v(words, 0);
        v[col / 64] |= 1ULL << (col % 64);
        for (std::uint32_t c2 = 0; c2 < m.n_cols; ++c2) {
            if (pivot_of_col[c2] < 0) continue;
            if (p.get(static_cast<std::uint32_t>(pivot_of_col[c2]), col))
                v[c2 / 64] |= 1ULL << (c2 % 64);
        }
        kb.basis.push_back(std::move(v));
    }
    return kb;
}

namespace {

std::vector<std::uint8_t> unpack(const std::vector<std::uint64_t>& words, std::uint32_t n) {
    std::vector<std::uint8_t> v(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) v[i] = (words[i / 64] >> (i % 64)) & 1;
    return v;
}

}  // namespace

bool matrix_times_vector_is_zero(const SparseMatrixGF2& m, const std::vector<std::uint8_t>& v) {
    if (v.size() != m.n_cols) throw std::invalid_argument("vector length mismatch");
    for (const auto& row : m.rows) {
        unsigned acc = 0;
        for (auto j : row) acc ^= v[j];
        if (acc & 1) return false;
    }
    return true;
}

std::optional<std::vector<std::uint8_t>> kernel_vector(const SparseMatrixGF2& m, Rng& rng) {
    KernelBasis kb = kernel_basis(m);
    if (kb.dim() == 0) return std::nullopt;  // NoKernel
    std::uint32_t words = (m.n_cols + 63) / 64;
    std::vector<std::uint64_t> acc(words, 0);
    for (;;) {
        bool any = false;
        std::fill(acc.begin(), acc.end(), 0);
        for (const auto& bvec : kb.basis) {
            if (rng.coin()) {
                any = true;
                for (std::uint32_t w = 0; w < words; ++w) acc[w] ^= bvec[w];
            }
        }
        if (any) break;
    }
    auto v = unpack(acc, m.n_cols);
    if (!matrix_times_vector_is_zero(m, v))
        throw std::logic_error("kernel_vector: Mv != 0 (solver bug)");
    return v;
}

std::optional<std::vector<std::uint8_t>> kernel_vector_wiedemann(const SparseMatrixGF2& m,
                                                                 Rng& rng) {
    const std::uint32_t n = m.n_cols;
    if (n == 0) return std::nullopt;
    // Square the system with random left-combinations: A = R M (n x n), then
    // find x with A x = 0 via the Berlekamp-Massey minimal polynomial of the
    // Krylov sequence and verify against M itself.
    auto apply_m = [&](const std::vector<std::uint8_t>& x) {
        std::vector<std::uint8_t> y(m.n_rows, 0);
        for (std::uint32_t i = 0; i < m.n_rows; ++i) {
            unsigned acc = 0;
            for (auto j : m.rows[i]) acc ^= x[j];
            y[i] = acc & 1;
        }
        return y;
    };
    for (int attempt = 0; attempt < 24; ++attempt) {
        // R: n random rows over the m.n_rows outputs, fixed per attempt.
        std::vector<std::vector<std::uint64_t>> R(n);
        std::uint32_t rwords = (m.n_rows + 63) / 64;
        for (auto& row : R) {
            row.resize(rwords);
            for (auto& w : row) w = rng.next();
        }
        auto apply_a = [&](const std::vector<std::uint8_t>& x) {
            auto y = apply_m(x);
            std::vector<std::uint64_t> ypack(rwords, 0);
            for (std::uint32_t i = 0; i < m.n_rows; ++i)
                if (y[i]) ypack[i / 64] ^= 1ULL << (i % 64);
            std::vector<std::uint8_t> z(n, 0);
            for (std::uint32_t i = 0; i < n; ++i) {
                std::uint64_t acc = 0;
                for (std::uint32_t w = 0; w < rwords; ++w) acc ^= R[i][w] & ypack[w];
                z[i] = static_cast<std::uint8_t>(__builtin_parityll(acc));
            }
            return z;
        };
        // Krylov sequence s_k = u^T A^k b.
        std::vector<std::uint8_t> b(n), u(n);
        for (auto& x : b) x = rng.coin();
        for (auto& x : u) x = rng.coin();
        std::vector<std::uint8_t> seq;
        std::vector<std::uint8_t> v = b;
        const std::uint32_t len = 2 * n + 2;
        for (std::uint32_t k = 0; k < len; ++k) {
            unsigned acc = 0;
            for (std::uint32_t i = 0; i < n; ++i) acc ^= (u[i] & v[i]);
            seq.push_back(acc & 1);
            v = apply_a(v);
        }
        // Berlekamp-Massey over GF(2).
        std::vector<std::uint8_t> C{1}, Bv{1};
        std::uint32_t L = 0, mshift = 1;
        for (std::uint32_t i = 0; i < seq.size(); ++i) {
            unsigned d = seq[i];
            for (std::uint32_t j = 1; j <= L && j < C.size(); ++j) d ^= C[j] & seq[i - j];
            if ((d & 1) == 0) {
                ++mshift;
            } else if (2 * L <= i) {
                auto T = C;
                if (C.size() < Bv.size() + mshift) C.resize(Bv.size() + mshift, 0);
                for (std::size_t j = 0; j < Bv.size(); ++j) C[j + mshift] ^= Bv[j];
                L = i + 1 - L;
                Bv = T;
                mshift = 1;
            } else {
                if (C.size() < Bv.size() + mshift) C.resize(Bv.size() + mshift, 0);
                for (std::size_t j = 0; j < Bv.size(); ++j) C[j + mshift] ^= Bv[j];
                ++mshift;
            }
        }
        // C(x) = sum c_j x^j with c_0 = 1 is the minimal polynomial reversed;
        // m_A(lambda) = x^L C(1/x). If m_A(0) = 0 we can extract a kernel
        // vector: with m_A = sum_{j>=k} a_j lambda^j, w = sum a_j A^(j-k) b.
        while (!C.empty() && C.back() == 0) C.pop_back();
        if (C.size() < 2) continue;
        std::vector<std::uint8_t> mA(C.rbegin(), C.rend());  // ascending in lambda
        std::uint32_t k = 0;
        while (k < mA.size() && mA[k] == 0) ++k;
        if (k == 0 || k >= mA.size()) continue;  // A nonsingular w.r.t. this sequence, or junk
        std::vector<std::uint8_t> w(n, 0), Ab = b;
        for (std::uint32_t j = k; j < mA.size(); ++j) {
            if (mA[j])
                for (std::uint32_t i = 0; i < n; ++i) w[i] ^= Ab[i];
            Ab = apply_a(Ab);
        }
        // descend: find the last nonzero in the chain w, Aw, A^2 w, ...
        for (std::uint32_t step = 0; step <= k; ++step) {
            bool nonzero = false;
            for (auto x : w) nonzero |= (x != 0);
            if (!nonzero) break;
            if (matrix_times_vector_is_zero(m, w)) return w;
            auto next = apply_a(w);
            bool next_zero = true;
            for (auto x : next) next_zero &= (x == 0);
            if (next_zero) {
                // w is in ker(A) but maybe not ker(M); give up on this attempt
                break;
            }
            w = std::move(next);
        }
    }
    return std::nullopt;
}

void dump_matrix(const SparseMatrixGF2& m, std::ostream& os) {
    os << m.n_rows << ' ' << m.n_cols << '\n';
    for (std::uint32_t i = 0; i < m.n_rows; ++i)
        for (std::uint32_t j : m.rows[i]) os << i << ' ' << j << '\n';
}

}  // namespace rnfs
