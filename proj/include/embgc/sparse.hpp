#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "embgc/rational.hpp"

namespace embgc {

// Sparse matrix over Q in triplet form. Entries are kept sorted by (row, col),
// free of duplicates and explicit zeros.
struct SparseMatrix {
    struct Entry {
        int row = 0;
        int col = 0;
        Rational value;
    };

    int rows = 0;
    int cols = 0;
    std::vector<Entry> entries;

    static SparseMatrix from_triplets(int rows, int cols, std::vector<Entry> raw) {
        SparseMatrix m;
        m.rows = rows;
        m.cols = cols;
        std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        for (auto& e : raw) {
            if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
                throw std::out_of_range("sparse: entry index out of range");
            if (!m.entries.empty() && m.entries.back().row == e.row && m.entries.back().col == e.col)
                m.entries.back().value += e.value;
            else
                m.entries.push_back(std::move(e));
        }
        std::erase_if(m.entries, [](const Entry& e) { return e.value == 0; });
        return m;
    }

    SparseMatrix transposed() const {
        std::vector<Entry> t;
        t.reserve(entries.size());
        for (const auto& e : entries) t.push_back({e.col, e.row, e.value});
        return from_triplets(cols, rows, std::move(t));
    }

    std::size_t nnz() const { return entries.size(); }
};

// Plain-text triplet serialization: header "rows cols nnz", then one
// "row col num/den" per line.
inline void write_triplets(std::ostream& os, const SparseMatrix& m) {
    os << m.rows << ' ' << m.cols << ' ' << m.nnz() << '\n';
    for (const auto& e : m.entries)
        os << e.row << ' ' << e.col << ' ' << to_string(e.value) << '\n';
}

inline SparseMatrix read_triplets(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("triplets: missing header");
    std::istringstream hdr(line);
    long rows = -1, cols = -1, nnz = -1;
    if (!(hdr >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0)
        throw std::runtime_error("triplets: bad header '" + line + "'");
    std::vector<SparseMatrix::Entry> es;
    es.reserve(static_cast<std::size_t>(nnz));
    for (long i = 0; i < nnz; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("triplets: truncated entry list");
        std::istringstream ls(line);
        long r, c;
        std::string val;
        if (!(ls >> r >> c >> val)) throw std::runtime_error("triplets: bad entry '" + line + "'");
        es.push_back({static_cast<int>(r), static_cast<int>(c), parse_rational(val)});
    }
    return SparseMatrix::from_triplets(static_cast<int>(rows), static_cast<int>(cols), std::move(es));
}

namespace detail {

// --- modular arithmetic over word-size primes ---

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // deterministic Miller-Rabin bases for 64-bit inputs
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> rank_primes(int count) {
    std::vector<std::uint64_t> ps;
    std::uint64_t candidate = (1ull << 62) - 1;
    while (static_cast<int>(ps.size()) < count) {
        if (is_prime_u64(candidate)) ps.push_back(candidate);
        candidate -= 2;
    }
    return ps;
}

inline std::uint64_t mod_of(const Integer& z, std::uint64_t p) {
    Integer r = z % Integer(static_cast<unsigned long>(p));
    long v = r.get_si();
    if (v < 0) v += static_cast<long>(p);
    return static_cast<std::uint64_t>(v);
}

// Rank over Z/p by incremental row reduction against a growing echelon basis.
inline int rank_mod_p(const SparseMatrix& m, std::uint64_t p) {
    // rows as dense vectors over the smaller dimension
    const bool flip = m.rows < m.cols;  // reduce along the shorter side
    const int dim = flip ? m.rows : m.cols;
    const int nvec = flip ? m.cols : m.rows;
    std::vector<std::vector<std::uint64_t>> vecs(nvec);
    for (const auto& e : m.entries) {
        Integer num(e.value.get_num());
        Integer den(e.value.get_den());
        std::uint64_t v = mulmod_u64(mod_of(num, p), powmod_u64(mod_of(den, p), p - 2, p), p);
        int vi = flip ? e.col : e.row;
        int ci = flip ? e.row : e.col;
        if (vecs[vi].empty()) vecs[vi].assign(dim, 0);
        vecs[vi][ci] = v;
    }
    std::vector<std::vector<std::uint64_t>> basis;     // echelon rows, pivot normalized to 1
    std::vector<int> pivot_col;
    int rank = 0;
    for (auto& v : vecs) {
        if (v.empty()) continue;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            std::uint64_t f = v[pivot_col[b]];
            if (!f) continue;
            const auto& row = basis[b];
            for (int j = pivot_col[b]; j < dim; ++j) {
                if (row[j]) {
                    std::uint64_t sub = mulmod_u64(f, row[j], p);
                    v[j] = v[j] >= sub ? v[j] - sub : v[j] + p - sub;
                }
            }
        }
        int pc = -1;
        for (int j = 0; j < dim; ++j)
            if (v[j]) {
                pc = j;
                break;
            }
        if (pc < 0) continue;
        std::uint64_t inv = powmod_u64(v[pc], p - 2, p);
        for (int j = pc; j < dim; ++j)
            if (v[j]) v[j] = mulmod_u64(v[j], inv, p);
        basis.push_back(std::move(v));
        pivot_col.push_back(pc);
        v.clear();
        ++rank;
        if (rank == dim) break;
    }
    return rank;
}

// Exact fraction-free sparse elimination with Markowitz pivot selection.
// Rows are cleared to integers, cross-multiplication updates keep everything
// integral, and each updated row is divided by its content.
inline int rank_exact(const SparseMatrix& m) {
    using Row = std::vector<std::pair<int, Integer>>;  // sorted by column
    std::vector<Row> rows;
    rows.reserve(m.rows);
    {
        std::size_t i = 0;
        while (i < m.entries.size()) {
            std::size_t j = i;
            Integer den_lcm = 1;
            while (j < m.entries.size() && m.entries[j].row == m.entries[i].row) {
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), m.entries[j].value.get_den().get_mpz_t());
                ++j;
            }
            Row r;
            r.reserve(j - i);
            for (std::size_t k = i; k < j; ++k) {
                const Rational& q = m.entries[k].value;
                Integer v = q.get_num() * (den_lcm / q.get_den());
                r.emplace_back(m.entries[k].col, std::move(v));
            }
            rows.push_back(std::move(r));
            i = j;
        }
    }

    std::vector<int> col_count(m.cols, 0);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) ++col_count[c];

    int rank = 0;
    std::vector<char> row_done(rows.size(), 0);
    while (true) {
        // Markowitz: minimize (row_nnz - 1) * (col_nnz - 1); break ties by size of entry
        long best_score = -1;
        std::size_t best_row = 0;
        int best_col = -1;
        std::size_t best_bits = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (row_done[i] || rows[i].empty()) continue;
            long rn = static_cast<long>(rows[i].size()) - 1;
            for (const auto& [c, v] : rows[i]) {
                long score = rn * (col_count[c] - 1);
                std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
                if (best_score < 0 || score < best_score ||
                    (score == best_score && bits < best_bits)) {
                    best_score = score;
                    best_row = i;
                    best_col = c;
                    best_bits = bits;
                }
            }
        }
        if (best_score < 0) break;
        ++rank;
        row_done[best_row] = 1;
        const Row& prow = rows[best_row];
        for (const auto& [c, v] : prow) --col_count[c];
        Integer pval;
        for (const auto& [c, v] : prow)
            if (c == best_col) pval = v;

        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (row_done[i] || rows[i].empty()) continue;
            const Integer* hit = nullptr;
            for (const auto& [c, v] : rows[i])
                if (c == best_col) {
                    hit = &v;
                    break;
                }
            if (!hit) continue;
            Integer f = *hit;
            Row merged;
            merged.reserve(rows[i].size() + prow.size());
            std::size_t a = 0, b = 0;
            Integer content = 0;
            while (a < rows[i].size() || b < prow.size()) {
                int ca = a < rows[i].size() ? rows[i][a].first : m.cols;
                int cb = b < prow.size() ? prow[b].first : m.cols;
                int c = std::min(ca, cb);
                Integer nv = 0;
                if (ca == c) nv = pval * rows[i][a++].second;
                if (cb == c) nv -= f * prow[b++].second;
                if (c == best_col) continue;  // eliminated column
                if (nv != 0) {
                    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), nv.get_mpz_t());
                    merged.emplace_back(c, std::move(nv));
                }
            }
            if (content > 1)
                for (auto& [c, v] : merged) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
            for (const auto& [c, v] : rows[i]) --col_count[c];
            for (const auto& [c, v] : merged) ++col_count[c];
            rows[i] = std::move(merged);
        }
    }
    return rank;
}

}  // namespace detail

enum class RankMethod {
    Auto,     // modular consensus for large matrices, exact otherwise
    Exact,    // fraction-free elimination, authoritative
    Modular,  // several large primes; falls back to exact on disagreement
};

// Rank over Q. The exact path is authoritative; the modular path is accepted
// only when all primes agree, and disagreement falls back to the exact path.
inline int rank(const SparseMatrix& m, RankMethod method = RankMethod::Auto) {
    if (m.entries.empty()) return 0;
    if (method == RankMethod::Auto)
        method = (m.rows > 400 && m.cols > 400) ? RankMethod::Modular : RankMethod::Exact;
    if (method == RankMethod::Modular) {
        static const std::vector<std::uint64_t> primes = detail::rank_primes(3);
        int r0 = detail::rank_mod_p(m, primes[0]);
        bool agree = true;
        for (std::size_t i = 1; i < primes.size(); ++i)
            if (detail::rank_mod_p(m, primes[i]) != r0) {
                agree = false;
                break;
            }
        if (agree) return r0;
        method = RankMethod::Exact;
    }
    return detail::rank_exact(m);
}

inline int kernel_dim(const SparseMatrix& m, RankMethod method = RankMethod::Auto) {
    return m.cols - rank(m, method);
}

// Sparse product (for d∘d checks).
inline SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("multiply: shape mismatch");
    std::map<std::pair<int, int>, Rational> acc;
    std::vector<std::vector<std::pair<int, const Rational*>>> b_rows(b.rows);
    for (const auto& e : b.entries) b_rows[e.row].emplace_back(e.col, &e.value);
    for (const auto& ea : a.entries)
        for (const auto& [cb, vb] : b_rows[ea.col]) acc[{ea.row, cb}] += ea.value * *vb;
    std::vector<SparseMatrix::Entry> es;
    for (auto& [rc, v] : acc)
        if (v != 0) es.push_back({rc.first, rc.second, std::move(v)});
    return SparseMatrix::from_triplets(a.rows, b.cols, std::move(es));
}

}  // namespace embgc
