#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "embgc/koszul.hpp"
#include "embgc/monomial.hpp"
#include "embgc/sparse.hpp"

namespace embgc {

// A graph with full and dotted edges on vertices 1..k, the canonical labeled
// representative of an unlabeled basis element. Removing dotted edges leaves a
// forest whose components all have at least two vertices; removing full edges
// leaves a forest. Complexity t = #full edges, Hodge degree s = #dotted
// components. Orientation set: [full edges (degree n-1)][dotted edges (degree
// m-1)][vertices (degree -m)], edges listed in stored order, directed lo->hi.
struct BicolorGraph {
    int k = 0;
    Monomial full;
    Monomial dotted;

    friend auto operator<=>(const BicolorGraph&, const BicolorGraph&) = default;
};

inline std::string encode(const BicolorGraph& g) {
    std::ostringstream os;
    os << "F:";
    for (std::size_t i = 0; i < g.full.size(); ++i) {
        if (i) os << ',';
        os << g.full[i].first << '-' << g.full[i].second;
    }
    os << "|D:";
    for (std::size_t i = 0; i < g.dotted.size(); ++i) {
        if (i) os << ',';
        os << g.dotted[i].first << '-' << g.dotted[i].second;
    }
    return os.str();
}

inline BicolorGraph decode_bicolor(const std::string& text) {
    auto bar = text.find('|');
    if (text.rfind("F:", 0) != 0 || bar == std::string::npos || text.compare(bar + 1, 2, "D:") != 0)
        throw std::invalid_argument("decode_bicolor: malformed '" + text + "'");
    auto parse_list = [](const std::string& part) {
        Monomial m;
        if (part.empty()) return m;
        std::istringstream ls(part);
        std::string item;
        while (std::getline(ls, item, ',')) {
            auto dash = item.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 >= item.size())
                throw std::invalid_argument("decode_bicolor: bad edge '" + item + "'");
            m.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
        }
        return m;
    };
    BicolorGraph g;
    g.full = parse_list(text.substr(2, bar - 2));
    g.dotted = parse_list(text.substr(bar + 3));
    // every vertex is met by a full edge, so k is the largest full endpoint
    for (auto& [a, b] : g.full) g.k = std::max({g.k, a, b});
    for (auto& [a, b] : g.dotted)
        if (a < 1 || b < 1 || a > g.k || b > g.k)
            throw std::invalid_argument("decode_bicolor: dotted endpoint out of range");
    return g;
}

namespace hh_detail {

inline bool is_forest(const Monomial& edges, int k) {
    std::vector<int> par(k + 1);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    for (auto [a, b] : edges) {
        if (a == b) return false;
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        par[ra] = rb;
    }
    return true;
}

inline int component_count(const Monomial& edges, int k) {
    std::vector<int> par(k + 1);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    int comps = k;
    for (auto [a, b] : edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            par[ra] = rb;
            --comps;
        }
    }
    return comps;
}

inline bool union_connected(const Monomial& full, const Monomial& dotted, int k) {
    Monomial all = full;
    all.insert(all.end(), dotted.begin(), dotted.end());
    return component_count(all, k) == 1;
}

// normalizes one color list to sorted (lo,hi) form, accumulating the sign
inline bool normalize_color(Monomial& edges, int dimpar, int& sign) {
    for (auto& [a, b] : edges) {
        if (a == b) return false;
        if (a > b) {
            std::swap(a, b);
            if (dimpar & 1) sign = -sign;
        }
    }
    long swaps = 0;
    for (std::size_t i = 1; i < edges.size(); ++i)
        for (std::size_t j = i; j > 0 && edges[j] < edges[j - 1]; --j) {
            std::swap(edges[j], edges[j - 1]);
            ++swaps;
        }
    if (((dimpar + 1) & 1) && (swaps & 1)) sign = -sign;  // generator degree dim-1
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i] == edges[i + 1]) return false;
    return true;
}

}  // namespace hh_detail

// Canonical representative over all vertex relabelings, with sign; sign 0 when
// an automorphism reverses the orientation. Vertex transpositions contribute
// (-1)^m, full edge reversal (-1)^n, dotted edge reversal (-1)^m.
inline std::pair<BicolorGraph, int> canonicalize_bicolor(const BicolorGraph& g, int mpar, int npar) {
    const int k = g.k;
    std::vector<int> sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);  // sigma[v-1]+1 is the new label of v
    std::map<std::pair<Monomial, Monomial>, int> seen;
    bool have_best = false;
    BicolorGraph best;
    int best_sign = 0;
    do {
        int sign = mpar ? permutation_sign(sigma) : 1;
        Monomial nf(g.full.size()), nd(g.dotted.size());
        for (std::size_t i = 0; i < g.full.size(); ++i)
            nf[i] = {sigma[g.full[i].first - 1] + 1, sigma[g.full[i].second - 1] + 1};
        for (std::size_t i = 0; i < g.dotted.size(); ++i)
            nd[i] = {sigma[g.dotted[i].first - 1] + 1, sigma[g.dotted[i].second - 1] + 1};
        if (!hh_detail::normalize_color(nf, npar, sign)) continue;
        if (!hh_detail::normalize_color(nd, mpar, sign)) continue;
        auto key = std::make_pair(nf, nd);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second != sign) return {BicolorGraph{}, 0};
        } else {
            seen.emplace(key, sign);
        }
        BicolorGraph cand{k, std::move(nf), std::move(nd)};
        if (!have_best || cand < best) {
            best = std::move(cand);
            best_sign = sign;
            have_best = true;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return {best, best_sign};
}

// All canonical nonzero bicolored graphs with t full edges, s dotted
// components and k vertices (connected ones only, for the subcomplex of
// primitives, unless connected = false).
inline std::vector<BicolorGraph> enumerate_hh_symbols(int mpar, int npar, int s, int t, int k,
                                                      bool connected = true) {
    std::vector<BicolorGraph> out;
    if (k < std::max(s, t + 1) || k > 2 * t || k - s < 0) return out;
    Monomial pairs;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) pairs.emplace_back(i, j);

    std::vector<Monomial> fulls, dotteds;
    Monomial cur;
    auto rec = [&](auto&& self, int next, int left, std::vector<Monomial>& sink) -> void {
        if (left == 0) {
            sink.push_back(cur);
            return;
        }
        for (int p = next; p <= (int)pairs.size() - left; ++p) {
            cur.push_back(pairs[p]);
            if (hh_detail::is_forest(cur, k))
                self(self, p + 1, left - 1, sink);
            cur.pop_back();
        }
    };
    rec(rec, 0, t, fulls);
    std::erase_if(fulls, [&](const Monomial& f) {
        std::vector<char> covered(k + 1, 0);
        for (auto [a, b] : f) covered[a] = covered[b] = 1;
        for (int v = 1; v <= k; ++v)
            if (!covered[v]) return true;
        return false;
    });
    rec(rec, 0, k - s, dotteds);

    std::set<BicolorGraph> seen;
    for (const auto& f : fulls)
        for (const auto& d : dotteds) {
            if (connected && !hh_detail::union_connected(f, d, k)) continue;
            auto [canon, sign] = canonicalize_bicolor(BicolorGraph{k, f, d}, mpar, npar);
            if (sign == 0) continue;
            if (seen.insert(canon).second) out.push_back(canon);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// One bigraded summand of the bicolored complex. Data per vertex count k:
// symbols, the chosen independent basis, and every symbol's expansion in that
// basis. The contraction differential maps level k to level k-1 and raises
// the (cohomological) degree t(n-1) - s(m-1) - k by one.
struct HHSlice {
    int mpar = 0, npar = 0;
    int s = 0, t = 0;
    bool connected = true;

    struct Level {
        std::vector<BicolorGraph> symbols;
        std::vector<int> basis;                           // indices of independent symbols
        std::vector<std::map<int, Rational>> expansion;   // symbol -> combo over basis positions
    };
    std::map<int, Level> levels;
    std::map<int, SparseMatrix> diff;  // k -> matrix C_k -> C_{k-1}

    int degree_of_level(int k, int m, int n) const { return t * (n - 1) - s * (m - 1) - k; }

    int dim(int k) const {
        auto it = levels.find(k);
        return it == levels.end() ? 0 : static_cast<int>(it->second.basis.size());
    }
};

namespace hh_detail {

// symmetrized vector of a labeled bicolored graph in admissible-pair
// coordinates; the coordinate interning map is shared per level
struct PairIntern {
    std::map<std::pair<Monomial, Monomial>, int> ids;
    int intern(const Monomial& f, const Monomial& d) {
        return ids.emplace(std::make_pair(f, d), static_cast<int>(ids.size())).first->second;
    }
};

inline std::map<int, Rational> symmetrized_vector(const BicolorGraph& g, int mpar, int npar,
                                                  PairIntern& intern) {
    std::map<int, Rational> out;
    std::vector<int> sigma(g.k);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        int sign = mpar ? permutation_sign(sigma) : 1;
        Monomial nf(g.full.size()), nd(g.dotted.size());
        for (std::size_t i = 0; i < g.full.size(); ++i)
            nf[i] = {sigma[g.full[i].first - 1] + 1, sigma[g.full[i].second - 1] + 1};
        for (std::size_t i = 0; i < g.dotted.size(); ++i)
            nd[i] = {sigma[g.dotted[i].first - 1] + 1, sigma[g.dotted[i].second - 1] + 1};
        auto sf = straighten(nf, npar);
        if (sf.empty()) continue;
        auto sd = straighten(nd, mpar);
        for (const auto& [fm, fc] : sf)
            for (const auto& [dm, dc] : sd) {
                int id = intern.intern(fm, dm);
                auto it = out.find(id);
                Rational add = fc * dc * sign;
                if (it == out.end())
                    out.emplace(id, std::move(add));
                else {
                    it->second += add;
                    if (it->second == 0) out.erase(it);
                }
            }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

// contraction of one dotted edge: returns the labeled result and its sign, or
// sign 0 when a color condition fails
struct Contraction {
    BicolorGraph graph;
    int sign = 0;
};

inline Contraction contract_dotted(const BicolorGraph& g, std::size_t ei, int mpar, int npar) {
    const auto [a, b] = g.dotted[ei];
    const int t = static_cast<int>(g.full.size());
    const int D = static_cast<int>(g.dotted.size());
    int sign = 1;
    // pull the contracted edge to the front of the orientation set
    long moves1 = 0;
    if ((mpar + 1) & 1) {  // dotted edges have degree m-1
        if ((npar + 1) & 1) moves1 += t;
        moves1 += static_cast<long>(ei) * ((mpar + 1) & 1);
    }
    if (moves1 & 1) sign = -sign;
    // then pull the disappearing vertex b to the front
    if (mpar & 1) {
        long moves2 = 0;
        if ((npar + 1) & 1) moves2 += t;
        if ((mpar + 1) & 1) moves2 += D - 1;
        moves2 += static_cast<long>(b - 1) * (mpar & 1);
        if (moves2 & 1) sign = -sign;
    }
    auto remap = [&](int v) {
        if (v == b) v = a;
        return v > b ? v - 1 : v;
    };
    BicolorGraph h;
    h.k = g.k - 1;
    h.full.reserve(g.full.size());
    for (auto [x, y] : g.full) h.full.emplace_back(remap(x), remap(y));
    for (std::size_t j = 0; j < g.dotted.size(); ++j) {
        if (j == ei) continue;
        h.dotted.emplace_back(remap(g.dotted[j].first), remap(g.dotted[j].second));
    }
    if (!normalize_color(h.full, npar, sign)) return {};
    if (!normalize_color(h.dotted, mpar, sign)) return {};
    if (!is_forest(h.full, h.k) || !is_forest(h.dotted, h.k)) return {};
    return {std::move(h), sign};
}

}  // namespace hh_detail

inline HHSlice build_hh_slice(int mpar, int npar, int s, int t, bool connected = true) {
    if (s < 1 || t < 1) throw std::invalid_argument("build_hh_slice: need s,t >= 1");
    HHSlice slice;
    slice.mpar = mpar & 1;
    slice.npar = npar & 1;
    slice.s = s;
    slice.t = t;
    slice.connected = connected;

    for (int k = std::max(s, t + 1); k <= 2 * t; ++k) {
        HHSlice::Level level;
        level.symbols = enumerate_hh_symbols(slice.mpar, slice.npar, s, t, k, connected);
        hh_detail::PairIntern intern;
        // independent subset by incremental elimination of symmetrized vectors,
        // tracking every symbol's expression over the chosen basis
        struct EchelonRow {
            int pivot;
            Rational pivval;
            std::map<int, Rational> vec;
            std::map<int, Rational> expr;  // over basis positions
        };
        std::vector<EchelonRow> rows;
        for (int si = 0; si < static_cast<int>(level.symbols.size()); ++si) {
            auto v = hh_detail::symmetrized_vector(level.symbols[si], slice.mpar, slice.npar, intern);
            std::map<int, Rational> expr;
            for (const auto& row : rows) {
                auto it = v.find(row.pivot);
                if (it == v.end()) continue;
                Rational f = it->second / row.pivval;
                for (const auto& [c, val] : row.vec) {
                    auto vi = v.find(c);
                    if (vi == v.end())
                        v.emplace(c, -f * val);
                    else {
                        vi->second -= f * val;
                        if (vi->second == 0) v.erase(vi);
                    }
                }
                for (const auto& [bpos, val] : row.expr) {
                    expr[bpos] += f * val;
                    if (expr[bpos] == 0) expr.erase(bpos);
                }
            }
            // here v = w(symbol) - sum_b expr[b] * w(basis_b)
            if (v.empty()) {
                level.expansion.push_back(std::move(expr));  // dependent symbol
            } else {
                int bpos = static_cast<int>(level.basis.size());
                level.basis.push_back(si);
                EchelonRow row;
                row.pivot = v.begin()->first;
                row.pivval = v.begin()->second;
                row.vec = std::move(v);
                for (auto& [b, val] : expr) row.expr.emplace(b, -val);
                row.expr[bpos] += 1;
                level.expansion.push_back({{bpos, Rational(1)}});
                rows.push_back(std::move(row));
            }
        }
        slice.levels.emplace(k, std::move(level));
    }

    // contraction differential
    for (auto it = slice.levels.begin(); it != slice.levels.end(); ++it) {
        int k = it->first;
        auto prev = slice.levels.find(k - 1);
        const auto& level = it->second;
        int nrows = prev == slice.levels.end() ? 0 : static_cast<int>(prev->second.basis.size());
        std::map<std::string, int> prev_index;
        if (prev != slice.levels.end())
            for (int si = 0; si < static_cast<int>(prev->second.symbols.size()); ++si)
                prev_index[encode(prev->second.symbols[si])] = si;
        std::vector<SparseMatrix::Entry> entries;
        for (int bi = 0; bi < static_cast<int>(level.basis.size()); ++bi) {
            const BicolorGraph& g = level.symbols[level.basis[bi]];
            for (std::size_t ei = 0; ei < g.dotted.size(); ++ei) {
                auto c = hh_detail::contract_dotted(g, ei, slice.mpar, slice.npar);
                if (c.sign == 0) continue;
                auto [canon, csign] = canonicalize_bicolor(c.graph, slice.mpar, slice.npar);
                if (csign == 0) continue;
                auto pit = prev_index.find(encode(canon));
                if (pit == prev_index.end())
                    throw std::logic_error("build_hh_slice: contraction left the symbol set");
                for (const auto& [bpos, val] : prev->second.expansion[pit->second])
                    entries.push_back({bpos, bi, val * (c.sign * csign)});
            }
        }
        slice.diff[k] = SparseMatrix::from_triplets(nrows, static_cast<int>(level.basis.size()),
                                                    std::move(entries));
    }
    return slice;
}

inline std::map<int, long long> homology_ranks_hh(const HHSlice& slice, int m, int n,
                                                  RankMethod method = RankMethod::Auto) {
    std::map<int, long long> out;
    std::map<int, int> rk;
    for (const auto& [k, mat] : slice.diff) rk[k] = rank(mat, method);
    for (const auto& [k, level] : slice.levels) {
        long long h = static_cast<long long>(level.basis.size());
        if (auto it = rk.find(k); it != rk.end()) h -= it->second;
        if (auto it = rk.find(k + 1); it != rk.end()) h -= it->second;
        if (h < 0) throw std::logic_error("homology_ranks_hh: negative rank");
        if (h > 0) out[slice.degree_of_level(k, m, n)] += h;
    }
    return out;
}

// Euler characteristic in the grading t(n-1) - s(m-1) - k; must coincide with
// the expansion complex's value on every (s,t).
inline long long euler_hh(const HHSlice& slice) {
    long long chi = 0;
    for (const auto& [k, level] : slice.levels) {
        int dpar = (slice.t * ((slice.npar + 1) & 1) + slice.s * ((slice.mpar + 1) & 1) + k) & 1;
        chi += dpar ? -static_cast<long long>(level.basis.size())
                    : static_cast<long long>(level.basis.size());
    }
    return chi;
}

}  // namespace embgc
