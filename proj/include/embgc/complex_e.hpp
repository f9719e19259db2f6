#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "embgc/graph.hpp"
#include "embgc/sparse.hpp"

namespace embgc {

// One bigraded summand of the connected uni->=3-valent graph complex for fixed
// parities of (m, n), Hodge degree s (external vertices) and complexity t.
// Graphs are stored by internal-vertex count I; a graph at level I sits in
// homological degree (n-1)t - ms - I, so the expansion differential I -> I+1
// lowers the degree by one. E = I + t edges throughout.
struct EpiSlice {
    int mpar = 0, npar = 0;
    int s = 0, t = 0;
    bool reduced = false;                       // drop loop-bearing graphs (n even, t >= 2)
    std::map<int, std::vector<OrientedGraph>> bases;  // level I -> canonical graphs
    std::map<int, SparseMatrix> diff;                 // level I -> matrix C_I -> C_{I+1}

    int degree_of_level(int I, int m, int n) const { return (n - 1) * t - m * s - I; }

    int dim(int I) const {
        auto it = bases.find(I);
        return it == bases.end() ? 0 : static_cast<int>(it->second.size());
    }
};

namespace detail {

// Connected multigraph generator with prescribed degrees. Vertices carry
// colors (the (degree, legs) profile); equal-colored untouched vertices are
// interchangeable, so only the first of each such group is tried. Duplicates
// that survive are removed by canonical dedup downstream.
struct CoreGen {
    const std::vector<int>& deg;
    bool allow_loops, allow_multi;
    const std::vector<int>& color;
    std::vector<int> rem;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj_mult;
    std::vector<std::vector<std::pair<int, int>>>& out;

    CoreGen(const std::vector<int>& degrees, bool loops, bool multi, const std::vector<int>& colors,
            std::vector<std::vector<std::pair<int, int>>>& sink)
        : deg(degrees), allow_loops(loops), allow_multi(multi), color(colors), rem(degrees),
          adj_mult(degrees.size(), std::vector<int>(degrees.size(), 0)), out(sink) {}

    bool connected() const {
        const int n = static_cast<int>(deg.size());
        if (n <= 1) return true;
        std::vector<int> stack{0}, seen(n, 0);
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (adj_mult[v][w] && !seen[w]) {
                    seen[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
        }
        return cnt == n;
    }

    void run(int from_vertex, int min_partner) {
        const int n = static_cast<int>(deg.size());
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (rem[v] > 0) {
                u = v;
                break;
            }
        if (u < 0) {
            if (connected()) out.push_back(edges);
            return;
        }
        int lo = (u == from_vertex) ? min_partner : u;
        std::set<int> tried_colors_untouched;
        for (int v = lo; v < n; ++v) {
            if (v == u) {
                if (!allow_loops || rem[u] < 2) continue;
            } else {
                if (rem[v] <= 0) continue;
                if (!allow_multi && adj_mult[u][v] >= 1) continue;
                bool untouched = true;
                for (int w = 0; w < n && untouched; ++w)
                    if (adj_mult[v][w]) untouched = false;
                if (untouched && rem[v] == deg[v]) {
                    if (!tried_colors_untouched.insert(color[v]).second) continue;
                }
            }
            rem[u] -= (v == u) ? 2 : 1;
            if (v != u) --rem[v];
            ++adj_mult[u][v];
            ++adj_mult[v][u];
            edges.emplace_back(u, v);
            run(u, v);
            edges.pop_back();
            --adj_mult[u][v];
            --adj_mult[v][u];
            rem[u] += (v == u) ? 2 : 1;
            if (v != u) ++rem[v];
        }
    }
};

// profiles: non-increasing sequences of (core degree, legs) with the required sums
inline void profiles_rec(int idx, int I, int deg_left, int legs_left, std::pair<int, int> maxp,
                         std::vector<std::pair<int, int>>& cur,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
    if (idx == I) {
        if (deg_left == 0 && legs_left == 0) out.push_back(cur);
        return;
    }
    for (int d = std::min(deg_left, maxp.first); d >= 0; --d) {
        for (int l = legs_left; l >= 0; --l) {
            if (d + l < 3) break;  // valence >= 3
            std::pair<int, int> p{d, l};
            if (p > maxp) continue;
            if (I - idx >= 2 && d == 0) continue;  // isolated core vertex is never connected
            cur.push_back(p);
            profiles_rec(idx + 1, I, deg_left - d, legs_left - l, p, cur, out);
            cur.pop_back();
        }
    }
}

}  // namespace detail

// Complete canonical basis of the slice, by internal-vertex count.
// Graphs are connected, externals univalent, internals of valence >= 3,
// complexity E - I = t. Empty whenever s > t + 1.
inline std::map<int, std::vector<OrientedGraph>> enumerate_epi_basis(int mpar, int npar, int s, int t,
                                                                     bool reduced = false) {
    if (s < 1 || t < 1) throw std::invalid_argument("enumerate_epi_basis: need s,t >= 1");
    std::map<int, std::vector<OrientedGraph>> bases;
    if (s > t + 1) return bases;
    std::set<std::pair<int, std::string>> seen;
    auto add = [&](const OrientedGraph& g, int I) {
        auto sc = canonicalize(g, mpar, npar);
        if (sc.sign == 0) return;
        auto key = std::make_pair(I, encode(sc.graph));
        if (seen.insert(key).second) bases[I].push_back(sc.graph);
    };

    if (s == 2 && t == 1) add(OrientedGraph{2, 0, {{0, 1}}}, 0);

    const bool allow_loops = (npar == 0) && !(reduced && t >= 2);
    const bool allow_multi = (npar == 1);
    for (int I = 1; I <= 2 * t - s; ++I) {
        const int ecore = I + t - s;
        if (ecore < 0) continue;
        std::vector<std::vector<std::pair<int, int>>> profiles;
        std::vector<std::pair<int, int>> cur;
        detail::profiles_rec(0, I, 2 * ecore, s, {2 * ecore, s}, cur, profiles);
        for (const auto& prof : profiles) {
            std::vector<int> deg(I), legs(I), colors(I);
            std::map<std::pair<int, int>, int> cid;
            for (int i = 0; i < I; ++i) {
                deg[i] = prof[i].first;
                legs[i] = prof[i].second;
                colors[i] = cid.emplace(prof[i], static_cast<int>(cid.size())).first->second;
            }
            std::vector<std::vector<std::pair<int, int>>> cores;
            detail::CoreGen gen(deg, allow_loops, allow_multi, colors, cores);
            gen.run(-1, 0);
            for (const auto& core : cores) {
                OrientedGraph g;
                g.n_external = s;
                g.n_internal = I;
                int e = 0;
                for (int i = 0; i < I; ++i)
                    for (int l = 0; l < legs[i]; ++l) g.edges.emplace_back(e++, s + i);
                for (auto [a, b] : core) g.edges.emplace_back(s + a, s + b);
                add(g, I);
            }
        }
    }
    for (auto& [I, v] : bases)
        std::sort(v.begin(), v.end());
    return bases;
}

// Matrix of the vertex-expansion differential from level I to level I+1.
// Each expansion of an internal vertex of valence l contributes
// 2^{l-1} - l - 1 terms with coefficient +1; the new vertex and the new edge
// are prepended to the orientation set and the new edge points from the old
// vertex to the new one.
inline SparseMatrix differential_epi(const std::map<int, std::vector<OrientedGraph>>& bases, int I,
                                     int mpar, int npar) {
    auto src = bases.find(I);
    auto dst = bases.find(I + 1);
    const int ncols = src == bases.end() ? 0 : static_cast<int>(src->second.size());
    const int nrows = dst == bases.end() ? 0 : static_cast<int>(dst->second.size());
    std::map<std::string, int> target_index;
    if (dst != bases.end())
        for (int i = 0; i < nrows; ++i) target_index[encode(dst->second[i])] = i;

    std::vector<SparseMatrix::Entry> entries;
    if (src != bases.end()) {
        for (int col = 0; col < ncols; ++col) {
            const OrientedGraph& g = src->second[col];
            const int s = g.n_external, nv = g.vertex_count();
            for (int v = s; v < nv; ++v) {
                std::vector<std::pair<int, int>> half;  // (edge index, endpoint side)
                for (int j = 0; j < static_cast<int>(g.edges.size()); ++j) {
                    if (g.edges[j].first == v) half.emplace_back(j, 0);
                    if (g.edges[j].second == v) half.emplace_back(j, 1);
                }
                const int l = static_cast<int>(half.size());
                if (l < 4) continue;
                for (unsigned mask = 0; mask < (1u << (l - 1)); ++mask) {
                    int keep = 1;  // half[0] always stays at v
                    for (int b = 0; b < l - 1; ++b)
                        if (mask >> b & 1) ++keep;
                    if (keep < 2 || l - keep < 2) continue;
                    OrientedGraph h = g;
                    h.n_internal = g.n_internal + 1;
                    const int w = nv;
                    for (int b = 0; b < l - 1; ++b)
                        if (!(mask >> b & 1)) {
                            auto [ej, side] = half[b + 1];
                            (side == 0 ? h.edges[ej].first : h.edges[ej].second) = w;
                        }
                    h.edges.emplace_back(v, w);
                    // orientation given as [w, e_new, externals, internals, old edges]
                    const int I1 = h.n_internal, E1 = static_cast<int>(h.edges.size());
                    std::vector<std::pair<int, int>> prefix = {
                        {s + I1 - 1, npar}, {s + I1 + E1 - 1, (npar + 1) & 1}};
                    std::vector<int> rest;
                    rest.reserve(s + I1 - 1 + E1 - 1);
                    for (int i = 0; i < s; ++i) rest.push_back(mpar);
                    for (int i = 0; i < I1 - 1; ++i) rest.push_back(npar);
                    for (int i = 0; i < E1 - 1; ++i) rest.push_back((npar + 1) & 1);
                    int sg0 = prefix_reorder_sign(prefix, rest);
                    auto sc = canonicalize(h, mpar, npar);
                    if (sc.sign == 0) continue;
                    auto it = target_index.find(encode(sc.graph));
                    if (it == target_index.end())
                        throw std::logic_error("differential_epi: expansion term missing from basis");
                    entries.push_back({it->second, col, Rational(sg0 * sc.sign)});
                }
            }
        }
    }
    return SparseMatrix::from_triplets(nrows, ncols, std::move(entries));
}

inline EpiSlice build_epi_slice(int mpar, int npar, int s, int t, bool reduced = false) {
    EpiSlice slice;
    slice.mpar = mpar & 1;
    slice.npar = npar & 1;
    slice.s = s;
    slice.t = t;
    slice.reduced = reduced;
    slice.bases = enumerate_epi_basis(slice.mpar, slice.npar, s, t, reduced);
    for (const auto& [I, v] : slice.bases)
        slice.diff[I] = differential_epi(slice.bases, I, slice.mpar, slice.npar);
    return slice;
}

// Homology ranks per homological degree: dim C_d - rank d_d - rank d_{d+1}.
inline std::map<int, long long> homology_ranks_epi(const EpiSlice& slice, int m, int n,
                                                   RankMethod method = RankMethod::Auto) {
    std::map<int, long long> out;
    std::map<int, int> rk;  // rank of diff at level I
    for (const auto& [I, mat] : slice.diff) rk[I] = rank(mat, method);
    for (const auto& [I, basis] : slice.bases) {
        long long h = static_cast<long long>(basis.size());
        auto out_it = rk.find(I);
        if (out_it != rk.end()) h -= out_it->second;
        auto in_it = rk.find(I - 1);
        if (in_it != rk.end()) h -= in_it->second;
        if (h < 0) throw std::logic_error("homology_ranks_epi: negative rank");
        if (h > 0) out[slice.degree_of_level(I, m, n)] += h;
    }
    return out;
}

// Euler characteristic of the slice: alternating sum of basis dimensions in
// the homological grading (n-1)E - nI - ms; depends only on the parities.
inline long long euler_epi(const EpiSlice& slice) {
    long long chi = 0;
    for (const auto& [I, basis] : slice.bases) {
        int dpar = ((slice.npar + 1) * slice.t + slice.mpar * slice.s + I) & 1;
        chi += dpar ? -static_cast<long long>(basis.size()) : static_cast<long long>(basis.size());
    }
    return chi;
}

// The t-wheel: a t-gon of trivalent internal vertices, one pendant external
// vertex on each; the 1-wheel is a looped internal vertex with one leg.
inline OrientedGraph wheel_graph(int t) {
    if (t < 1) throw std::invalid_argument("wheel_graph: t >= 1");
    OrientedGraph g;
    g.n_external = t;
    g.n_internal = t;
    for (int i = 0; i < t; ++i) g.edges.emplace_back(i, t + i);
    if (t == 1) {
        g.edges.emplace_back(1, 1);
    } else {
        for (int i = 0; i < t; ++i) g.edges.emplace_back(t + i, t + (i + 1) % t);
    }
    return g;
}

}  // namespace embgc
