#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "embgc/koszul.hpp"

namespace embgc {

// A graph with s unlabeled external vertices (ids 0..s-1), I unlabeled internal
// vertices (ids s..s+I-1) and directed edges. The orientation set is implicit:
// [externals asc][internals asc][edges in list order, directed as given].
// Degrees: externals -m, internals -n, edges n-1.
struct OrientedGraph {
    int n_external = 0;
    int n_internal = 0;
    std::vector<std::pair<int, int>> edges;

    int vertex_count() const { return n_external + n_internal; }
    bool is_internal(int v) const { return v >= n_external; }

    friend auto operator<=>(const OrientedGraph&, const OrientedGraph&) = default;
};

struct SignedCanonical {
    OrientedGraph graph;
    int sign = 0;  // 0 means the class is zero (an automorphism reverses orientation)
};

inline void validate_graph(const OrientedGraph& g) {
    if (g.n_external < 0 || g.n_internal < 0) throw std::invalid_argument("graph: negative vertex count");
    const int nv = g.vertex_count();
    std::vector<int> valence(nv, 0);
    for (auto [a, b] : g.edges) {
        if (a < 0 || a >= nv || b < 0 || b >= nv) throw std::invalid_argument("graph: edge endpoint out of range");
        ++valence[a];
        ++valence[b];
    }
    for (int e = 0; e < g.n_external; ++e)
        if (valence[e] != 1) throw std::invalid_argument("graph: external vertex must be univalent");
}

// Canonical text encoding, one graph per line.
inline std::string encode(const OrientedGraph& g) {
    std::ostringstream os;
    os << "E=" << g.n_external << " I=" << g.n_internal << " edges=";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (i) os << ',';
        os << g.edges[i].first << '-' << g.edges[i].second;
    }
    return os.str();
}

inline OrientedGraph decode(const std::string& text) {
    OrientedGraph g;
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok) || tok.rfind("E=", 0) != 0) throw std::invalid_argument("decode: expected E=");
    g.n_external = std::stoi(tok.substr(2));
    if (!(is >> tok) || tok.rfind("I=", 0) != 0) throw std::invalid_argument("decode: expected I=");
    g.n_internal = std::stoi(tok.substr(2));
    if (!(is >> tok) || tok.rfind("edges=", 0) != 0) throw std::invalid_argument("decode: expected edges=");
    std::string list = tok.substr(6);
    if (!list.empty()) {
        std::istringstream ls(list);
        std::string item;
        while (std::getline(ls, item, ',')) {
            auto dash = item.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 >= item.size())
                throw std::invalid_argument("decode: bad edge '" + item + "'");
            g.edges.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
        }
    }
    validate_graph(g);
    return g;
}

namespace detail {

struct CanonSearch {
    const OrientedGraph& g;
    int mpar, npar, epar;
    int s, I;
    std::vector<int> ext_neighbor;                      // internal neighbor of each external
    std::vector<std::vector<std::pair<int, int>>> adj;  // internal -> (internal neighbor, multiplicity)
    std::vector<int> loops, legs;

    std::vector<std::pair<int, int>> best_enc;
    bool have_best = false;
    int best_sign = 0;
    std::map<std::vector<std::pair<int, int>>, int> seen_signs;
    bool zero = false;

    CanonSearch(const OrientedGraph& graph, int mp, int np)
        : g(graph), mpar(mp & 1), npar(np & 1), epar((np + 1) & 1),
          s(graph.n_external), I(graph.n_internal),
          ext_neighbor(s, -1), adj(I), loops(I, 0), legs(I, 0) {}

    void build() {
        std::map<std::pair<int, int>, int> mult;
        for (auto [a, b] : g.edges) {
            if (a < s && b < s) throw std::invalid_argument("canonicalize: external-external edge outside the segment case");
            if (a < s) {
                ext_neighbor[a] = b;
                ++legs[b - s];
                continue;
            }
            if (b < s) {
                ext_neighbor[b] = a;
                ++legs[a - s];
                continue;
            }
            if (a == b) {
                ++loops[a - s];
                continue;
            }
            int x = std::min(a, b) - s, y = std::max(a, b) - s;
            ++mult[{x, y}];
        }
        for (auto [xy, c] : mult) {
            adj[xy.first].emplace_back(xy.second, c);
            adj[xy.second].emplace_back(xy.first, c);
        }
    }

    std::vector<int> refine(std::vector<int> color) const {
        while (true) {
            std::vector<std::vector<long>> key(I);
            for (int v = 0; v < I; ++v) {
                auto& k = key[v];
                k.push_back(color[v]);
                k.push_back(loops[v]);
                k.push_back(legs[v]);
                std::vector<std::pair<int, int>> nb;
                for (auto [w, c] : adj[v]) nb.emplace_back(color[w], c);
                std::sort(nb.begin(), nb.end());
                for (auto [cw, c] : nb) {
                    k.push_back(cw);
                    k.push_back(c);
                }
            }
            std::vector<std::vector<long>> uniq = key;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            std::vector<int> nc(I);
            for (int v = 0; v < I; ++v)
                nc[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), key[v]) - uniq.begin());
            if (nc == color) return color;
            color = std::move(nc);
        }
    }

    void search(std::vector<int> color) {
        if (zero) return;
        // find first non-singleton cell in color order
        std::vector<std::vector<int>> cells;
        {
            int maxc = -1;
            for (int c : color) maxc = std::max(maxc, c);
            cells.assign(maxc + 1, {});
            for (int v = 0; v < I; ++v) cells[color[v]].push_back(v);
        }
        int split = -1;
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].size() >= 2) {
                split = static_cast<int>(c);
                break;
            }
        if (split < 0) {
            std::vector<int> order(I);
            for (int v = 0; v < I; ++v) order[color[v]] = v;
            evaluate(order);
            return;
        }
        for (int v : cells[split]) {
            std::vector<int> nc(I);
            for (int w = 0; w < I; ++w) nc[w] = 2 * color[w] + 1;
            nc[v] = 2 * color[v];
            search(refine(std::move(nc)));
            if (zero) return;
        }
    }

    // order[p] = internal old index placed at canonical position p
    void evaluate(const std::vector<int>& order) {
        std::vector<int> pos(I);
        for (int p = 0; p < I; ++p) pos[order[p]] = p;
        auto new_id = [&](int v) { return s + pos[v - s]; };

        // externals sorted by new neighbor id (stable by old id)
        std::vector<int> ext_order(s);
        for (int e = 0; e < s; ++e) ext_order[e] = e;
        std::stable_sort(ext_order.begin(), ext_order.end(),
                         [&](int a, int b) { return new_id(ext_neighbor[a]) < new_id(ext_neighbor[b]); });
        std::vector<int> ext_pos(s);
        for (int p = 0; p < s; ++p) ext_pos[ext_order[p]] = p;

        const int ne = static_cast<int>(g.edges.size());
        std::vector<std::pair<int, int>> mapped(ne);
        int reversals = 0;
        for (int j = 0; j < ne; ++j) {
            auto [a, b] = g.edges[j];
            int x = a < s ? ext_pos[a] : new_id(a);
            int y = b < s ? ext_pos[b] : new_id(b);
            if (x > y) {
                std::swap(x, y);
                ++reversals;
            }
            mapped[j] = {x, y};
        }
        std::vector<int> edge_order(ne);
        for (int j = 0; j < ne; ++j) edge_order[j] = j;
        std::stable_sort(edge_order.begin(), edge_order.end(),
                         [&](int a, int b) { return mapped[a] < mapped[b]; });
        std::vector<std::pair<int, int>> enc(ne);
        std::vector<int> slot(ne);
        for (int p = 0; p < ne; ++p) {
            enc[p] = mapped[edge_order[p]];
            slot[edge_order[p]] = p;
        }

        std::vector<int> target(s + I + ne);
        std::vector<int> pars(s + I + ne);
        for (int e = 0; e < s; ++e) {
            target[e] = ext_pos[e];
            pars[e] = mpar;
        }
        for (int v = 0; v < I; ++v) {
            target[s + v] = s + pos[v];
            pars[s + v] = npar;
        }
        for (int j = 0; j < ne; ++j) {
            target[s + I + j] = s + I + slot[j];
            pars[s + I + j] = epar;
        }
        int sg = koszul_sign(target, pars);
        if (npar && (reversals & 1)) sg = -sg;

        auto it = seen_signs.find(enc);
        if (it != seen_signs.end()) {
            if (it->second != sg) {
                zero = true;
                return;
            }
        } else {
            seen_signs.emplace(enc, sg);
        }
        if (!have_best || enc < best_enc) {
            best_enc = std::move(enc);
            best_sign = sg;
            have_best = true;
        }
    }
};

}  // namespace detail

// Canonical representative with accumulated sign. Returns sign 0 when the
// underlying graph has an automorphism acting by -1 on the orientation data.
inline SignedCanonical canonicalize(const OrientedGraph& g, int m_parity, int n_parity) {
    validate_graph(g);
    const int mp = m_parity & 1, np = n_parity & 1;
    const int s = g.n_external;

    if (g.n_internal == 0) {
        if (g.edges.empty()) return {OrientedGraph{s, 0, {}}, 1};  // empty graph, the unit
        if (s == 2 && g.edges.size() == 1) {
            // segment: the external swap acts by (-1)^{m+n}
            if ((mp + np) & 1) return {OrientedGraph{}, 0};
            return {OrientedGraph{2, 0, {{0, 1}}}, 1};
        }
        throw std::invalid_argument("canonicalize: unsupported externals-only graph");
    }

    // parity cancellations
    std::map<std::pair<int, int>, int> mult;
    for (auto [a, b] : g.edges) {
        if (a == b && np) return {OrientedGraph{}, 0};  // loop, n odd
        if (np == 0 && ++mult[{std::min(a, b), std::max(a, b)}] >= 2)
            return {OrientedGraph{}, 0};  // multiple edge, n even
    }
    detail::CanonSearch cs(g, mp, np);
    cs.build();
    // two legs on one vertex: the external swap acts by (-1)^{m+n-1}
    if (((mp + np + 1) & 1))
        for (int v = 0; v < cs.I; ++v)
            if (cs.legs[v] >= 2) return {OrientedGraph{}, 0};

    cs.search(cs.refine(std::vector<int>(cs.I, 0)));
    if (cs.zero) return {OrientedGraph{}, 0};
    OrientedGraph canon{s, g.n_internal, cs.best_enc};
    return {std::move(canon), cs.best_sign};
}

// Koszul sign of moving an explicitly ordered orientation list into the
// standard order [externals][internals][edges]. `prefix_parities` describes
// elements currently in front of the standard blocks, and `targets` their
// destination slots in the standard list of total length `total`.
inline int prefix_reorder_sign(const std::vector<std::pair<int, int>>& prefix_target_and_parity,
                               const std::vector<int>& standard_parities) {
    const int pre = static_cast<int>(prefix_target_and_parity.size());
    const int rest = static_cast<int>(standard_parities.size());
    std::vector<int> target(pre + rest), pars(pre + rest);
    std::vector<char> taken(pre + rest, 0);
    for (int i = 0; i < pre; ++i) {
        target[i] = prefix_target_and_parity[i].first;
        pars[i] = prefix_target_and_parity[i].second;
        taken[target[i]] = 1;
    }
    int slot = 0;
    for (int i = 0; i < rest; ++i) {
        while (taken[slot]) ++slot;
        target[pre + i] = slot++;
        pars[pre + i] = standard_parities[i];
    }
    return koszul_sign(target, pars);
}

}  // namespace embgc
