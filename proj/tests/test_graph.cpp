#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "embgc/graph.hpp"
#include "oracle.hpp"

using namespace embgc;

TEST_CASE("koszul_sign basics") {
    REQUIRE(koszul_sign({0, 1, 2}, {1, 1, 1}) == 1);     // identity
    REQUIRE(koszul_sign({1, 0}, {1, 1}) == -1);          // swap of two odd elements
    REQUIRE(koszul_sign({1, 0}, {0, 1}) == 1);           // one even element
    REQUIRE(koszul_sign({1, 0}, {0, 0}) == 1);
    // swap of degree -m and degree n-1 elements with m=2, n=7: (-1)^{2*6} = +1
    REQUIRE(koszul_sign({1, 0}, {2 % 2, (7 - 1) % 2}) == 1);
    REQUIRE_THROWS(koszul_sign({0, 1}, {1}));
}

TEST_CASE("segment graph per parity") {
    OrientedGraph seg{2, 0, {{0, 1}}};
    // survives exactly when n - m is even
    REQUIRE(canonicalize(seg, 1, 1).sign == 1);
    REQUIRE(canonicalize(seg, 0, 0).sign == 1);
    REQUIRE(canonicalize(seg, 1, 0).sign == 0);
    REQUIRE(canonicalize(seg, 0, 1).sign == 0);
    auto sc = canonicalize(seg, 1, 1);
    REQUIRE(sc.graph == seg);
}

TEST_CASE("loop and multiple edge cancellations") {
    OrientedGraph tadpole{1, 1, {{0, 1}, {1, 1}}};
    REQUIRE(canonicalize(tadpole, 1, 1).sign == 0);  // loop, n odd
    REQUIRE(canonicalize(tadpole, 0, 1).sign == 0);
    REQUIRE(canonicalize(tadpole, 1, 0).sign != 0);  // 1-wheel survives n even
    REQUIRE(canonicalize(tadpole, 0, 0).sign != 0);

    // theta-tadpole: one leg, two internal vertices joined by a triple edge
    OrientedGraph theta{1, 2, {{0, 1}, {1, 2}, {1, 2}, {1, 2}}};
    REQUIRE(canonicalize(theta, 1, 0).sign == 0);  // triple edge, n even
    REQUIRE(canonicalize(theta, 1, 1).sign != 0);
    REQUIRE(canonicalize(theta, 0, 1).sign != 0);
}

TEST_CASE("exhaustive parity cancellations on small graphs") {
    // every loop-bearing graph dies for n odd; every multi-edge graph dies for n even
    for (int mpar = 0; mpar <= 1; ++mpar) {
        for (int s = 1; s <= 3; ++s) {
            for (int t = 1; t <= 3; ++t) {
                auto all_odd = oracle::naive_epi_basis(mpar, 1, s, t);
                for (auto& [I, graphs] : all_odd)
                    for (auto& g : graphs) {
                        for (auto [a, b] : g.edges) REQUIRE(a != b);
                    }
                auto all_even = oracle::naive_epi_basis(mpar, 0, s, t);
                for (auto& [I, graphs] : all_even)
                    for (auto& g : graphs) {
                        std::set<std::pair<int, int>> und;
                        for (auto [a, b] : g.edges)
                            REQUIRE(und.insert({std::min(a, b), std::max(a, b)}).second);
                    }
            }
        }
    }
}

TEST_CASE("canonicalize is idempotent") {
    for (int mpar = 0; mpar <= 1; ++mpar)
        for (int npar = 0; npar <= 1; ++npar) {
            auto bases = oracle::naive_epi_basis(mpar, npar, 2, 2);
            for (auto& [I, graphs] : bases)
                for (auto& g : graphs) {
                    auto sc = canonicalize(g, mpar, npar);
                    REQUIRE(sc.sign == 1);
                    REQUIRE(sc.graph == g);
                }
        }
}

TEST_CASE("sign multiplicativity under relabeling and reorientation") {
    // shuffling vertex labels, edge order and edge directions of a canonical
    // graph must reproduce the tracked Koszul-and-reversal sign
    std::mt19937 rng(99);
    for (int mpar = 0; mpar <= 1; ++mpar)
        for (int npar = 0; npar <= 1; ++npar) {
            auto bases = oracle::naive_epi_basis(mpar, npar, 2, 3);
            for (auto& [I, graphs] : bases) {
                for (auto& g : graphs) {
                    for (int trial = 0; trial < 5; ++trial) {
                        OrientedGraph h = g;
                        int tracked = 1;
                        const int s = g.n_external;
                        // random internal relabeling (Koszul: internal has parity n)
                        std::vector<int> perm(g.n_internal);
                        for (int i = 0; i < g.n_internal; ++i) perm[i] = i;
                        std::shuffle(perm.begin(), perm.end(), rng);
                        for (auto& [a, b] : h.edges) {
                            if (a >= s) a = s + perm[a - s];
                            if (b >= s) b = s + perm[b - s];
                        }
                        tracked *= koszul_sign(perm, std::vector<int>(perm.size(), npar));
                        // random edge reversals: (-1)^n each
                        for (auto& [a, b] : h.edges)
                            if (rng() % 2) {
                                std::swap(a, b);
                                if (npar) tracked = -tracked;
                            }
                        // random edge reordering: Koszul among degree (n-1) elements
                        std::vector<int> eperm(h.edges.size());
                        for (std::size_t i = 0; i < eperm.size(); ++i) eperm[i] = (int)i;
                        std::shuffle(eperm.begin(), eperm.end(), rng);
                        std::vector<std::pair<int, int>> ne(h.edges.size());
                        for (std::size_t i = 0; i < eperm.size(); ++i) ne[eperm[i]] = h.edges[i];
                        std::vector<int> epos(eperm.begin(), eperm.end());
                        tracked *= koszul_sign(epos, std::vector<int>(epos.size(), (npar + 1) & 1));
                        h.edges = ne;

                        auto sc = canonicalize(h, mpar, npar);
                        REQUIRE(sc.sign == tracked);
                        REQUIRE(sc.graph == g);
                    }
                }
            }
        }
}

TEST_CASE("encode/decode round trip and injectivity") {
    OrientedGraph seg{2, 0, {{0, 1}}};
    REQUIRE(decode(encode(seg)) == seg);
    REQUIRE(encode(OrientedGraph{}) == "E=0 I=0 edges=");

    std::set<std::string> encodings;
    int count = 0;
    for (int s = 1; s <= 3; ++s)
        for (int t = 1; t <= 3; ++t) {
            auto bases = oracle::naive_epi_basis(1, 1, s, t);
            for (auto& [I, graphs] : bases)
                for (auto& g : graphs) {
                    REQUIRE(decode(encode(g)) == g);
                    REQUIRE(encodings.insert(encode(g)).second);
                    ++count;
                }
        }
    REQUIRE(count > 10);

    REQUIRE_THROWS(decode("E=2 I=0"));
    REQUIRE_THROWS(decode("E=2 I=0 edges=0-"));
    REQUIRE_THROWS(decode("garbage"));
    REQUIRE_THROWS(decode("E=1 I=0 edges=0-5"));
}
