#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "embgc/monomial.hpp"
#include "embgc/sparse.hpp"
#include "arnold_oracle.hpp"
#include "oracle.hpp"

using namespace embgc;

namespace {

MonomialCombination combo(std::initializer_list<std::pair<Monomial, long>> terms) {
    MonomialCombination c;
    for (auto& [m, v] : terms) c[m] += v;
    return c;
}

}  // namespace

TEST_CASE("straighten kills the Arnold relation itself") {
    for (int dim = 0; dim <= 1; ++dim) {
        MonomialCombination rel;
        for (auto& [m, c] : straighten(Monomial{{1, 2}, {2, 3}}, dim)) rel[m] += c;
        for (auto& [m, c] : straighten(Monomial{{2, 3}, {3, 1}}, dim)) rel[m] += c;
        for (auto& [m, c] : straighten(Monomial{{3, 1}, {1, 2}}, dim)) rel[m] += c;
        std::erase_if(rel, [](auto& kv) { return kv.second == 0; });
        REQUIRE(rel.empty());
    }
}

TEST_CASE("straighten basic identities") {
    REQUIRE(straighten(Monomial{{1, 2}, {1, 2}}, 1).empty());  // a^2 = 0
    REQUIRE(straighten(Monomial{{1, 2}, {1, 2}}, 0).empty());
    REQUIRE(straighten(Monomial{{1, 2}, {2, 1}}, 1).empty());
    REQUIRE(straighten(Monomial{{1, 1}}, 1).empty());

    // two edges into vertex 3: a13 a23 = a12 a23 + (-1)^n a13 a12(normalized)
    for (int dim = 0; dim <= 1; ++dim) {
        auto got = straighten(Monomial{{1, 3}, {2, 3}}, dim);
        REQUIRE(got.size() == 2);
        REQUIRE(got.count(Monomial{{1, 2}, {2, 3}}) == 1);
        REQUIRE(got.count(Monomial{{1, 2}, {1, 3}}) == 1);
        // verify against the relation-quotient oracle by checking the
        // rewritten combination equals the input in the quotient:
        // input - rewrite must be in the relation span, i.e. straighten again
        // after perturbation stays stable (idempotence checked below); here
        // check signs via the defining relation directly:
        // a13 a23 - c1 a12 a23 - c2 a12 a13 must straighten to zero
        MonomialCombination diff;
        diff[Monomial{{1, 3}, {2, 3}}] += 1;
        for (auto& [m, c] : got) diff[m] -= c;
        auto z = straighten(diff, dim);
        REQUIRE(z.empty());
    }
}

TEST_CASE("straighten is idempotent and linear on random monomials") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int k = 3 + (int)(rng() % 3);
        int r = 1 + (int)(rng() % 4);
        Monomial m;
        for (int i = 0; i < r; ++i) {
            int a = 1 + (int)(rng() % k), b = 1 + (int)(rng() % k);
            m.emplace_back(a, b);
        }
        int dim = (int)(rng() % 2);
        auto s1 = straighten(m, dim);
        MonomialCombination back;
        for (auto& [mono, c] : s1) {
            REQUIRE(std::is_sorted(mono.begin(), mono.end(),
                                   [](auto& x, auto& y) { return x.second < y.second; }));
            for (std::size_t i = 0; i + 1 < mono.size(); ++i) REQUIRE(mono[i].second < mono[i + 1].second);
            for (auto& [a, b] : mono) REQUIRE(a < b);
            auto again = straighten(mono, dim);
            REQUIRE(again.size() == 1);
            REQUIRE(again.begin()->first == mono);
            REQUIRE(again.begin()->second == 1);
        }
    }
}

TEST_CASE("admissible dimensions") {
    REQUIRE(admissible_basis_dim(2, 1) == 1);
    REQUIRE(admissible_basis_dim(3, 2) == 2);
    REQUIRE(admissible_basis_dim(4, 3) == 6);
    for (int k = 2; k <= 6; ++k) {
        REQUIRE(admissible_basis_dim(k, k - 1) ==
                [](int n) { long long f = 1; for (int i = 2; i <= n; ++i) f *= i; return f; }(k - 1));
        for (int r = 0; r <= k - 1; ++r)
            REQUIRE((long long)admissible_monomials(k, r).size() == admissible_basis_dim(k, r));
    }
}

TEST_CASE("kq basis") {
    REQUIRE(kq_basis(3, 1).size() == 2);
    REQUIRE(kq_basis(4, 2).size() == 11);
    REQUIRE(kq_basis(5, 5).size() == 1);
    REQUIRE(kq_basis(5, 5)[0].empty());  // edgeless forest
    REQUIRE_THROWS(kq_basis(3, 0));
    // admissible monomials are forests: no cycles
    for (auto& mono : kq_basis(5, 2)) {
        std::vector<int> par(6);
        for (int i = 0; i <= 5; ++i) par[i] = i;
        auto find = [&](int x) {
            while (par[x] != x) x = par[x] = par[par[x]];
            return x;
        };
        for (auto& [a, b] : mono) {
            REQUIRE(find(a) != find(b));
            par[find(a)] = find(b);
        }
    }
}

TEST_CASE("admissible dimensions match the Arnold-quotient oracle (small)") {
    for (int dim = 0; dim <= 1; ++dim) {
        for (int k = 2; k <= 5; ++k)
            for (int r = 1; r <= k - 1; ++r) {
                INFO("k=" << k << " r=" << r << " dim parity " << dim);
                REQUIRE(oracle::arnold_quotient_dim(k, r, dim, RankMethod::Exact) ==
                        admissible_basis_dim(k, r));
            }
    }
}

TEST_CASE("random relation-ideal elements straighten to zero") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        int k = 4 + (int)(rng() % 2);
        int dim = (int)(rng() % 2);
        // relation times a random context monomial
        int i = 1 + (int)(rng() % k), j = 1 + (int)(rng() % k), l = 1 + (int)(rng() % k);
        if (i == j || j == l || i == l) continue;
        Monomial ctx;
        for (int q = 0; q < (int)(rng() % 3); ++q)
            ctx.emplace_back(1 + (int)(rng() % k), 1 + (int)(rng() % k));
        MonomialCombination rel;
        auto add = [&](std::pair<int, int> g1, std::pair<int, int> g2) {
            Monomial m{g1, g2};
            m.insert(m.end(), ctx.begin(), ctx.end());
            rel[m] += 1;
        };
        add({i, j}, {j, l});
        add({j, l}, {l, i});
        add({l, i}, {i, j});
        REQUIRE(straighten(rel, dim).empty());
    }
}
