#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "embgc/complex_e.hpp"
#include "embgc/complex_hh.hpp"
#include "embgc/cycle_index.hpp"
#include "table_fixture.hpp"

using namespace embgc;

namespace {

std::map<int, long long> ranks_hh(int m, int n, int s, int t) {
    auto slice = build_hh_slice(m % 2, n % 2, s, t);
    return homology_ranks_hh(slice, m, n, RankMethod::Exact);
}

std::map<int, long long> ranks_e(int m, int n, int s, int t) {
    auto slice = build_epi_slice(m % 2, n % 2, s, t);
    return homology_ranks_epi(slice, m, n, RankMethod::Exact);
}

}  // namespace

TEST_CASE("bicolor encode/decode") {
    BicolorGraph g{4, {{1, 2}, {3, 4}}, {{1, 3}}};
    REQUIRE(encode(g) == "F:1-2,3-4|D:1-3");
    REQUIRE(decode_bicolor(encode(g)) == g);
    REQUIRE_THROWS(decode_bicolor("F:1-2"));
    REQUIRE_THROWS(decode_bicolor("F:1-2|D:1-9"));
}

TEST_CASE("smallest symbols are present") {
    // (s,t) = (2,1): one full edge on two vertices, no dotted edges
    auto syms = enumerate_hh_symbols(1, 1, 2, 1, 2);
    REQUIRE(syms.size() == 1);
    REQUIRE(syms[0] == BicolorGraph{2, {{1, 2}}, {}});
    // (s,t) = (1,1): one full and one dotted edge on two vertices
    auto syms2 = enumerate_hh_symbols(1, 0, 1, 1, 2);
    REQUIRE(syms2.size() == 1);
    REQUIRE(syms2[0] == BicolorGraph{2, {{1, 2}}, {{1, 2}}});
    // for m,n odd the (1,1) class dies (it must match the e-side loop class)
    auto slice = build_hh_slice(1, 1, 1, 1);
    long long dim = 0;
    for (auto& [k, level] : slice.levels) dim += level.basis.size();
    REQUIRE(euler_hh(slice) == 0);
}

TEST_CASE("no dotted edges means zero column") {
    auto slice = build_hh_slice(1, 1, 2, 1);
    for (auto& [k, mat] : slice.diff) REQUIRE(mat.nnz() == 0);
}

TEST_CASE("d squared vanishes on hh slices t<=2") {
    for (int mpar = 0; mpar <= 1; ++mpar)
        for (int npar = 0; npar <= 1; ++npar)
            for (int t = 1; t <= 2; ++t)
                for (int s = 1; s <= 2 * t; ++s) {
                    auto slice = build_hh_slice(mpar, npar, s, t);
                    for (auto& [k, mat] : slice.diff) {
                        auto up = slice.diff.find(k + 1);
                        if (up == slice.diff.end() || mat.rows == 0 || up->second.cols == 0) continue;
                        REQUIRE(multiply(mat, up->second).nnz() == 0);
                    }
                }
}

TEST_CASE("haefliger class survives") {
    REQUIRE(ranks_hh(2, 7, 1, 2) == std::map<int, long long>{{8, 1}});   // 2n-m-4
    REQUIRE(ranks_hh(3, 9, 2, 1) == std::map<int, long long>{{2, 1}});   // matches complex_e
}

TEST_CASE("hh homology equals e homology for t<=2, all parities") {
    for (auto [m, n] : {std::pair{3, 9}, {2, 7}, {3, 8}, {2, 6}})
        for (int t = 1; t <= 2; ++t)
            for (int s = 1; s <= 2 * t; ++s) {
                INFO("(m,n)=(" << m << "," << n << ") (s,t)=(" << s << "," << t << ")");
                auto he = s <= t + 1 ? ranks_e(m, n, s, t) : std::map<int, long long>{};
                REQUIRE(ranks_hh(m, n, s, t) == he);
            }
}

TEST_CASE("hh euler characteristics match the homotopy tables for t<=2") {
    const std::map<std::string, std::pair<int, int>> parities{
        {"oo", {1, 1}}, {"oe", {1, 0}}, {"eo", {0, 1}}, {"ee", {0, 0}}};
    for (auto& [name, mn] : parities) {
        auto chi = fixture::load_chi("homotopy", name);
        for (int t = 1; t <= 2; ++t)
            for (int s = 1; s <= 2 * t; ++s) {
                auto slice = build_hh_slice(mn.first, mn.second, s, t);
                long long want = chi.count({s, t}) ? chi.at({s, t}) : 0;
                INFO(name << " (s,t)=(" << s << "," << t << ")");
                REQUIRE(euler_hh(slice) == want);
            }
    }
}

TEST_CASE("basis sizes at t=2 against symmetrized-vector dimensions") {
    // coinvariant dimensions must not exceed the symbol counts, and dependent
    // symbols expand over the chosen basis
    for (int mpar = 0; mpar <= 1; ++mpar)
        for (int npar = 0; npar <= 1; ++npar)
            for (int s = 1; s <= 4; ++s) {
                auto slice = build_hh_slice(mpar, npar, s, 2);
                for (auto& [k, level] : slice.levels) {
                    REQUIRE(level.basis.size() <= level.symbols.size());
                    REQUIRE(level.expansion.size() == level.symbols.size());
                }
            }
}

TEST_CASE("full-complex dimensions match the cycle-index pairing") {
    // the disconnected complex is the hom of the two symmetric sequences, so
    // its dimension at every vertex count must equal the graded pairing
    for (auto [m, n] : {std::pair{3, 3}, {3, 4}, {2, 3}, {2, 4}}) {
        for (int t = 1; t <= 2; ++t) {
            auto zv = cycle_index_locally_compact(m, 2 * t, 2 * t);
            auto zw = cycle_index_conf_normalized(n, 2 * t, t);
            auto psi = pair(zv, zw);
            for (int s = 1; s <= 2 * t; ++s) {
                auto slice = build_hh_slice(m % 2, n % 2, s, t, false);
                for (auto& [k, level] : slice.levels) {
                    Rational want =
                        psi.coefficient(Expo{s, t, t * (n - 1) - s * (m - 1) - k, 0});
                    INFO("(m,n)=(" << m << "," << n << ") (s,t)=(" << s << "," << t << ") k=" << k);
                    REQUIRE(Rational((long)level.basis.size()) == want);
                }
            }
        }
    }
}

TEST_CASE("k bounds respected") {
    for (int t = 1; t <= 2; ++t)
        for (int s = 1; s <= 2 * t; ++s) {
            auto slice = build_hh_slice(1, 1, s, t);
            for (auto& [k, level] : slice.levels) {
                REQUIRE(k <= 2 * t);
                for (auto& g : level.symbols) REQUIRE(g.k == k);
            }
        }
}
