#include <catch2/catch_amalgamated.hpp>

#include "embgc/genfunc.hpp"
#include "table_fixture.hpp"

using namespace embgc;

namespace {

// coefficient table of F by (s,t) for small display comparisons
std::map<std::pair<int, int>, long long> fcoeffs(int m, int n, int S, int T) {
    std::map<std::pair<int, int>, long long> out;
    for (auto& [st, c] : genfunc_F(m, n, S, T).xu_coefficients())
        if (c != 0) out[st] = c.get_num().get_si();
    return out;
}

}  // namespace

TEST_CASE("every factor has constant term 1 and no bare-u corrections") {
    for (int l = 1; l <= 8; ++l)
        for (int m = 2; m <= 3; ++m)
            for (int n = 3; n <= 4; ++n) {
                auto f = genfunc_factor(l, m, n, 6, 6);
                REQUIRE(f.coefficient(Expo{}) == 1);
                // the u^k x^0 part vanishes for k >= 1: corrections need x
                for (int k = 1; k <= 6; ++k) REQUIRE(f.coefficient(Expo{0, k, 0, 0}) == 0);
            }
}

TEST_CASE("c*gamma - 1 identity for l <= 12") {
    // (-1)^n l u^l * (-1)^n E_l(1/u) = 1 + sum_{d | l, d > 1} mu(d) u^{l - l/d}
    for (int l = 1; l <= 12; ++l) {
        std::map<int, Rational> lhs;
        for (auto& [e, c] : necklace(l)) lhs[l - e] += c * l;  // u^l * u^{-e}
        lhs[0] -= 1;
        std::map<int, Rational> rhs;
        for (int d : divisors(l))
            if (d > 1 && mobius(d)) rhs[l - l / d] += mobius(d);
        std::erase_if(lhs, [](auto& kv) { return kv.second == 0; });
        std::erase_if(rhs, [](auto& kv) { return kv.second == 0; });
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("F displays for all four parity classes") {
    using M = std::map<std::pair<int, int>, long long>;
    // odd/odd: 1 + x^2 u + (x^4+x^2-x)u^2 + (x^6+x^4-x^3+x^2-x)u^3
    REQUIRE(fcoeffs(3, 3, 6, 3) ==
            M{{{0, 0}, 1}, {{2, 1}, 1}, {{4, 2}, 1}, {{2, 2}, 1}, {{1, 2}, -1},
              {{6, 3}, 1}, {{4, 3}, 1}, {{3, 3}, -1}, {{2, 3}, 1}, {{1, 3}, -1}});
    // even/even: 1 + (-x^2+x)u + (-x^3+x^2)u^2 + (-x^4+2x^3-x)u^3
    REQUIRE(fcoeffs(2, 4, 6, 3) ==
            M{{{0, 0}, 1}, {{2, 1}, -1}, {{1, 1}, 1}, {{3, 2}, -1}, {{2, 2}, 1},
              {{4, 3}, -1}, {{3, 3}, 2}, {{1, 3}, -1}});
    // even/odd: 1 + (-x^3+x)u^2 + (-x^3+x)u^3
    REQUIRE(fcoeffs(2, 3, 6, 3) ==
            M{{{0, 0}, 1}, {{3, 2}, -1}, {{1, 2}, 1}, {{3, 3}, -1}, {{1, 3}, 1}});
    // odd/even: 1 - xu + x^3 u^2 + (-x^4-x^2+x)u^3
    REQUIRE(fcoeffs(3, 4, 6, 3) ==
            M{{{0, 0}, 1}, {{1, 1}, -1}, {{3, 2}, 1}, {{4, 3}, -1}, {{2, 3}, -1}, {{1, 3}, 1}});
}

TEST_CASE("F depends only on parities") {
    auto a = genfunc_F(3, 9, 8, 5).xu_coefficients();
    auto b = genfunc_F(5, 11, 8, 5).xu_coefficients();
    REQUIRE(a == b);
}

TEST_CASE("chi tables match the reference CSVs in a small window") {
    const std::map<std::string, std::pair<int, int>> parities{
        {"oo", {3, 3}}, {"oe", {3, 4}}, {"eo", {2, 3}}, {"ee", {2, 4}}};
    for (auto& [name, mn] : parities) {
        auto chi = genfunc_chi(mn.first, mn.second, 12, 6);
        auto want = fixture::load_chi("homology", name);
        for (int s = 1; s <= 12; ++s)
            for (int t = 1; t <= 6; ++t) {
                INFO(name << " (s,t)=(" << s << "," << t << ")");
                REQUIRE(chi.at(s, t) == (want.count({s, t}) ? want.at({s, t}) : 0));
            }
        auto pi = genfunc_chi_pi(mn.first, mn.second, 12, 6);
        auto want_pi = fixture::load_chi("homotopy", name);
        for (int s = 1; s <= 12; ++s)
            for (int t = 1; t <= 6; ++t)
                REQUIRE(pi.at(s, t) == (want_pi.count({s, t}) ? want_pi.at({s, t}) : 0));
    }
}

TEST_CASE("chi^pi examples and the tree-line vanishing") {
    auto pi = genfunc_chi_pi(3, 3, 10, 6);
    REQUIRE(pi.at(1, 2) == -1);
    REQUIRE(pi.at(2, 2) == 1);
    // row t = 5 is (-2, 2, -1, 1)
    REQUIRE(pi.at(1, 5) == -2);
    REQUIRE(pi.at(2, 5) == 2);
    REQUIRE(pi.at(3, 5) == -1);
    REQUIRE(pi.at(4, 5) == 1);
    long long abs_total = 0;
    for (int s = 1; s <= 10; ++s) abs_total += std::abs(pi.at(s, 5));
    REQUIRE(abs_total == 6);
    // chi^pi vanishes beyond the tree line s = t+1
    for (int t = 1; t <= 6; ++t)
        for (int s = t + 2; s <= 10; ++s) REQUIRE(pi.at(s, t) == 0);
}

TEST_CASE("single factor inversion") {
    // F = 1/(1 - x^2 u) alone gives chi^pi(2,1) = 1 and nothing else
    Trunc tr{8, 4, 0};
    TruncatedSeries f(tr);
    for (int j = 0; 2 * j <= 8 && j <= 4; ++j) f.add_term(Expo{2 * j, j, 0, 0}, 1);
    auto pi = chi_pi_from_F(f, 8, 4);
    REQUIRE(pi.at(2, 1) == 1);
    REQUIRE(pi.entries.size() == 1);
}

TEST_CASE("chi_pi_from_F and euler_h_from_pi invert each other") {
    for (auto [m, n] : {std::pair{3, 3}, {2, 4}}) {
        auto f = genfunc_F(m, n, 10, 5);
        auto pi = chi_pi_from_F(f, 10, 5);
        auto chi = euler_h_from_pi(pi, 10, 5);
        auto direct = euler_table_from_F(f, 10, 5);
        REQUIRE(chi.entries == direct.entries);
        // round trip: chi^pi with a single entry gives the geometric series
        EulerTable single;
        single.method = "fixture";
        single.s_max = 10;
        single.t_max = 5;
        single.set(2, 1, 1);
        auto h = euler_h_from_pi(single, 10, 5);
        REQUIRE(h.at(2, 1) == 1);
        REQUIRE(h.at(4, 2) == 1);  // the square of the generator
        REQUIRE(h.at(6, 3) == 1);
    }
    // insufficient input table
    EulerTable tiny;
    tiny.s_max = 2;
    tiny.t_max = 2;
    REQUIRE_THROWS(euler_h_from_pi(tiny, 10, 5));
}

TEST_CASE("non-integer chi^pi is rejected") {
    Trunc tr{4, 2, 0};
    TruncatedSeries f = TruncatedSeries::constant(1, tr);
    f.add_term(Expo{1, 1, 0, 0}, make_rational(1, 2));
    REQUIRE_THROWS(chi_pi_from_F(f, 4, 2));
    TruncatedSeries g(tr);
    REQUIRE_THROWS(chi_pi_from_F(g, 4, 2));  // constant term not 1
}
