#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "embgc/cycle_index.hpp"
#include "embgc/series.hpp"
#include "embgc/tables.hpp"

namespace embgc {

namespace gf_detail {

// dense u-polynomial of degree <= T
using UPoly = std::vector<Rational>;

inline UPoly upoly(int T) { return UPoly(T + 1, Rational(0)); }

inline UPoly mul(const UPoly& a, const UPoly& b) {
    const int T = static_cast<int>(a.size()) - 1;
    UPoly out = upoly(T);
    for (int i = 0; i <= T; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= T; ++j)
            if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
    return out;
}

inline bool is_zero(const UPoly& p) {
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

}  // namespace gf_detail

// One factor of the generating-function product, the finite expansion of
//   (1 + d/da)^{(-1)^m E_l(x)} e^{-a} (1 + (-1)^n l u^l a)^{(-1)^n E_l(1/u)} |_{a=0}
// truncated to x-degree <= S and u-degree <= T. Writing c = (-1)^n l u^l and
// gamma = (-1)^n E_l(1/u), the building blocks are h_i = c^i gamma(gamma-1)
// ... (gamma-i+1), which satisfy c*gamma = 1 + P with
// P = sum_{d | l, d > 1} mu(d) u^{l - l/d}, so everything stays polynomial.
inline TruncatedSeries genfunc_factor(int l, int m, int n, int S, int T) {
    if (l < 1) throw std::invalid_argument("genfunc_factor: l >= 1");
    using namespace gf_detail;
    const Trunc tr{S, T, 0};

    UPoly P = upoly(T);
    for (int d : divisors(l))
        if (d > 1 && mobius(d) && l - l / d <= T) P[l - l / d] += mobius(d);
    UPoly Q = upoly(T);
    if (l <= T) Q[l] = Rational((n & 1) ? -l : l);  // (-1)^n l u^l

    const int J = 2 * T + 2;
    // h_i = prod_{r < i} (1 + P - r Q)
    std::vector<UPoly> h{[&] {
        UPoly one = upoly(T);
        one[0] = 1;
        return one;
    }()};
    for (int i = 1; i <= J; ++i) {
        UPoly mult = P;
        mult[0] += 1;
        for (int q = 0; q <= T; ++q) mult[q] -= Rational(i - 1) * Q[q];
        h.push_back(mul(h.back(), mult));
    }

    // beta = (-1)^m E_l(x), an x-polynomial with no constant term
    TruncatedSeries beta(tr);
    for (auto& [e, c] : necklace(l))
        if (e <= S) beta.add_term(Expo{e, 0, 0, 0}, (m & 1) ? -c : c);

    TruncatedSeries total = TruncatedSeries::constant(1, tr);
    TruncatedSeries binom_beta = TruncatedSeries::constant(1, tr);
    std::vector<Rational> bin(J + 1);  // binomial row
    for (int j = 1; j <= J; ++j) {
        TruncatedSeries mult = beta;
        mult.add_term(Expo{}, Rational(-(j - 1)));
        binom_beta = binom_beta * mult * Rational(1, j);
        if (binom_beta.empty()) break;
        // g_j = sum_i binom(j, i) (-1)^{j-i} h_i
        bin[0] = 1;
        for (int i = j; i >= 1; --i) bin[i] = (i <= j - 1 ? bin[i] : Rational(0)) + bin[i - 1];
        UPoly g = upoly(T);
        for (int i = 0; i <= j; ++i) {
            if (is_zero(h[i])) continue;
            Rational c = ((j - i) & 1) ? -bin[i] : bin[i];
            for (int q = 0; q <= T; ++q) g[q] += c * h[i][q];
        }
        if (is_zero(g)) continue;
        TruncatedSeries gs(tr);
        for (int q = 0; q <= T; ++q)
            if (g[q] != 0) gs.add_term(Expo{0, q, 0, 0}, g[q]);
        total += binom_beta * gs;
    }
    return total;
}

// The full generating function F(x, u) of the homological Euler
// characteristics: product of the factors for 1 <= l <= 2T; larger l only
// contribute above the truncation since their lowest positive u-degree
// exceeds T. The first omitted factor is checked to be trivial.
inline TruncatedSeries genfunc_F(int m, int n, int S, int T) {
    Trunc tr{S, T, 0};
    TruncatedSeries f = TruncatedSeries::constant(1, tr);
    for (int l = 1; l <= 2 * T; ++l) f = f * genfunc_factor(l, m, n, S, T);
    TruncatedSeries probe = genfunc_factor(2 * T + 1, m, n, S, T);
    probe.add_term(Expo{}, -1);
    if (!probe.empty()) throw std::logic_error("genfunc_F: factor beyond the cutoff is nontrivial");
    return f;
}

inline EulerTable euler_table_from_F(const TruncatedSeries& f, int S, int T) {
    EulerTable out;
    out.method = "genfunc";
    out.s_min = 0;
    out.s_max = S;
    out.t_min = 0;
    out.t_max = T;
    for (const auto& [st, c] : f.xu_coefficients()) {
        if (!is_integer(c)) throw std::logic_error("euler_table_from_F: non-integer coefficient");
        out.set(st.first, st.second, c.get_num().get_si());
    }
    return out;
}

// Homotopy Euler characteristics from F = prod (1 - x^s u^t)^{-chi^pi_{st}}:
// take log F termwise and Moebius-invert; every output must be an integer.
inline EulerTable chi_pi_from_F(const TruncatedSeries& f, int S, int T) {
    if (f.coefficient(Expo{}) != 1)
        throw std::invalid_argument("chi_pi_from_F: constant term must be 1");
    Trunc tr{S, T, 0};
    TruncatedSeries g = f;
    g.add_term(Expo{}, -1);  // F - 1, u-valuation >= 1
    TruncatedSeries logf(tr), p = TruncatedSeries::constant(1, tr);
    for (int r = 1; r <= T; ++r) {
        p = p * g;
        if (p.empty()) break;
        logf += p * Rational((r & 1) ? 1 : -1, r);
    }
    auto c = logf.xu_coefficients();
    EulerTable out;
    out.method = "genfunc";
    out.s_min = 1;
    out.s_max = S;
    out.t_min = 1;
    out.t_max = T;
    for (int s = 1; s <= S; ++s)
        for (int t = 1; t <= T; ++t) {
            Rational v = 0;
            int g0 = std::gcd(s, t);
            for (int r : divisors(g0)) {
                int mu = mobius(r);
                if (!mu) continue;
                auto it = c.find({s / r, t / r});
                if (it != c.end()) v += Rational(mu, r) * it->second;
            }
            if (!is_integer(v))
                throw std::logic_error("chi_pi_from_F: non-integer value, inconsistent input series");
            out.set(s, t, v.get_num().get_si());
        }
    return out;
}

inline EulerTable genfunc_chi(int m, int n, int S, int T) {
    return euler_table_from_F(genfunc_F(m, n, S, T), S, T);
}

inline EulerTable genfunc_chi_pi(int m, int n, int S, int T) {
    return chi_pi_from_F(genfunc_F(m, n, S, T), S, T);
}

}  // namespace embgc
