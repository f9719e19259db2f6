#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "embgc/series.hpp"

namespace embgc {

inline int mobius(int d) {
    int r = 1;
    for (int p = 2; p * p <= d; ++p)
        if (d % p == 0) {
            d /= p;
            if (d % p == 0) return 0;
            r = -r;
        }
    if (d > 1) r = -r;
    return r;
}

inline std::vector<int> divisors(int l) {
    std::vector<int> out;
    for (int d = 1; d <= l; ++d)
        if (l % d == 0) out.push_back(d);
    return out;
}

// The necklace polynomial E_l(y) = (1/l) sum_{d|l} mu(d) y^{l/d}, returned as
// (exponent, coefficient) pairs with exact rationals.
inline std::vector<std::pair<int, Rational>> necklace(int l) {
    if (l < 1) throw std::invalid_argument("necklace: l >= 1");
    std::map<int, Rational> acc;
    for (int d : divisors(l)) {
        int mu = mobius(d);
        if (mu) acc[l / d] += Rational(mu, l);
    }
    std::vector<std::pair<int, Rational>> out(acc.begin(), acc.end());
    std::erase_if(out, [](auto& p) { return p.second == 0; });
    return out;
}

// E_l evaluated at a monomial c * x^a u^b z^e.
inline TruncatedSeries necklace_at(int l, const Rational& c, Expo base, Trunc t) {
    TruncatedSeries out(t);
    for (auto& [e, coeff] : necklace(l)) {
        Rational pw = 1;
        for (int i = 0; i < e; ++i) pw *= c;
        out.add_term(Expo{base.x * e, base.u * e, base.z * e, 0}, coeff * pw);
    }
    return out;
}

// A cycle index sum is a truncated series in the a-variables whose
// coefficients are graded by z (homology) and by x or u.
using CycleIndex = TruncatedSeries;

namespace ci_detail {

inline TruncatedSeries a_power(int l, int j, Trunc t) {
    auto& reg = PartitionRegistry::instance();
    std::vector<int> mults(l, 0);
    mults[l - 1] = j;
    return TruncatedSeries::monomial(1, Expo{0, 0, 0, reg.intern(std::move(mults))}, t);
}

}  // namespace ci_detail

// Cycle index sum of the homology of configuration spaces of R^n,
//   prod_l (1 + (-1)^n ((-z)^{n-1} u)^l a_l)^{(-1)^n E_l(1/((-z)^{n-1} u))},
// with u recording the complexity and z the homology degree. When
// `normalized`, each factor carries e^{-a_l/l} (the cross-effect).
inline CycleIndex cycle_index_conf_impl(int n, int k_max, int T, bool normalized) {
    Trunc t{0, T, k_max};
    TruncatedSeries result = TruncatedSeries::constant(1, t);
    const int sn = (n & 1) ? -1 : 1;  // (-1)^n
    for (int l = 1; l <= k_max; ++l) {
        // gamma = (-1)^n E_l(1/((-z)^{n-1} u));  1/((-z)^{n-1}u) = (-1)^{n-1} z^{-(n-1)} u^{-1}
        Trunc loose{0, T, k_max};
        TruncatedSeries gamma = necklace_at(l, Rational(-sn), Expo{0, -1, -(n - 1), 0}, loose) * Rational(sn);
        // c = (-1)^n ((-z)^{n-1} u)^l
        Rational c_coeff = Rational(sn) * ((((n - 1) * l) & 1) ? -1 : 1);
        Expo c_expo{0, l, (n - 1) * l, 0};
        TruncatedSeries gamma_c(loose);
        for (const auto& [e, v] : gamma.terms())
            gamma_c.add_term(Expo{e.x, e.u + c_expo.u, e.z + c_expo.z, 0}, v * c_coeff);

        const int jmax = k_max / l;
        TruncatedSeries factor = TruncatedSeries::constant(1, t);
        // h_q = binom(gamma, q) c^q, built as h_q = h_{q-1} (gamma*c - (q-1)c)/q
        TruncatedSeries h = TruncatedSeries::constant(1, loose);
        std::vector<TruncatedSeries> hs{h};
        for (int q = 1; q <= jmax; ++q) {
            TruncatedSeries mult = gamma_c;
            mult.add_term(c_expo, -c_coeff * (q - 1));
            h = h * mult * Rational(1, q);
            hs.push_back(h);
        }
        for (int j = 1; j <= jmax; ++j) {
            TruncatedSeries coeff(loose);
            if (normalized) {
                // sum_{p+q=j} (-1/l)^p / p! * h_q
                for (int p = j; p >= 0; --p) {
                    Rational pw = 1;
                    for (int i = 0; i < p; ++i) pw *= Rational(-1, l);
                    Rational fact = 1;
                    for (int i = 2; i <= p; ++i) fact *= i;
                    coeff += hs[j - p] * (pw / fact);
                }
            } else {
                coeff = hs[j];
            }
            factor += coeff * ci_detail::a_power(l, j, t);
        }
        result = result * factor;
    }
    return result;
}

inline CycleIndex cycle_index_conf(int n, int k_max, int T) {
    return cycle_index_conf_impl(n, k_max, T, false);
}

inline CycleIndex cycle_index_conf_normalized(int n, int k_max, int T) {
    return cycle_index_conf_impl(n, k_max, T, true);
}

// Cycle index sum of the locally compact homology of configuration spaces of
// R^m: prod_l (1 + (-z)^l a_l)^{(-1)^m E_l((-z)^{m-1} x)}, x recording the
// Hodge degree.
inline CycleIndex cycle_index_locally_compact(int m, int k_max, int S) {
    Trunc t{S, 0, k_max};
    TruncatedSeries result = TruncatedSeries::constant(1, t);
    const int sm = (m & 1) ? -1 : 1;  // (-1)^m
    for (int l = 1; l <= k_max; ++l) {
        // B = (-1)^m E_l((-z)^{m-1} x); (-z)^{m-1} = (-1)^{m-1} z^{m-1}
        TruncatedSeries B = necklace_at(l, Rational(-sm), Expo{1, 0, m - 1, 0}, t) * Rational(sm);
        Rational c_coeff = (l & 1) ? -1 : 1;  // (-z)^l
        Expo c_expo{0, 0, l, 0};
        const int jmax = k_max / l;
        TruncatedSeries factor = TruncatedSeries::constant(1, t);
        TruncatedSeries binom = TruncatedSeries::constant(1, t);
        for (int j = 1; j <= jmax; ++j) {
            TruncatedSeries mult = B;
            mult.add_term(Expo{}, Rational(-(j - 1)));
            binom = binom * mult * Rational(1, j);
            TruncatedSeries coeff(t);
            Rational cpow = 1;
            for (int i = 0; i < j; ++i) cpow *= c_coeff;
            for (const auto& [e, v] : binom.terms())
                coeff.add_term(Expo{e.x, e.u, e.z + c_expo.z * j, 0}, v * cpow);
            factor += coeff * ci_detail::a_power(l, j, t);
        }
        result = result * factor;
    }
    return result;
}

// dim hom_{Sigma_k}(V, W) via the differential-operator pairing of cycle
// indices: sum over common a-monomials of coeff_V(1/z) * coeff_W(z) *
// prod_l l^{j_l} j_l!. The first argument is the source of the hom, so its
// homology grading enters inverted.
inline TruncatedSeries pair(const CycleIndex& zv, const CycleIndex& zw) {
    auto& reg = PartitionRegistry::instance();
    Trunc t{zv.trunc().max_x, zw.trunc().max_u, 0};
    TruncatedSeries out(t);
    std::map<int, std::vector<std::pair<Expo, Rational>>> by_part;
    for (const auto& [e, c] : zw.terms()) by_part[e.part].emplace_back(e, c);
    for (const auto& [ev, cv] : zv.terms()) {
        auto it = by_part.find(ev.part);
        if (it == by_part.end()) continue;
        Rational weight = 1;
        const auto& mults = reg.mults(ev.part);
        for (std::size_t i = 0; i < mults.size(); ++i) {
            for (int q = 0; q < mults[i]; ++q) weight *= Rational(static_cast<long>(i + 1));
            for (int q = 2; q <= mults[i]; ++q) weight *= q;
        }
        for (const auto& [ew, cw] : it->second)
            out.add_term(Expo{ev.x + ew.x, ev.u + ew.u, -ev.z + ew.z, 0}, cv * cw * weight);
    }
    return out;
}

// Euler characteristics chi_{st} for s <= S, t <= T by pairing the locally
// compact cycle index of R^m with the normalized configuration cycle index of
// R^n and specializing z = -1.
inline std::map<std::pair<int, int>, long long> euler_table_via_pairing(int m, int n, int S, int T) {
    const int k_max = 2 * T;
    CycleIndex zv = cycle_index_locally_compact(m, k_max, S);
    CycleIndex zw = cycle_index_conf_normalized(n, k_max, T);
    TruncatedSeries psi = pair(zv, zw).eval_z_minus_one();
    std::map<std::pair<int, int>, long long> out;
    for (const auto& [st, c] : psi.xu_coefficients()) {
        if (!is_integer(c)) throw std::logic_error("euler_table_via_pairing: non-integer entry");
        long long v = c.get_num().get_si();
        if (v) out[st] = v;
    }
    return out;
}

}  // namespace embgc
