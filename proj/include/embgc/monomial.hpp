#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "embgc/rational.hpp"

namespace embgc {

// A product of generators a_{ij} on labeled vertices 1..k, each generator a
// directed pair. Generators have degree (dim-1) and satisfy
//   a_ij = (-1)^dim a_ji,   a_ij^2 = 0,
//   a_ij a_jk + a_jk a_ki + a_ki a_ij = 0,
// where dim is the ambient dimension (n for the full color, m for the dotted
// one); only its parity matters.
using Monomial = std::vector<std::pair<int, int>>;
using MonomialCombination = std::map<Monomial, Rational>;

// Rewrites a monomial into the admissible basis: every generator written with
// i < j and the second indices distinct and strictly increasing. Monomials
// whose graph contains a cycle or a repeated generator reduce to zero.
inline MonomialCombination straighten(const Monomial& input, int dim_parity) {
    const int dpar = dim_parity & 1;        // reversal sign (-1)^dim
    const int gpar = (dim_parity + 1) & 1;  // generator degree parity (dim-1)
    MonomialCombination out;
    std::vector<std::pair<Monomial, Rational>> stack{{input, Rational(1)}};
    while (!stack.empty()) {
        auto [mono, coeff] = std::move(stack.back());
        stack.pop_back();
        bool dead = false;
        for (auto& [a, b] : mono) {
            if (a == b) {
                dead = true;
                break;
            }
            if (a > b) {
                std::swap(a, b);
                if (dpar) coeff = -coeff;
            }
        }
        if (dead) continue;
        // insertion sort by (second, first); each adjacent swap contributes
        // (-1)^{(dim-1)^2}
        long swaps = 0;
        for (std::size_t i = 1; i < mono.size(); ++i)
            for (std::size_t j = i; j > 0; --j) {
                auto key = [](const std::pair<int, int>& g) { return std::pair(g.second, g.first); };
                if (key(mono[j]) < key(mono[j - 1])) {
                    std::swap(mono[j], mono[j - 1]);
                    ++swaps;
                } else {
                    break;
                }
            }
        if (gpar && (swaps & 1)) coeff = -coeff;
        bool repeated = false;
        std::size_t dup = mono.size();
        for (std::size_t i = 0; i + 1 < mono.size(); ++i) {
            if (mono[i] == mono[i + 1]) {
                repeated = true;
                break;
            }
            if (mono[i].second == mono[i + 1].second) {
                dup = i;
                break;
            }
        }
        if (repeated) continue;
        if (dup == mono.size()) {
            auto it = out.find(mono);
            if (it == out.end())
                out.emplace(std::move(mono), coeff);
            else {
                it->second += coeff;
                if (it->second == 0) out.erase(it);
            }
            continue;
        }
        // a_{aj} a_{bj} = a_{ab} a_{bj} + (-1)^dim a_{aj} a_{ab}
        auto [a, j] = mono[dup];
        int b = mono[dup + 1].first;
        Monomial t1 = mono, t2 = mono;
        t1[dup] = {a, b};      // stays next to (b, j)
        t2[dup + 1] = {a, b};  // (a, j) stays
        stack.emplace_back(std::move(t1), coeff);
        stack.emplace_back(std::move(t2), dpar ? -coeff : coeff);
    }
    return out;
}

inline MonomialCombination straighten(const MonomialCombination& input, int dim_parity) {
    MonomialCombination out;
    for (const auto& [mono, c] : input)
        for (const auto& [adm, c2] : straighten(mono, dim_parity)) {
            auto it = out.find(adm);
            if (it == out.end())
                out.emplace(adm, c * c2);
            else {
                it->second += c * c2;
                if (it->second == 0) out.erase(it);
            }
        }
    return out;
}

// All admissible monomials with r generators on vertices 1..k: choose r
// distinct second indices and, for each j, a first index i < j.
inline std::vector<Monomial> admissible_monomials(int k, int r) {
    if (r < 0 || r > k - 1) return {};
    std::vector<Monomial> out;
    Monomial cur;
    auto rec = [&](auto&& self, int next_j, int left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int j = next_j; j <= k - left + 1; ++j)
            for (int i = 1; i < j; ++i) {
                cur.emplace_back(i, j);
                self(self, j + 1, left - 1);
                cur.pop_back();
            }
    };
    rec(rec, 2, r);
    return out;
}

inline long long admissible_basis_dim(int k, int r) {
    if (r < 0 || r > k - 1) throw std::out_of_range("admissible_basis_dim: need 0 <= r <= k-1");
    // e_r(1, 2, ..., k-1), counted without materializing the monomials
    std::vector<long long> e(r + 1, 0);
    e[0] = 1;
    for (int v = 1; v <= k - 1; ++v)
        for (int i = std::min<int>(r, v); i >= 1; --i) e[i] += e[i - 1] * v;
    return e[r];
}

// Admissible oriented forests on singletons 1..k with s connected components
// (components count singletons); these are exactly the admissible monomials
// with k - s generators. Orientation data: components have degree m, edges
// degree 1, ordered [components by minimal element][edges in monomial order].
inline std::vector<Monomial> kq_basis(int k, int s) {
    if (s < 1 || s > k) throw std::out_of_range("kq_basis: need 1 <= s <= k");
    return admissible_monomials(k, k - s);
}

}  // namespace embgc
