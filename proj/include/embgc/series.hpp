#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "embgc/rational.hpp"

namespace embgc {

// Partitions appear as monomials in the cycle-index variables a_1, a_2, ...;
// they are interned globally. A partition is stored as multiplicities
// (j_1, j_2, ...) with trailing zeros trimmed; its weight is sum(l * j_l).
class PartitionRegistry {
public:
    static PartitionRegistry& instance() {
        static PartitionRegistry reg;
        return reg;
    }

    int intern(std::vector<int> mults) {
        while (!mults.empty() && mults.back() == 0) mults.pop_back();
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(mults);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(parts_.size());
        ids_.emplace(mults, id);
        weights_.push_back(weight_of(mults));
        parts_.push_back(std::move(mults));
        return id;
    }

    const std::vector<int>& mults(int id) const { return parts_[id]; }
    int weight(int id) const { return weights_[id]; }

    int multiply(int a, int b) {
        if (a == 0) return b;
        if (b == 0) return a;
        std::vector<int> m = parts_[a];
        const auto& o = parts_[b];
        if (o.size() > m.size()) m.resize(o.size(), 0);
        for (std::size_t i = 0; i < o.size(); ++i) m[i] += o[i];
        return intern(std::move(m));
    }

private:
    PartitionRegistry() { intern({}); }  // id 0 = empty partition
    static int weight_of(const std::vector<int>& m) {
        int w = 0;
        for (std::size_t i = 0; i < m.size(); ++i) w += static_cast<int>(i + 1) * m[i];
        return w;
    }
    std::mutex mu_;
    std::map<std::vector<int>, int> ids_;
    std::vector<std::vector<int>> parts_;
    std::vector<int> weights_;
};

// Exponent of one series term: x (Hodge degree), u (complexity), z (homology
// degree, a Laurent exponent), and a cycle-index monomial.
struct Expo {
    int x = 0;
    int u = 0;
    int z = 0;
    int part = 0;
    friend auto operator<=>(const Expo&, const Expo&) = default;
};

struct Trunc {
    int max_x = 0;       // keep x-exponents <= max_x
    int max_u = 0;       // keep u-exponents <= max_u (negative allowed in intermediates)
    int max_aweight = 0; // keep partition weight <= max_aweight
};

// Multivariate series with rational coefficients, truncated from above in x
// and u and in the a-weight; z is tracked exactly.
class TruncatedSeries {
public:
    explicit TruncatedSeries(Trunc t = {}) : trunc_(t) {}

    static TruncatedSeries constant(const Rational& c, Trunc t = {}) {
        TruncatedSeries s(t);
        if (c != 0) s.coeffs_[Expo{}] = c;
        return s;
    }
    static TruncatedSeries monomial(const Rational& c, Expo e, Trunc t = {}) {
        TruncatedSeries s(t);
        s.add_term(e, c);
        return s;
    }

    const Trunc& trunc() const { return trunc_; }
    const std::map<Expo, Rational>& terms() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    void add_term(const Expo& e, const Rational& c) {
        if (c == 0 || !keep(e)) return;
        auto it = coeffs_.find(e);
        if (it == coeffs_.end())
            coeffs_.emplace(e, c);
        else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    Rational coefficient(const Expo& e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

    TruncatedSeries& operator*=(const Rational& c) {
        if (c == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [e, v] : coeffs_) v *= c;
        return *this;
    }
    friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries out(a.trunc_);
        auto& reg = PartitionRegistry::instance();
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) {
                Expo e{ea.x + eb.x, ea.u + eb.u, ea.z + eb.z, 0};
                if (e.x > a.trunc_.max_x || e.u > a.trunc_.max_u) continue;
                if (ea.part || eb.part) {
                    e.part = reg.multiply(ea.part, eb.part);
                    if (reg.weight(e.part) > a.trunc_.max_aweight) continue;
                }
                out.add_term(e, ca * cb);
            }
        return out;
    }

    // substitute z = -1: fold z-exponents into signs
    TruncatedSeries eval_z_minus_one() const {
        TruncatedSeries out(trunc_);
        for (const auto& [e, c] : coeffs_) {
            Expo e2{e.x, e.u, 0, e.part};
            out.add_term(e2, (e.z & 1) ? -c : c);
        }
        return out;
    }

    // coefficient of every (x, u) pair, requiring z-free and partition-free terms
    std::map<std::pair<int, int>, Rational> xu_coefficients() const {
        std::map<std::pair<int, int>, Rational> out;
        for (const auto& [e, c] : coeffs_) {
            if (e.z != 0 || e.part != 0)
                throw std::logic_error("xu_coefficients: series still carries z or a-variables");
            out[{e.x, e.u}] = c;
        }
        return out;
    }

private:
    bool keep(const Expo& e) const {
        if (e.x > trunc_.max_x || e.u > trunc_.max_u) return false;
        if (e.part && PartitionRegistry::instance().weight(e.part) > trunc_.max_aweight) return false;
        return true;
    }

    Trunc trunc_;
    std::map<Expo, Rational> coeffs_;
};

}  // namespace embgc
