#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "embgc/cycle_index.hpp"
#include "embgc/emb.hpp"
#include "embgc/engine.hpp"
#include "embgc/genfunc.hpp"
#include "embgc/tables.hpp"

namespace embgc {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace verify_detail {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

inline const std::map<std::string, std::pair<int, int>>& parity_reps() {
    // representatives with n >= 2m+2, one per parity class
    static const std::map<std::string, std::pair<int, int>> reps{
        {"oo", {3, 9}}, {"oe", {3, 8}}, {"eo", {2, 7}}, {"ee", {2, 6}}};
    return reps;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace verify_detail

// The reference tables: chi^pi and chi for 1 <= s,t <= 23 and all four parity
// classes, rendered to CSV and compared byte for byte with the shipped files.
inline CheckResult verify_appendix(const std::filesystem::path& data_dir) {
    verify_detail::Timer timer;
    CheckResult res{"appendix", true, "", 0};
    std::ostringstream detail;
    for (auto& [name, mn] : verify_detail::parity_reps()) {
        for (bool homotopy : {true, false}) {
            EulerTable table = homotopy ? genfunc_chi_pi(mn.first, mn.second, 23, 23)
                                        : genfunc_chi(mn.first, mn.second, 23, 23);
            table.s_min = table.t_min = 1;
            table.s_max = table.t_max = 23;
            std::string got = emit_table(table, TableFormat::Csv, homotopy);
            auto path = data_dir / "tables" /
                        (std::string("chi_") + (homotopy ? "homotopy" : "homology") + "_" + name + ".csv");
            std::string want = verify_detail::read_file(path);
            if (got != want) {
                res.pass = false;
                detail << " mismatch:" << path.filename().string();
            }
        }
    }
    res.detail = res.pass ? "8 tables byte-identical" : detail.str();
    res.seconds = timer.seconds();
    return res;
}

// chi tables by the cycle-index pairing vs the closed-form product.
inline CheckResult verify_pairing_vs_closed_form(int S = 12, int T = 10) {
    verify_detail::Timer timer;
    CheckResult res{"pairing-vs-closed-form", true, "", 0};
    std::ostringstream detail;
    for (auto& [name, mn] : verify_detail::parity_reps()) {
        auto [m, n] = mn;
        int mrep = (m & 1) ? 3 : 2, nrep = (n & 1) ? 3 : 4;  // small reps keep z-ranges tight
        auto paired = euler_table_via_pairing(mrep, nrep, S, T);
        auto direct = genfunc_chi(mrep, nrep, S, T);
        for (int s = 0; s <= S; ++s)
            for (int t = 0; t <= T; ++t) {
                long long a = paired.count({s, t}) ? paired.at({s, t}) : 0;
                if (a != direct.at(s, t)) {
                    res.pass = false;
                    detail << " " << name << "(" << s << "," << t << "):" << a
                           << "!=" << direct.at(s, t);
                }
            }
    }
    res.detail = res.pass ? "exact match at (S,T)=(" + std::to_string(S) + "," + std::to_string(T) + ")"
                          : detail.str();
    res.seconds = timer.seconds();
    return res;
}

// Euler characteristics of the enumerated complex vs the generating function.
inline CheckResult verify_euler_vs_genfunc(Engine& engine, int max_t = 5, unsigned jobs = 0) {
    verify_detail::Timer timer;
    CheckResult res{"complex-euler-vs-genfunc", true, "", 0};
    std::ostringstream detail;
    for (auto& [name, mn] : verify_detail::parity_reps()) {
        auto [m, n] = mn;
        auto want = genfunc_chi_pi(m, n, max_t + 1, max_t);
        std::vector<std::pair<int, int>> slices;
        for (int t = 1; t <= max_t; ++t)
            for (int s = 1; s <= t + 1; ++s) slices.emplace_back(s, t);
        std::vector<long long> got(slices.size());
        parallel_for(slices.size(), [&](std::size_t i) {
            got[i] = euler_epi(*engine.epi(m & 1, n & 1, slices[i].first, slices[i].second));
        }, jobs);
        for (std::size_t i = 0; i < slices.size(); ++i) {
            auto [s, t] = slices[i];
            if (got[i] != want.at(s, t)) {
                res.pass = false;
                detail << " " << name << "(" << s << "," << t << "):" << got[i] << "!=" << want.at(s, t);
            }
        }
    }
    res.detail = res.pass ? "all slices t<=" + std::to_string(max_t) + " agree" : detail.str();
    res.seconds = timer.seconds();
    return res;
}

// d o d = 0 on every enumerated slice of both complexes.
inline CheckResult verify_d_squared(Engine& engine, int max_t_e = 5, int max_t_hh = 3,
                                    unsigned jobs = 0) {
    verify_detail::Timer timer;
    CheckResult res{"d-squared", true, "", 0};
    std::ostringstream detail;
    std::mutex mu;
    std::vector<std::tuple<int, int, int, int, bool>> work;  // mpar, npar, s, t, is_hh
    for (int mpar = 0; mpar <= 1; ++mpar)
        for (int npar = 0; npar <= 1; ++npar) {
            for (int t = 1; t <= max_t_e; ++t)
                for (int s = 1; s <= t + 1; ++s) work.emplace_back(mpar, npar, s, t, false);
            for (int t = 1; t <= max_t_hh; ++t)
                for (int s = 1; s <= 2 * t; ++s) work.emplace_back(mpar, npar, s, t, true);
        }
    parallel_for(work.size(), [&](std::size_t i) {
        auto [mpar, npar, s, t, is_hh] = work[i];
        bool ok = true;
        if (is_hh) {
            auto slice = engine.hh(mpar, npar, s, t);
            for (auto& [k, mat] : slice->diff) {
                auto up = slice->diff.find(k + 1);
                if (up == slice->diff.end() || mat.rows == 0 || up->second.cols == 0) continue;
                if (multiply(mat, up->second).nnz() != 0) ok = false;
            }
        } else {
            auto slice = engine.epi(mpar, npar, s, t);
            for (auto& [I, mat] : slice->diff) {
                auto up = slice->diff.find(I + 1);
                if (up == slice->diff.end() || up->second.rows == 0 || mat.cols == 0) continue;
                if (multiply(up->second, mat).nnz() != 0) ok = false;
            }
        }
        if (!ok) {
            std::lock_guard<std::mutex> lock(mu);
            res.pass = false;
            detail << " " << (is_hh ? "hh" : "e") << "(" << mpar << npar << ";" << s << "," << t << ")";
        }
    }, jobs);
    res.detail = res.pass ? "all compositions vanish (e t<=" + std::to_string(max_t_e) +
                                ", hh t<=" + std::to_string(max_t_hh) + ")"
                          : "nonzero:" + detail.str();
    res.seconds = timer.seconds();
    return res;
}

// Expected homology of the complexity <= 3 slices, by parity.
inline std::map<std::pair<int, int>, std::map<int, long long>> low_complexity_expected(int m, int n) {
    std::map<std::pair<int, int>, std::map<int, long long>> out;
    const bool modd = m & 1, nodd = n & 1;
    if ((n - m) % 2 == 0) out[{2, 1}][n - 2 * m - 1] = 1;
    if (!nodd) out[{1, 1}][n - m - 2] = 1;
    if ((n - m) % 2 == 1) out[{3, 2}][2 * n - 3 * m - 3] = 1;
    if (modd && nodd) out[{2, 2}][2 * n - 2 * m - 4] = 1;
    if (nodd) out[{1, 2}][2 * n - m - 4] = 1;
    if (!modd) out[{3, 3}][3 * n - 3 * m - 6] = 1;
    if (modd) out[{2, 3}][3 * n - 2 * m - 7] = 1;
    out[{1, 3}][3 * n - m - 7] = 1;
    return out;
}

// Homology ranks and degrees of every slice with t <= 3 against the known
// low-complexity classification, for six (m, n) pairs.
inline CheckResult verify_low_complexity(Engine& engine, unsigned jobs = 0) {
    verify_detail::Timer timer;
    CheckResult res{"low-complexity-homology", true, "", 0};
    std::ostringstream detail;
    std::mutex mu;
    const std::vector<std::pair<int, int>> pairs{{1, 4}, {1, 5}, {2, 6}, {2, 7}, {3, 8}, {3, 9}};
    std::vector<std::tuple<int, int, int, int>> work;
    for (auto [m, n] : pairs)
        for (int t = 1; t <= 3; ++t)
            for (int s = 1; s <= t + 1; ++s) work.emplace_back(m, n, s, t);
    parallel_for(work.size(), [&](std::size_t i) {
        auto [m, n, s, t] = work[i];
        auto slice = engine.epi(m & 1, n & 1, s, t);
        auto got = homology_ranks_epi(*slice, m, n, RankMethod::Exact);
        auto table = low_complexity_expected(m, n);
        auto want = table.count({s, t}) ? table.at({s, t}) : std::map<int, long long>{};
        if (got != want) {
            std::lock_guard<std::mutex> lock(mu);
            res.pass = false;
            detail << " (m,n)=(" << m << "," << n << ")(s,t)=(" << s << "," << t << ")";
        }
    }, jobs);
    res.detail = res.pass ? "ranks and degrees match for all six (m,n) pairs, t<=3" : detail.str();
    res.seconds = timer.seconds();
    return res;
}

// Wheel pattern at (t,t) for t <= 6 and vanishing of the tree slices (t+1,t)
// for t in {3,4}.
inline CheckResult verify_wheels_and_trees(Engine& engine, unsigned jobs = 0) {
    verify_detail::Timer timer;
    CheckResult res{"wheels-and-trees", true, "", 0};
    std::ostringstream detail;
    std::mutex mu;
    auto wheel_lives = [](int mpar, int npar, int t) {
        if (mpar && npar) return t % 2 == 0;
        if (mpar && !npar) return t % 4 == 1;
        if (!mpar && npar) return t % 4 == 3;
        return t % 2 == 1;
    };
    std::vector<std::tuple<std::string, int, int, int, int, bool>> work;  // name, m, n, s, t, is_tree
    for (auto& [name, mn] : verify_detail::parity_reps()) {
        for (int t = 1; t <= 6; ++t) work.emplace_back(name, mn.first, mn.second, t, t, false);
        for (int t : {3, 4}) work.emplace_back(name, mn.first, mn.second, t + 1, t, true);
    }
    parallel_for(work.size(), [&](std::size_t i) {
        auto [name, m, n, s, t, is_tree] = work[i];
        auto slice = engine.epi(m & 1, n & 1, s, t);
        auto h = homology_ranks_epi(*slice, m, n, RankMethod::Exact);
        bool ok;
        if (is_tree) {
            ok = h.empty();
        } else {
            std::map<int, long long> want;
            if (wheel_lives(m & 1, n & 1, t)) want[(n - m - 2) * t] = 1;
            ok = h == want;
            if (ok && !h.empty()) {
                // the generating cycle is the t-wheel
                ok = canonicalize(wheel_graph(t), m & 1, n & 1).sign != 0;
            }
        }
        if (!ok) {
            std::lock_guard<std::mutex> lock(mu);
            res.pass = false;
            detail << " " << name << (is_tree ? " tree" : " wheel") << " t=" << t;
        }
    }, jobs);
    res.detail = res.pass ? "wheel parity pattern t<=6; tree slices vanish for t=3,4" : detail.str();
    res.seconds = timer.seconds();
    return res;
}

// The two complexes agree: per-(s,t) Euler characteristics and per-degree
// homology ranks, for t <= max_t.
inline CheckResult verify_cross_complex(Engine& engine, int max_t = 3, unsigned jobs = 0) {
    verify_detail::Timer timer;
    CheckResult res{"cross-complex", true, "", 0};
    std::ostringstream detail;
    std::mutex mu;
    std::vector<std::tuple<std::string, int, int, int, int>> work;
    for (auto& [name, mn] : verify_detail::parity_reps())
        for (int t = 1; t <= max_t; ++t)
            for (int s = 1; s <= 2 * t; ++s) work.emplace_back(name, mn.first, mn.second, s, t);
    parallel_for(work.size(), [&](std::size_t i) {
        auto [name, m, n, s, t] = work[i];
        auto hh = engine.hh(m & 1, n & 1, s, t);
        long long chi_hh = euler_hh(*hh);
        auto ranks_hh_map = homology_ranks_hh(*hh, m, n, RankMethod::Exact);
        long long chi_e = 0;
        std::map<int, long long> ranks_e_map;
        if (s <= t + 1) {
            auto e = engine.epi(m & 1, n & 1, s, t);
            chi_e = euler_epi(*e);
            ranks_e_map = homology_ranks_epi(*e, m, n, RankMethod::Exact);
        }
        if (chi_hh != chi_e || ranks_hh_map != ranks_e_map) {
            std::lock_guard<std::mutex> lock(mu);
            res.pass = false;
            detail << " " << name << "(" << s << "," << t << ")";
        }
    }, jobs);
    res.detail = res.pass ? "Euler characteristics and homology ranks agree for t<=" +
                                std::to_string(max_t)
                          : detail.str();
    res.seconds = timer.seconds();
    return res;
}

// Connecting-image classes against the complex, and the passage to the
// embedding space against the summary dimensions, within degree 3n-m-7.
inline CheckResult verify_embedding_calculus(Engine& engine, unsigned jobs = 0) {
    verify_detail::Timer timer;
    CheckResult res{"embedding-calculus", true, "", 0};
    std::ostringstream detail;

    // (a) connecting-image degrees match the designated slices
    for (auto [m, n] : {std::pair{1, 4}, {1, 5}, {2, 6}, {2, 7}, {3, 8}, {3, 9}}) {
        std::map<std::pair<int, int>, std::map<int, long long>> expected;
        for (auto& [cls, degree, t] : connecting_image(m, n).classes)
            expected[connecting_class_slice(cls)][degree] += 1;
        for (auto st : {std::pair{2, 1}, {1, 1}, {1, 2}}) {
            auto slice = engine.epi(m & 1, n & 1, st.first, st.second);
            auto got = homology_ranks_epi(*slice, m, n, RankMethod::Exact);
            auto want = expected.count(st) ? expected.at(st) : std::map<int, long long>{};
            if (got != want) {
                res.pass = false;
                detail << " connecting(" << m << "," << n << ")";
            }
        }
    }

    // (b) fiber homotopy ranks within the window match the summary table, and
    // the rank adjustment lands exactly on the stated degrees
    for (auto [m, n] : {std::pair{2, 7}, {3, 9}, {2, 8}, {3, 8}}) {
        const int cutoff = 3 * n - m - 7;
        std::vector<std::pair<int, int>> slices;
        for (int t = 1; t <= 5; ++t)
            for (int s = 1; s <= t + 1; ++s)
                if ((n - 3) * t - (m - 1) * s <= cutoff) slices.emplace_back(s, t);
        std::map<int, long long> bar;
        std::mutex mu;
        parallel_for(slices.size(), [&](std::size_t i) {
            auto [s, t] = slices[i];
            auto slice = engine.epi(m & 1, n & 1, s, t);
            auto h = homology_ranks_epi(*slice, m, n, RankMethod::Exact);
            std::lock_guard<std::mutex> lock(mu);
            for (auto& [d, r] : h)
                if (d <= cutoff) bar[d] += r;
        }, jobs);
        std::map<int, long long> want;
        for (auto& e : summary_generator_dims(m, n))
            if (e.degree <= cutoff) want[e.degree] += 1;
        if (bar != want) {
            res.pass = false;
            detail << " summary(" << m << "," << n << ")";
            continue;
        }
        // adjustment: -1 exactly at connecting degrees, +1 at the surviving
        // Pontryagin degrees
        auto adjusted = emb_rank_adjust(m, n, bar);
        std::map<int, long long> expect_adj = bar;
        auto apply = [&](int d, long long delta) {
            if (d > cutoff) return;
            expect_adj[d] += delta;
            if (expect_adj[d] == 0) expect_adj.erase(d);
        };
        for (auto& [cls, degree, t] : connecting_image(m, n).classes) apply(degree, -1);
        const bool modd = m & 1, nodd = n & 1;
        int top = nodd ? 2 * n - m - 7 : 2 * n - m - 5;
        int kmax = modd ? (m - 3) / 2 : (nodd ? (m - 4) / 2 : (m - 2) / 2);
        for (int k = 0; k <= kmax; ++k) apply(top - 4 * k, +1);
        std::erase_if(adjusted, [&](auto& kv) { return kv.first > cutoff; });
        if (adjusted != expect_adj) {
            res.pass = false;
            detail << " adjust(" << m << "," << n << ")";
        }
    }
    res.detail = res.pass ? "connecting image and summary dimensions reproduced" : detail.str();
    res.seconds = timer.seconds();
    return res;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, Engine& engine,
                                          const std::filesystem::path& data_dir, int max_t,
                                          unsigned jobs) {
    std::vector<CheckResult> out;
    if (suite == "appendix") {
        out.push_back(verify_appendix(data_dir));
    } else if (suite == "small-complexity") {
        out.push_back(verify_low_complexity(engine, jobs));
        out.push_back(verify_wheels_and_trees(engine, jobs));
        out.push_back(verify_embedding_calculus(engine, jobs));
    } else if (suite == "cross-method") {
        out.push_back(verify_pairing_vs_closed_form());
        out.push_back(verify_euler_vs_genfunc(engine, max_t > 0 ? max_t : 5, jobs));
        out.push_back(verify_cross_complex(engine, std::min(max_t > 0 ? max_t : 3, 3), jobs));
    } else if (suite == "d-squared") {
        out.push_back(verify_d_squared(engine, max_t > 0 ? max_t : 5,
                                       std::min(max_t > 0 ? max_t : 3, 3), jobs));
    } else {
        throw std::invalid_argument("unknown verify suite '" + suite + "'");
    }
    return out;
}

}  // namespace embgc
