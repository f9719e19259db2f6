// Command-line driver: Euler-characteristic tables, homology ranks, golden
// verification suites, and the Stiefel/embedding bookkeeping.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "embgc/cycle_index.hpp"
#include "embgc/emb.hpp"
#include "embgc/engine.hpp"
#include "embgc/genfunc.hpp"
#include "embgc/tables.hpp"
#include "embgc/verify.hpp"

using namespace embgc;

namespace {

int parse_dim(const std::string& text, const char* what) {
    if (text == "odd") return 3;
    if (text == "even") return 2;
    try {
        int v = std::stoi(text);
        if (v < 1) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(what) + " must be 'odd', 'even' or a positive integer");
    }
}

std::filesystem::path cache_root(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("EMBGC_CACHE")) return env;
    return {};
}

EulerTable table_to_window(EulerTable t, int S, int T) {
    t.s_min = 1;
    t.t_min = 1;
    t.s_max = S;
    t.t_max = T;
    return t;
}

TruncatedSeries series_from_table(const EulerTable& table, int S, int T) {
    TruncatedSeries f(Trunc{S, T, 0});
    for (auto& [st, v] : table.entries) f.add_term(Expo{st.first, st.second, 0, 0}, Rational((long)v));
    return f;
}

struct EulerOptions {
    std::string m = "odd", n = "odd", method = "genfunc", output = "csv";
    int max_s = 10, max_t = 6;
    bool homotopy = false;
    int enum_limit_e = 6, enum_limit_hh = 3;
    std::string cache_dir;
    unsigned jobs = 0;
};

int run_euler(const EulerOptions& opt) {
    int m = parse_dim(opt.m, "--m"), n = parse_dim(opt.n, "--n");
    const int S = opt.max_s, T = opt.max_t;
    if (T == 0) {
        // only the empty graph contributes: chi_00 = 1, chi^pi empty
        EulerTable t0;
        t0.method = opt.method;
        t0.s_min = 0;
        t0.t_min = 0;
        t0.s_max = S;
        t0.t_max = 0;
        if (!opt.homotopy) t0.set(0, 0, 1);
        std::cout << emit_table(t0, parse_table_format(opt.output), opt.homotopy);
        return 0;
    }
    EulerTable table;
    if (opt.method == "genfunc") {
        auto f = genfunc_F(m, n, S, T);
        table = opt.homotopy ? chi_pi_from_F(f, S, T) : euler_table_from_F(f, S, T);
        table.method = "genfunc";
    } else if (opt.method == "pairing") {
        auto chi = euler_table_via_pairing((m & 1) ? 3 : 2, (n & 1) ? 3 : 4, S, T);
        EulerTable chi_table;
        chi_table.method = "pairing";
        chi_table.s_max = S;
        chi_table.t_max = T;
        for (auto& [st, v] : chi) chi_table.set(st.first, st.second, v);
        table = opt.homotopy ? chi_pi_from_F(series_from_table(chi_table, S, T), S, T) : chi_table;
        table.method = "pairing";
    } else if (opt.method == "complex-e" || opt.method == "complex-hh") {
        const bool hh = opt.method == "complex-hh";
        const int limit = hh ? opt.enum_limit_hh : opt.enum_limit_e;
        if (T > limit) {
            std::cerr << "error: enumeration limit (t <= " << limit
                      << ") too small for requested range; raise --enum-limit\n";
            return 2;
        }
        Engine engine(cache_root(opt.cache_dir));
        EulerTable pi;
        pi.method = opt.method;
        pi.s_max = S;
        pi.t_max = std::max(T, 1);
        std::vector<std::pair<int, int>> slices;
        for (int t = 1; t <= T; ++t)
            for (int s = 1; s <= std::min(S, hh ? 2 * t : t + 1); ++s) slices.emplace_back(s, t);
        std::vector<long long> chi(slices.size());
        parallel_for(slices.size(), [&](std::size_t i) {
            auto [s, t] = slices[i];
            chi[i] = hh ? euler_hh(*engine.hh(m & 1, n & 1, s, t))
                        : euler_epi(*engine.epi(m & 1, n & 1, s, t));
        }, opt.jobs);
        for (std::size_t i = 0; i < slices.size(); ++i) pi.set(slices[i].first, slices[i].second, chi[i]);
        table = opt.homotopy ? pi : euler_h_from_pi(pi, S, T);
        table.method = opt.method;
    } else {
        std::cerr << "error: unknown method '" << opt.method << "'\n";
        return 2;
    }
    table = table_to_window(std::move(table), S, T);
    std::cout << emit_table(table, parse_table_format(opt.output), opt.homotopy);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-complex calculator for spaces of long embeddings"};
    app.require_subcommand(1);

    EulerOptions eopt;
    auto* euler = app.add_subcommand("euler", "Euler-characteristic tables by (s, t)");
    euler->add_option("--m", eopt.m, "source dimension or parity (odd/even)");
    euler->add_option("--n", eopt.n, "target dimension or parity (odd/even)");
    euler->add_option("--max-s", eopt.max_s, "largest Hodge degree");
    euler->add_option("--max-t", eopt.max_t, "largest complexity");
    euler->add_option("--method", eopt.method, "genfunc | pairing | complex-e | complex-hh");
    euler->add_flag("--homotopy", eopt.homotopy, "homotopy table chi^pi instead of chi");
    euler->add_option("--output", eopt.output, "csv | json | md");
    euler->add_option("--cache-dir", eopt.cache_dir, "slice cache directory (or $EMBGC_CACHE)");
    euler->add_option("--jobs", eopt.jobs, "worker threads");
    euler->add_option("--enum-limit", eopt.enum_limit_e, "largest complexity enumerated for complex-e");
    euler->add_option("--enum-limit-hh", eopt.enum_limit_hh, "largest complexity for complex-hh");

    struct {
        int m = 3, n = 9, s = 2, t = 1;
        std::string complex_kind = "e", rank_method = "auto", output = "csv", cache_dir;
        bool reduced = false;
    } hopt;
    auto* hom = app.add_subcommand("homology", "homology ranks of one (s, t) slice");
    hom->add_option("--m", hopt.m)->required();
    hom->add_option("--n", hopt.n)->required();
    hom->add_option("--s", hopt.s)->required();
    hom->add_option("--t", hopt.t)->required();
    hom->add_option("--complex", hopt.complex_kind, "e | hh");
    hom->add_option("--rank-method", hopt.rank_method, "auto | exact | modular");
    hom->add_flag("--reduced", hopt.reduced, "drop loop-bearing graphs (n even, t >= 2)");
    hom->add_option("--output", hopt.output, "csv | json | md");
    hom->add_option("--cache-dir", hopt.cache_dir);

    struct {
        std::string suite, data = "data", cache_dir, output = "csv";
        int max_t = 0;
        unsigned jobs = 0;
    } vopt;
    auto* ver = app.add_subcommand("verify", "golden verification suites");
    ver->add_option("suite", vopt.suite, "appendix | small-complexity | cross-method | d-squared")
        ->required();
    ver->add_option("--data", vopt.data, "directory holding the reference tables");
    ver->add_option("--max-t", vopt.max_t, "override the default complexity bound");
    ver->add_option("--cache-dir", vopt.cache_dir);
    ver->add_option("--jobs", vopt.jobs);
    ver->add_option("--output", vopt.output, "csv | json");

    struct {
        int m = 3, n = 9, max_t = 3;
        std::string cache_dir, output = "csv";
        unsigned jobs = 0;
    } aopt;
    auto* adj = app.add_subcommand("emb-adjust",
                                   "homotopy ranks of the embedding space from the fiber ranks");
    adj->add_option("--m", aopt.m)->required();
    adj->add_option("--n", aopt.n)->required();
    adj->add_option("--max-t", aopt.max_t, "complexity bound for the fiber ranks");
    adj->add_option("--cache-dir", aopt.cache_dir);
    adj->add_option("--jobs", aopt.jobs);
    adj->add_option("--output", aopt.output, "csv | json");

    struct {
        int m = 3, n = 9;
        std::string output = "csv";
    } sopt;
    auto* sti = app.add_subcommand("stiefel", "rational homotopy of the space of linear injections");
    sti->add_option("--m", sopt.m)->required();
    sti->add_option("--n", sopt.n)->required();
    sti->add_option("--output", sopt.output, "csv | json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (euler->parsed()) return run_euler(eopt);

        if (hom->parsed()) {
            Engine engine(cache_root(hopt.cache_dir));
            RankMethod rm = hopt.rank_method == "exact"     ? RankMethod::Exact
                            : hopt.rank_method == "modular" ? RankMethod::Modular
                                                            : RankMethod::Auto;
            struct Row {
                int degree, dim, rank_out, rank_in;
                long long h;
            };
            std::vector<Row> rows;
            if (hopt.complex_kind == "e") {
                auto slice = engine.epi(hopt.m & 1, hopt.n & 1, hopt.s, hopt.t, hopt.reduced);
                std::map<int, int> rk;
                for (auto& [I, mat] : slice->diff) rk[I] = rank(mat, rm);
                for (auto& [I, basis] : slice->bases) {
                    int out = rk.count(I) ? rk[I] : 0, in = rk.count(I - 1) ? rk[I - 1] : 0;
                    rows.push_back({slice->degree_of_level(I, hopt.m, hopt.n), (int)basis.size(), out,
                                    in, (long long)basis.size() - out - in});
                }
            } else if (hopt.complex_kind == "hh") {
                auto slice = engine.hh(hopt.m & 1, hopt.n & 1, hopt.s, hopt.t);
                std::map<int, int> rk;
                for (auto& [k, mat] : slice->diff) rk[k] = rank(mat, rm);
                for (auto& [k, level] : slice->levels) {
                    int out = rk.count(k) ? rk[k] : 0, in = rk.count(k + 1) ? rk[k + 1] : 0;
                    rows.push_back({slice->degree_of_level(k, hopt.m, hopt.n),
                                    (int)level.basis.size(), out, in,
                                    (long long)level.basis.size() - out - in});
                }
            } else {
                std::cerr << "error: unknown complex '" << hopt.complex_kind << "'\n";
                return 2;
            }
            std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.degree < b.degree; });
            auto fmt = parse_table_format(hopt.output);
            if (fmt == TableFormat::Json) {
                std::cout << "{\"rows\":[";
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    auto& r = rows[i];
                    std::cout << (i ? "," : "") << "{\"degree\":" << r.degree << ",\"dim\":" << r.dim
                              << ",\"rank_out\":" << r.rank_out << ",\"rank_in\":" << r.rank_in
                              << ",\"homology\":" << r.h << "}";
                }
                std::cout << "],\"cache_hits\":" << engine.cache_hits()
                          << ",\"computed\":" << engine.computed() << "}\n";
            } else {
                std::cout << "degree,dim,rank_out,rank_in,homology\n";
                for (auto& r : rows)
                    std::cout << r.degree << ',' << r.dim << ',' << r.rank_out << ',' << r.rank_in
                              << ',' << r.h << '\n';
                std::cout << "# cache hits: " << engine.cache_hits()
                          << ", computed: " << engine.computed() << '\n';
            }
            return 0;
        }

        if (ver->parsed()) {
            Engine engine(cache_root(vopt.cache_dir));
            auto results = run_suite(vopt.suite, engine, vopt.data, vopt.max_t, vopt.jobs);
            bool all = true;
            if (vopt.output == "json") {
                std::cout << "{\"suite\":\"" << vopt.suite << "\",\"checks\":[";
                for (std::size_t i = 0; i < results.size(); ++i) {
                    auto& r = results[i];
                    all = all && r.pass;
                    std::cout << (i ? "," : "") << "{\"name\":\"" << r.name << "\",\"pass\":"
                              << (r.pass ? "true" : "false") << ",\"detail\":\"" << r.detail
                              << "\",\"seconds\":" << r.seconds << "}";
                }
                std::cout << "],\"pass\":" << (all ? "true" : "false") << "}\n";
            } else {
                for (auto& r : results) {
                    all = all && r.pass;
                    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.name << ": " << r.detail << " ("
                              << r.seconds << "s)\n";
                }
            }
            return all ? 0 : 1;
        }

        if (adj->parsed()) {
            if (aopt.n < 2 * aopt.m + 2) {
                std::cerr << "error: need n >= 2m+2\n";
                return 2;
            }
            Engine engine(cache_root(aopt.cache_dir));
            std::map<int, long long> bar;
            std::mutex mu;
            std::vector<std::pair<int, int>> slices;
            for (int t = 1; t <= aopt.max_t; ++t)
                for (int s = 1; s <= t + 1; ++s) slices.emplace_back(s, t);
            parallel_for(slices.size(), [&](std::size_t i) {
                auto [s, t] = slices[i];
                auto h = homology_ranks_epi(*engine.epi(aopt.m & 1, aopt.n & 1, s, t), aopt.m, aopt.n);
                std::lock_guard<std::mutex> lock(mu);
                for (auto& [d, r] : h) bar[d] += r;
            }, aopt.jobs);
            auto adjusted = emb_rank_adjust(aopt.m, aopt.n, bar);
            if (aopt.output == "json") {
                auto dump = [](const std::map<int, long long>& m) {
                    std::string out = "[";
                    bool first = true;
                    for (auto& [d, r] : m) {
                        out += (first ? "" : ",") + std::string("[") + std::to_string(d) + "," +
                               std::to_string(r) + "]";
                        first = false;
                    }
                    return out + "]";
                };
                std::cout << "{\"fiber\":" << dump(bar) << ",\"embedding\":" << dump(adjusted)
                          << ",\"max_t\":" << aopt.max_t << "}\n";
            } else {
                std::cout << "degree,fiber_rank,embedding_rank\n";
                std::set<int> degrees;
                for (auto& [d, r] : bar) degrees.insert(d);
                for (auto& [d, r] : adjusted) degrees.insert(d);
                for (int d : degrees)
                    std::cout << d << ',' << (bar.count(d) ? bar[d] : 0) << ','
                              << (adjusted.count(d) ? adjusted[d] : 0) << '\n';
                std::cout << "# fiber ranks from complexity <= " << aopt.max_t << '\n';
            }
            return 0;
        }

        if (sti->parsed()) {
            auto list = stiefel_homotopy(sopt.m, sopt.n);
            if (sopt.output == "json") {
                std::cout << "{\"classes\":[";
                for (std::size_t i = 0; i < list.classes.size(); ++i) {
                    auto& [d, label] = list.classes[i];
                    std::cout << (i ? "," : "") << "{\"degree\":" << d << ",\"type\":\""
                              << (label == StiefelClass::Euler ? "euler" : "pontryagin") << "\"}";
                }
                std::cout << "]}\n";
            } else {
                std::cout << "degree,type\n";
                for (auto& [d, label] : list.classes)
                    std::cout << d << ',' << (label == StiefelClass::Euler ? "euler" : "pontryagin")
                              << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
