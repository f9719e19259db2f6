#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "embgc/rational.hpp"
#include "embgc/series.hpp"

namespace embgc {

// Bigraded Euler characteristics, (s, t) -> integer, zeros omitted.
struct EulerTable {
    std::map<std::pair<int, int>, long long> entries;
    std::string method;
    int s_min = 1, s_max = 0;
    int t_min = 1, t_max = 0;

    long long at(int s, int t) const {
        auto it = entries.find({s, t});
        return it == entries.end() ? 0 : it->second;
    }
    void set(int s, int t, long long v) {
        if (v)
            entries[{s, t}] = v;
        else
            entries.erase({s, t});
    }
};

// Homology ranks, (degree, s, t) -> nonnegative integer.
struct RankTable {
    std::map<std::tuple<int, int, int>, long long> entries;

    void set(int degree, int s, int t, long long v) {
        if (v < 0) throw std::invalid_argument("RankTable: negative rank");
        if (v) entries[{degree, s, t}] = v;
    }
    long long at(int degree, int s, int t) const {
        auto it = entries.find({degree, s, t});
        return it == entries.end() ? 0 : it->second;
    }
};

// Expansion of prod_{s,t} (1 - x^s u^t)^{-chi^pi_{st}} as a truncated series:
// the Euler table of the free polynomial bialgebra generated by a table of
// homotopy Euler characteristics. The input must cover the whole window.
inline EulerTable euler_h_from_pi(const EulerTable& chi_pi, int S, int T) {
    if (chi_pi.s_max < S || chi_pi.t_max < T)
        throw std::invalid_argument("euler_h_from_pi: input table does not cover the window");
    Trunc tr{S, T, 0};
    TruncatedSeries f = TruncatedSeries::constant(1, tr);
    for (const auto& [st, chi] : chi_pi.entries) {
        auto [s, t] = st;
        if (s > S || t > T) continue;
        // (1 - x^s u^t)^{-chi} = (sum_j x^{js} u^{jt})^{chi} for chi > 0,
        // (1 - x^s u^t)^{|chi|} for chi < 0
        TruncatedSeries base(tr);
        if (chi > 0) {
            for (int j = 0; j * t <= T && j * s <= S; ++j) base.add_term(Expo{j * s, j * t, 0, 0}, 1);
        } else {
            base.add_term(Expo{}, 1);
            base.add_term(Expo{s, t, 0, 0}, -1);
        }
        long long reps = chi > 0 ? chi : -chi;
        for (long long r = 0; r < reps; ++r) f = f * base;
    }
    EulerTable out;
    out.method = "product(" + chi_pi.method + ")";
    out.s_min = 0;
    out.s_max = S;
    out.t_min = 0;
    out.t_max = T;
    for (const auto& [e, c] : f.terms()) {
        if (!is_integer(c)) throw std::logic_error("euler_h_from_pi: non-integer coefficient");
        out.set(e.x, e.u, c.get_num().get_si());
    }
    return out;
}

enum class TableFormat { Csv, Json, Markdown };

inline TableFormat parse_table_format(const std::string& name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "json") return TableFormat::Json;
    if (name == "md") return TableFormat::Markdown;
    throw std::invalid_argument("unknown table format '" + name + "'");
}

// Deterministic rendering: rows by t, columns by s, plus a total column of
// absolute values for homotopy tables (mirroring the reference layout).
inline std::string emit_table(const EulerTable& table, TableFormat format, bool with_total) {
    std::ostringstream os;
    switch (format) {
        case TableFormat::Csv: {
            os << "t";
            for (int s = table.s_min; s <= table.s_max; ++s) os << ',' << s;
            if (with_total) os << ",total";
            os << '\n';
            for (int t = table.t_min; t <= table.t_max; ++t) {
                os << t;
                long long total = 0;
                for (int s = table.s_min; s <= table.s_max; ++s) {
                    long long v = table.at(s, t);
                    total += v < 0 ? -v : v;
                    os << ',' << v;
                }
                if (with_total) os << ',' << total;
                os << '\n';
            }
            break;
        }
        case TableFormat::Json: {
            os << "{\"method\":\"" << table.method << "\",";
            os << "\"s_range\":[" << table.s_min << ',' << table.s_max << "],";
            os << "\"t_range\":[" << table.t_min << ',' << table.t_max << "],";
            os << "\"entries\":[";
            bool first = true;
            for (const auto& [st, v] : table.entries) {
                if (st.first < table.s_min || st.first > table.s_max) continue;
                if (st.second < table.t_min || st.second > table.t_max) continue;
                if (!first) os << ',';
                first = false;
                os << '[' << st.first << ',' << st.second << ',' << v << ']';
            }
            os << "]}";
            break;
        }
        case TableFormat::Markdown: {
            os << "| t |";
            for (int s = table.s_min; s <= table.s_max; ++s) os << ' ' << s << " |";
            if (with_total) os << " total |";
            os << '\n';
            os << "|---|";
            for (int s = table.s_min; s <= table.s_max; ++s) os << "---|";
            if (with_total) os << "---|";
            os << '\n';
            for (int t = table.t_min; t <= table.t_max; ++t) {
                os << "| " << t << " |";
                long long total = 0;
                for (int s = table.s_min; s <= table.s_max; ++s) {
                    long long v = table.at(s, t);
                    total += v < 0 ? -v : v;
                    os << ' ' << v << " |";
                }
                if (with_total) os << ' ' << total << " |";
                os << '\n';
            }
            break;
        }
    }
    return os.str();
}

}  // namespace embgc
