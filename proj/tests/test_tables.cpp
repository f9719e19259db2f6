#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include "embgc/genfunc.hpp"
#include "embgc/tables.hpp"

using namespace embgc;

TEST_CASE("csv rendering") {
    EulerTable t;
    t.method = "fixture";
    t.s_min = 1;
    t.s_max = 3;
    t.t_min = 1;
    t.t_max = 2;
    t.set(2, 1, 1);
    t.set(1, 2, -1);
    REQUIRE(emit_table(t, TableFormat::Csv, true) ==
            "t,1,2,3,total\n1,0,1,0,1\n2,-1,0,0,1\n");
    REQUIRE(emit_table(t, TableFormat::Csv, false) ==
            "t,1,2,3\n1,0,1,0\n2,-1,0,0\n");

    EulerTable empty;
    empty.s_min = 1;
    empty.s_max = 0;
    empty.t_min = 1;
    empty.t_max = 0;
    REQUIRE(emit_table(empty, TableFormat::Csv, false) == "t\n");
}

TEST_CASE("homotopy table totals for the first five complexities") {
    auto pi = genfunc_chi_pi(3, 3, 6, 5);
    pi.s_min = 1;
    pi.s_max = 6;
    pi.t_min = 1;
    pi.t_max = 5;
    auto csv = emit_table(pi, TableFormat::Csv, true);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    std::vector<long long> totals;
    while (std::getline(is, line)) totals.push_back(std::stoll(line.substr(line.rfind(',') + 1)));
    REQUIRE(totals == std::vector<long long>{1, 2, 2, 4, 6});
}

TEST_CASE("json output round-trips through a parser") {
    EulerTable t;
    t.method = "genfunc";
    t.s_min = 1;
    t.s_max = 4;
    t.t_min = 1;
    t.t_max = 3;
    t.set(2, 1, 1);
    t.set(1, 2, -1);
    t.set(4, 3, 7);
    auto text = emit_table(t, TableFormat::Json, false);
    auto parsed = nlohmann::json::parse(text);
    REQUIRE(parsed["method"] == "genfunc");
    REQUIRE(parsed["s_range"] == nlohmann::json::array({1, 4}));
    REQUIRE(parsed["entries"].size() == 3);
    std::map<std::pair<int, int>, long long> back;
    for (auto& e : parsed["entries"]) back[{e[0], e[1]}] = e[2];
    REQUIRE(back == t.entries);
}

TEST_CASE("markdown rendering is well formed") {
    EulerTable t;
    t.s_min = 1;
    t.s_max = 2;
    t.t_min = 1;
    t.t_max = 1;
    t.set(2, 1, 1);
    auto md = emit_table(t, TableFormat::Markdown, true);
    REQUIRE(md == "| t | 1 | 2 | total |\n|---|---|---|---|\n| 1 | 0 | 1 | 1 |\n");
}

TEST_CASE("format parsing") {
    REQUIRE(parse_table_format("csv") == TableFormat::Csv);
    REQUIRE(parse_table_format("json") == TableFormat::Json);
    REQUIRE(parse_table_format("md") == TableFormat::Markdown);
    REQUIRE_THROWS(parse_table_format("yaml"));
}

TEST_CASE("rank table") {
    RankTable r;
    r.set(2, 2, 1, 1);
    REQUIRE(r.at(2, 2, 1) == 1);
    REQUIRE(r.at(3, 2, 1) == 0);
    REQUIRE_THROWS(r.set(1, 1, 1, -2));
}
