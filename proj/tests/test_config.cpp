#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netspread/config.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

using namespace netspread;
using nlohmann::json;

TEST_CASE("schedule: plain number means constant") {
    auto s = parse_schedule(json(1.5));
    CHECK(s.eval(0.0) == 1.5);
    CHECK(s.eval(100.0) == 1.5);
    CHECK(s.breakpoints().empty());
}

TEST_CASE("schedule: segments with constant and linear pieces") {
    auto j = json::parse(R"({
        "segments": [
            {"t0": 0.0, "t1": 1.0, "kind": "const", "c": 1.0},
            {"t0": 1.0, "t1": 3.0, "kind": "linear", "a": 1.0, "b": 0.5}
        ],
        "tail": 2.0
    })");
    auto s = parse_schedule(j);
    CHECK(s.eval(0.5) == 1.0);
    CHECK(s.eval(1.0) == 1.0);          // right-continuous: second segment starts
    CHECK(s.eval(2.0) == doctest::Approx(1.5)); // a + b*(t - t0)
    CHECK(s.eval(5.0) == 2.0);
    CHECK(s.integral(0.0, 3.0) == doctest::Approx(1.0 + 2.0 * 1.0 + 0.5 * 0.5 * 4.0));
}

TEST_CASE("schedule: tail defaults to the last segment's end value") {
    auto j = json::parse(R"({
        "segments": [{"t0": 0.0, "t1": 2.0, "kind": "linear", "a": 0.0, "b": 1.0}]
    })");
    CHECK(parse_schedule(j).eval(10.0) == doctest::Approx(2.0));
}

TEST_CASE("schedule: malformed inputs throw") {
    CHECK_THROWS_AS(parse_schedule(json("fast")), std::invalid_argument);
    CHECK_THROWS_AS(
        parse_schedule(json::parse(
            R"({"segments": [{"t0": 0, "t1": 1, "kind": "cubic", "c": 1}]})")),
        std::invalid_argument);
    // Negative rates are rejected by the schedule itself.
    CHECK_THROWS_AS(parse_schedule(json(-1.0)), std::invalid_argument);
}

TEST_CASE("network: all four families parse") {
    auto complete = parse_network(json::parse(
        R"({"family": "complete", "M": 5, "p": 0.1, "q": 1.0, "I0": 0.2})"));
    CHECK(std::holds_alternative<CompleteSpec>(complete));
    CHECK(std::get<CompleteSpec>(complete).M == 5);

    auto circle = parse_network(json::parse(
        R"({"family": "circle", "M": 8, "p": 0.1, "qL": 0.6, "qR": 0.4})"));
    CHECK(std::holds_alternative<CircleSpec>(circle));
    CHECK(std::get<CircleSpec>(circle).I0 == 0.0);

    auto groups = parse_network(json::parse(
        R"({"family": "two-groups", "M": 3, "p1": 0.1, "p2": 0.2,
            "q1": 1.0, "q2": 2.0, "I01": 0.0, "I02": 0.1})"));
    CHECK(std::holds_alternative<TwoGroupsSpec>(groups));

    auto general = parse_network(json::parse(
        R"({"family": "general", "M": 2, "p": [0.5, 0.0], "I0": [0.0, 0.3],
            "edges": [{"from": 0, "to": 1, "schedule": 2.0}]})"));
    REQUIRE(std::holds_alternative<GeneralForm>(general));
    const auto& net = std::get<GeneralForm>(general);
    CHECK(net.edges.size() == 1);
    CHECK(net.edges[0].rate.eval(0.0) == 2.0);

    CHECK_THROWS_AS(parse_network(json::parse(R"({"family": "star", "M": 3})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_network(json::parse(R"({"family": "complete", "M": 3})")),
                    json::exception); // missing p/q
}

TEST_CASE("config: defaults and overrides") {
    auto cfg = parse_config(json::parse(R"({})"));
    CHECK(!cfg.network.has_value());
    CHECK(cfg.horizon == 10.0);
    CHECK(cfg.grid_points == 50);
    CHECK(cfg.replicates == 10000);
    CHECK(cfg.seed == 1);

    auto full = parse_config(json::parse(R"({
        "network": {"family": "complete", "M": 4, "p": 0.1, "q": 1.0},
        "horizon": 5.0, "grid": 10, "tol": {"rel": 1e-6, "abs": 1e-9},
        "replicates": 777, "seed": 42, "out": "run.csv",
        "M_list": [2, 4, 8], "per_node": true, "exact_cap": 12
    })"));
    CHECK(full.network.has_value());
    CHECK(full.horizon == 5.0);
    CHECK(full.grid_points == 10);
    CHECK(full.tol.rel == 1e-6);
    CHECK(full.replicates == 777);
    CHECK(full.out_path == "run.csv");
    CHECK(full.M_list == std::vector<int>{2, 4, 8});
    CHECK(full.per_node);
    CHECK(full.exact_cap == 12);

    CHECK_THROWS_AS(parse_config(json::parse(R"({"tol": {"rel": 0.0}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"grid": "fine"})")),
                    std::invalid_argument);
}

TEST_CASE("config grid: explicit times validated against the horizon") {
    RunConfig cfg;
    cfg.horizon = 4.0;
    cfg.grid = {0.5, 1.0, 4.0};
    CHECK(config_grid(cfg) == cfg.grid);
    cfg.grid = {0.5, 5.0};
    CHECK_THROWS_AS(config_grid(cfg), std::invalid_argument);

    cfg.grid.clear();
    cfg.grid_points = 4;
    auto g = config_grid(cfg);
    REQUIRE(g.size() == 4);
    CHECK(g.front() == doctest::Approx(1.0));
    CHECK(g.back() == doctest::Approx(4.0));
}

TEST_CASE("load_config: round trip through a file") {
    const char* path = "netspread_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"network": {"family": "circle", "M": 6, "p": 0.2,
                               "qL": 0.5, "qR": 0.5, "I0": 0.1},
                   "horizon": 3.0, "seed": 9})";
    }
    auto cfg = load_config(path);
    CHECK(cfg.horizon == 3.0);
    CHECK(cfg.seed == 9);
    REQUIRE(cfg.network.has_value());
    CHECK(std::holds_alternative<CircleSpec>(*cfg.network));
    std::remove(path);

    CHECK_THROWS_AS(load_config("definitely-missing.json"), std::invalid_argument);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_config(path), std::invalid_argument);
    std::remove(path);
}
