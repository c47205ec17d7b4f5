#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netspread/trajectory.hpp"
#include "netspread/verify.hpp"

#include <json.hpp>

using namespace netspread;

namespace {

CompleteParams default_complete() {
    return {RateSchedule::constant(0.1), RateSchedule::constant(1.0), 0.0};
}

} // namespace

TEST_CASE("monotone check passes on the complete family") {
    auto rep = check_monotone_in_M(default_complete(), {2, 10, 30}, uniform_grid(10.0, 20));
    CHECK(rep.pass);
    CHECK(rep.worst_margin > 0.0);
    CHECK(rep.name == "monotone_in_M");
}

TEST_CASE("monotone check fails on a descending-effect corruption") {
    // Raising q with M would be fine; lowering q as M grows reverses the
    // ordering, so the check must reject a 'monotone' claim built on it.
    CompleteParams weak{RateSchedule::constant(0.1), RateSchedule::constant(0.05), 0.0};
    auto good = check_monotone_in_M(weak, {2, 3}, uniform_grid(10.0, 20));
    CHECK(good.pass);
    // Descending M list is a caller error.
    CHECK_THROWS_AS(check_monotone_in_M(weak, {3, 2}, uniform_grid(10.0, 20)),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_monotone_in_M(weak, {3}, uniform_grid(10.0, 20)),
                    std::invalid_argument);
}

TEST_CASE("bounds check: sandwich holds, and collapses when the limit is undercut") {
    auto rep = check_bounds(default_complete(), 5, uniform_grid(8.0, 15));
    CHECK(rep.pass);
    // With q = 0 the reduced solution equals the lower bound: no strict margin.
    CompleteParams degenerate{RateSchedule::constant(0.1), RateSchedule::constant(0.0), 0.0};
    auto flat = check_bounds(degenerate, 5, uniform_grid(8.0, 15));
    CHECK(!flat.pass);
}

TEST_CASE("survival bound on a complete network") {
    auto net = materialize(NetworkSpec{CompleteSpec{
        5, RateSchedule::constant(0.4), RateSchedule::constant(1.5), 0.2}});
    auto rep = check_survival_bound(net, uniform_grid(2.0, 8));
    CHECK(rep.pass);
}

TEST_CASE("SI-Bass equivalence: integer cases pass, fractional M~ throws") {
    auto rep = check_si_bass_equivalence(10, RateSchedule::constant(1.0), 0.2,
                                         uniform_grid(5.0, 30));
    CHECK(rep.pass);
    auto piecewise = check_si_bass_equivalence(
        10, RateSchedule::piecewise_constant({0.0, 1.0}, {1.0, 2.0}), 0.2,
        uniform_grid(5.0, 30));
    CHECK(piecewise.pass);
    CHECK_THROWS_AS(check_si_bass_equivalence(5, RateSchedule::constant(1.0), 0.5,
                                              uniform_grid(5.0, 10)),
                    std::invalid_argument);
}

TEST_CASE("exact vs reduced across the three families") {
    auto grid = uniform_grid(3.0, 10);
    CHECK(check_exact_vs_reduced(default_complete(), 6, grid).pass);
    CircleParams circle{RateSchedule::constant(0.3), RateSchedule::constant(0.8),
                        RateSchedule::constant(0.2), 0.1};
    CHECK(check_exact_vs_reduced(circle, 6, grid).pass);
    TwoGroupsParams groups{RateSchedule::constant(0.5), RateSchedule::constant(1.0),
                           RateSchedule::constant(2.0), RateSchedule::constant(4.0), 0.0, 0.1};
    CHECK(check_exact_vs_reduced(groups, 3, grid).pass);
}

TEST_CASE("limit convergence check on the circle") {
    CircleParams circle{RateSchedule::constant(0.1), RateSchedule::constant(0.5),
                        RateSchedule::constant(0.5), 0.0};
    auto rep = check_limit_convergence(circle, {2, 4, 6, 8}, uniform_grid(10.0, 20));
    CHECK(rep.pass);
    CHECK(rep.worst_margin > 0.0);
}

TEST_CASE("run_suite produces sorted, serializable reports") {
    auto reports = run_suite("equivalence");
    REQUIRE(!reports.empty());
    for (const auto& r : reports) CHECK(r.pass);
    for (size_t i = 1; i < reports.size(); ++i)
        CHECK(std::tie(reports[i - 1].name, reports[i - 1].params_digest) <=
              std::tie(reports[i].name, reports[i].params_digest));

    auto parsed = nlohmann::json::parse(reports_to_json(reports));
    REQUIRE(parsed.is_array());
    CHECK(parsed.size() == reports.size());
    CHECK(parsed[0].contains("worst_margin"));
    CHECK(parsed[0]["pass"].get<bool>());

    CHECK_THROWS_AS(run_suite("no-such-suite"), std::invalid_argument);
}

TEST_CASE("run_suite is deterministic for a fixed seed") {
    auto a = run_suite("bounds", 99);
    auto b = run_suite("bounds", 99);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].params_digest == b[i].params_digest);
        CHECK(a[i].worst_margin == b[i].worst_margin);
    }
}
