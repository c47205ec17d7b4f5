#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netspread/master_reduced.hpp"
#include "netspread/simulate.hpp"
#include "netspread/trajectory.hpp"

#include <cmath>
#include <set>

using namespace netspread;

namespace {

GeneralForm isolated_nodes(int M, RateSchedule p, double I0) {
    GeneralForm net;
    net.M = M;
    net.p.assign(M, std::move(p));
    net.I0.assign(M, I0);
    return net;
}

// z-scores of the Monte-Carlo mean against a reference curve.
void check_z_scores(const EnsembleResult& mc, const std::vector<double>& ref,
                    double hard_limit = 5.0) {
    int within3 = 0;
    for (size_t i = 0; i < ref.size(); ++i) {
        double se = std::max(mc.std_err[i], 1e-12);
        double z = std::abs(mc.mean_f[i] - ref[i]) / se;
        CHECK(z < hard_limit);
        if (z < 3.0) ++within3;
    }
    CHECK(within3 >= static_cast<int>(0.9 * static_cast<double>(ref.size())));
}

} // namespace

TEST_CASE("no influence, no seeds: adoption times are iid Exp(p)") {
    auto net = isolated_nodes(3, RateSchedule::constant(0.7), 0.0);
    auto grid = uniform_grid(4.0, 8);
    auto mc = estimate_f(net, 4.0, grid, 20000, 42);
    std::vector<double> ref;
    for (double t : grid) ref.push_back(1.0 - std::exp(-0.7 * t));
    check_z_scores(mc, ref);
}

TEST_CASE("p=0 and I0=0: nothing ever happens") {
    GeneralForm net = isolated_nodes(4, RateSchedule::constant(0.0), 0.0);
    net.edges = {{0, 1, RateSchedule::constant(3.0)}, {2, 3, RateSchedule::constant(1.0)}};
    SplitMix64 rng(7);
    auto log = simulate_once(net, 10.0, rng);
    CHECK(log.seeds.empty());
    CHECK(log.events.empty());
    auto mc = estimate_f(net, 10.0, uniform_grid(10.0, 5), 500, 1);
    for (double f : mc.mean_f) CHECK(f == 0.0);
    for (double se : mc.std_err) CHECK(se == 0.0);
}

TEST_CASE("event logs are well-formed") {
    auto net = materialize(CompleteSpec{5, RateSchedule::constant(0.5),
                                        RateSchedule::constant(2.0), 0.3});
    for (uint64_t r = 0; r < 200; ++r) {
        SplitMix64 rng = SplitMix64::substream(99, r);
        auto log = simulate_once(net, 6.0, rng);
        std::set<int> touched(log.seeds.begin(), log.seeds.end());
        CHECK(touched.size() == log.seeds.size());
        double last = 0.0;
        for (const auto& [t, node] : log.events) {
            CHECK(t > last);
            CHECK(t <= 6.0);
            CHECK(node >= 0);
            CHECK(node < 5);
            CHECK(!touched.count(node)); // each node adopts at most once
            touched.insert(node);
            last = t;
        }
    }
}

TEST_CASE("Monte Carlo agrees with the master solution (complete M=4)") {
    auto p = RateSchedule::constant(0.5);
    auto q = RateSchedule::constant(2.0);
    auto grid = uniform_grid(3.0, 10);
    auto master = solve_complete_reduced(4, p, q, 0.1, grid);
    auto mc = estimate_f(materialize(CompleteSpec{4, p, q, 0.1}), 3.0, grid, 20000, 7);
    check_z_scores(mc, master.traj.f);
}

TEST_CASE("Monte Carlo agrees with the master solution (affine + piecewise schedules)") {
    auto p = RateSchedule::ramp(0.0, 2.0, 0.1, 0.3, 0.7);
    auto q = RateSchedule::piecewise_constant({0.0, 1.0}, {1.0, 2.5});
    auto grid = uniform_grid(3.0, 10);
    auto master = solve_circle_reduced(5, p, q, RateSchedule::constant(0.0), 0.0, grid);
    CircleSpec spec{5, p, q, RateSchedule::constant(0.0), 0.0};
    auto mc = estimate_f(materialize(spec), 3.0, grid, 20000, 11);
    check_z_scores(mc, master.traj.f);
}

TEST_CASE("sample paths are monotone and bounded") {
    auto net = materialize(CompleteSpec{6, RateSchedule::constant(1.0),
                                        RateSchedule::constant(5.0), 0.0});
    auto grid = uniform_grid(2.0, 6);
    auto mc = estimate_f(net, 2.0, grid, 2000, 3);
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(mc.mean_f[i] >= 0.0);
        CHECK(mc.mean_f[i] <= 1.0);
        if (i > 0) CHECK(mc.mean_f[i] >= mc.mean_f[i - 1]);
    }
}

TEST_CASE("results are bit-identical across thread counts") {
    auto net = materialize(CompleteSpec{8, RateSchedule::constant(0.3),
                                        RateSchedule::constant(3.0), 0.05});
    auto grid = uniform_grid(4.0, 12);
    auto a = estimate_f(net, 4.0, grid, 3000, 2024, /*threads=*/1);
    auto b = estimate_f(net, 4.0, grid, 3000, 2024, /*threads=*/4);
    auto c = estimate_f(net, 4.0, grid, 3000, 2024, /*threads=*/3);
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(a.mean_f[i] == b.mean_f[i]);
        CHECK(a.mean_f[i] == c.mean_f[i]);
        CHECK(a.std_err[i] == b.std_err[i]);
        CHECK(a.std_err[i] == c.std_err[i]);
    }
}

TEST_CASE("different seeds decorrelate, same seed repeats") {
    auto net = materialize(CompleteSpec{3, RateSchedule::constant(0.5),
                                        RateSchedule::constant(1.0), 0.0});
    auto grid = uniform_grid(2.0, 4);
    auto a = estimate_f(net, 2.0, grid, 1000, 1);
    auto b = estimate_f(net, 2.0, grid, 1000, 1);
    auto c = estimate_f(net, 2.0, grid, 1000, 2);
    bool identical_ab = true, identical_ac = true;
    for (size_t i = 0; i < grid.size(); ++i) {
        identical_ab = identical_ab && a.mean_f[i] == b.mean_f[i];
        identical_ac = identical_ac && a.mean_f[i] == c.mean_f[i];
    }
    CHECK(identical_ab);
    CHECK(!identical_ac);
}

TEST_CASE("seeded fraction matches I0 at t=0+") {
    auto net = isolated_nodes(2, RateSchedule::constant(0.0), 0.4);
    long total = 0, R = 20000;
    for (long r = 0; r < R; ++r) {
        SplitMix64 rng = SplitMix64::substream(5, static_cast<uint64_t>(r));
        total += static_cast<long>(simulate_once(net, 1.0, rng).seeds.size());
    }
    double frac = static_cast<double>(total) / static_cast<double>(2 * R);
    CHECK(frac == doctest::Approx(0.4).epsilon(0.02));
}
