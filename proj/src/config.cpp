#include "netspread/config.hpp"

#include "netspread/trajectory.hpp"

#include <fstream>
#include <stdexcept>

namespace netspread {

using nlohmann::json;

RateSchedule parse_schedule(const json& j) {
    if (j.is_number()) return RateSchedule::constant(j.get<double>());
    if (!j.is_object())
        throw std::invalid_argument("schedule: expected a number or an object");
    std::vector<RateSchedule::Segment> segs;
    if (j.contains("segments")) {
        for (const auto& s : j.at("segments")) {
            RateSchedule::Segment seg;
            seg.t0 = s.at("t0").get<double>();
            seg.t1 = s.at("t1").get<double>();
            std::string kind = s.at("kind").get<std::string>();
            if (kind == "const") {
                seg.shape = RateSchedule::Shape::Constant;
                seg.a = s.at("c").get<double>();
            } else if (kind == "linear") {
                seg.shape = RateSchedule::Shape::Linear;
                seg.a = s.at("a").get<double>();
                seg.b = s.at("b").get<double>();
            } else {
                throw std::invalid_argument("schedule: unknown kind '" + kind + "'");
            }
            segs.push_back(seg);
        }
    }
    double tail = j.contains("tail") ? j.at("tail").get<double>()
                  : segs.empty()     ? 0.0
                                     : segs.back().value_at(segs.back().t1);
    return RateSchedule(std::move(segs), tail);
}

NetworkSpec parse_network(const json& j) {
    std::string family = j.at("family").get<std::string>();
    if (family == "complete") {
        CompleteSpec s;
        s.M = j.at("M").get<int>();
        s.p = parse_schedule(j.at("p"));
        s.q = parse_schedule(j.at("q"));
        s.I0 = j.value("I0", 0.0);
        return s;
    }
    if (family == "circle") {
        CircleSpec s;
        s.M = j.at("M").get<int>();
        s.p = parse_schedule(j.at("p"));
        s.qL = parse_schedule(j.at("qL"));
        s.qR = parse_schedule(j.at("qR"));
        s.I0 = j.value("I0", 0.0);
        return s;
    }
    if (family == "two-groups") {
        TwoGroupsSpec s;
        s.M = j.at("M").get<int>();
        s.p1 = parse_schedule(j.at("p1"));
        s.p2 = parse_schedule(j.at("p2"));
        s.q1 = parse_schedule(j.at("q1"));
        s.q2 = parse_schedule(j.at("q2"));
        s.I01 = j.value("I01", 0.0);
        s.I02 = j.value("I02", 0.0);
        return s;
    }
    if (family == "general") {
        GeneralForm s;
        s.M = j.at("M").get<int>();
        for (const auto& p : j.at("p")) s.p.push_back(parse_schedule(p));
        for (const auto& v : j.at("I0")) s.I0.push_back(v.get<double>());
        if (j.contains("edges"))
            for (const auto& e : j.at("edges"))
                s.edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(),
                                   parse_schedule(e.at("schedule"))});
        return s;
    }
    throw std::invalid_argument("network: unknown family '" + family + "'");
}

RunConfig parse_config(const json& j) {
    RunConfig cfg;
    if (j.contains("network")) cfg.network = parse_network(j.at("network"));
    cfg.horizon = j.value("horizon", cfg.horizon);
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.is_number_integer()) {
            cfg.grid_points = g.get<int>();
        } else if (g.is_array()) {
            for (const auto& t : g) cfg.grid.push_back(t.get<double>());
        } else {
            throw std::invalid_argument("config: grid must be a count or a list of times");
        }
    }
    if (j.contains("tol")) {
        cfg.tol.rel = j.at("tol").value("rel", cfg.tol.rel);
        cfg.tol.abs = j.at("tol").value("abs", cfg.tol.abs);
    }
    if (cfg.tol.rel <= 0.0 || cfg.tol.abs <= 0.0)
        throw std::invalid_argument("config: tolerances must be positive");
    cfg.replicates = j.value("replicates", cfg.replicates);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.out_path = j.value("out", cfg.out_path);
    if (j.contains("M_list"))
        for (const auto& m : j.at("M_list")) cfg.M_list.push_back(m.get<int>());
    cfg.allow_invalid = j.value("allow_invalid", false);
    cfg.per_node = j.value("per_node", false);
    cfg.exact_cap = j.value("exact_cap", cfg.exact_cap);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_config(j);
}

std::vector<double> config_grid(const RunConfig& cfg) {
    if (!cfg.grid.empty()) {
        for (double t : cfg.grid)
            if (t < 0.0 || t > cfg.horizon)
                throw std::invalid_argument("config: grid time outside [0, horizon]");
        return cfg.grid;
    }
    return uniform_grid(cfg.horizon, cfg.grid_points);
}

} // namespace netspread
