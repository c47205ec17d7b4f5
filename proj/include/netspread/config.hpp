#pragma once

#include "netspread/network.hpp"
#include "netspread/ode.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace netspread {

/// Run settings shared by all CLI commands. CLI flags override fields.
struct RunConfig {
    std::optional<NetworkSpec> network;
    double horizon = 10.0;
    std::vector<double> grid;     // explicit times; empty means uniform grid_points
    int grid_points = 50;
    Tolerances tol;
    long replicates = 10000;
    uint64_t seed = 1;
    std::string out_path;
    std::vector<int> M_list;      // for sweeps
    bool allow_invalid = false;   // override validation failures
    bool per_node = false;        // per-node / per-group output columns
    int exact_cap = 16;
};

/// Schedule JSON: a plain number (constant), or
/// {"segments": [{"t0","t1","kind":"const"|"linear","c"|("a","b")},...], "tail": v}.
RateSchedule parse_schedule(const nlohmann::json& j);

/// {"family": "complete"|"circle"|"two-groups"|"general", ...}.
NetworkSpec parse_network(const nlohmann::json& j);

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Output grid: explicit times if given, else grid_points uniform on (0, horizon].
std::vector<double> config_grid(const RunConfig& cfg);

} // namespace netspread
