#include "netspread/config.hpp"
#include "netspread/limits.hpp"
#include "netspread/master_exact.hpp"
#include "netspread/master_reduced.hpp"
#include "netspread/simulate.hpp"
#include "netspread/trajectory.hpp"
#include "netspread/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace netspread;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitCapError = 3;

struct CliOverrides {
    std::string config_path;
    std::string out_path;
    std::string grid;
    std::string tol;
    long replicates = -1;
    long long seed = -1;
};

void add_common(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "JSON config file");
    cmd->add_option("--out", ov.out_path, "output file (default: stdout)");
    cmd->add_option("--grid", ov.grid, "output grid: point count or comma-separated times");
    cmd->add_option("--tol", ov.tol, "solver tolerances REL,ABS");
    cmd->add_option("--seed", ov.seed, "Monte-Carlo seed");
    cmd->add_option("--replicates", ov.replicates, "Monte-Carlo replicate count");
}

RunConfig resolve(const CliOverrides& ov) {
    RunConfig cfg;
    if (!ov.config_path.empty()) cfg = load_config(ov.config_path);
    if (!ov.grid.empty()) {
        if (ov.grid.find(',') == std::string::npos) {
            cfg.grid.clear();
            cfg.grid_points = std::stoi(ov.grid);
        } else {
            cfg.grid.clear();
            std::stringstream ss(ov.grid);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.grid.push_back(std::stod(tok));
        }
    }
    if (!ov.tol.empty()) {
        auto comma = ov.tol.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--tol expects REL,ABS");
        cfg.tol.rel = std::stod(ov.tol.substr(0, comma));
        cfg.tol.abs = std::stod(ov.tol.substr(comma + 1));
    }
    if (ov.replicates >= 0) cfg.replicates = ov.replicates;
    if (ov.seed >= 0) cfg.seed = static_cast<uint64_t>(ov.seed);
    if (!ov.out_path.empty()) cfg.out_path = ov.out_path;
    return cfg;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

const NetworkSpec& require_network(const RunConfig& cfg) {
    if (!cfg.network)
        throw std::invalid_argument("config: missing \"network\" object");
    return *cfg.network;
}

int cmd_simulate(const CliOverrides& ov) {
    RunConfig cfg = resolve(ov);
    GeneralForm net = materialize(require_network(cfg), cfg.allow_invalid);
    auto grid = config_grid(cfg);
    EnsembleResult res = estimate_f(net, cfg.horizon, grid, cfg.replicates, cfg.seed);
    std::string csv = "t,mean_f,std_err\n";
    for (size_t i = 0; i < grid.size(); ++i)
        csv += format_double(res.grid[i]) + "," + format_double(res.mean_f[i]) + "," +
               format_double(res.std_err[i]) + "\n";
    write_output(cfg.out_path, csv);
    return kExitOk;
}

int cmd_master(const CliOverrides& ov, const std::string& backend) {
    RunConfig cfg = resolve(ov);
    const NetworkSpec& spec = require_network(cfg);
    auto grid = config_grid(cfg);
    Trajectory traj;
    if (backend == "exact") {
        GeneralForm net = materialize(spec, cfg.allow_invalid);
        try {
            traj = solve_exact(net, grid, cfg.tol, cfg.exact_cap).traj;
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).find("cap") != std::string::npos) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitCapError;
            }
            throw;
        }
        if (!cfg.per_node) {
            traj.components.clear();
            traj.component_names.clear();
        }
    } else {
        if (const auto* c = std::get_if<CompleteSpec>(&spec)) {
            traj = solve_complete_reduced(c->M, c->p, c->q, c->I0, grid, cfg.tol).traj;
        } else if (const auto* c = std::get_if<CircleSpec>(&spec)) {
            traj = solve_circle_reduced(c->M, c->p, c->qL, c->qR, c->I0, grid, cfg.tol).traj;
        } else if (const auto* g = std::get_if<TwoGroupsSpec>(&spec)) {
            traj = solve_twogroups_reduced(g->M, g->p1, g->p2, g->q1, g->q2, g->I01, g->I02,
                                           grid, cfg.tol).traj;
        } else {
            throw std::invalid_argument(
                "master --backend reduced: general networks have no reduced form");
        }
    }
    write_output(cfg.out_path, to_csv(traj));
    return kExitOk;
}

int cmd_limit(const CliOverrides& ov, std::string family) {
    RunConfig cfg = resolve(ov);
    const NetworkSpec& spec = require_network(cfg);
    auto grid = config_grid(cfg);
    if (family.empty()) {
        if (std::holds_alternative<CompleteSpec>(spec)) family = "compartmental";
        else if (std::holds_alternative<CircleSpec>(spec)) family = "onedim";
        else if (std::holds_alternative<TwoGroupsSpec>(spec)) family = "two-groups";
        else throw std::invalid_argument("limit: general networks have no limit family");
    }
    Trajectory traj;
    if (family == "compartmental") {
        const auto& c = std::get<CompleteSpec>(spec);
        traj = solve_compartmental(c.p, c.q, c.I0, grid, cfg.tol);
    } else if (family == "onedim") {
        const auto& c = std::get<CircleSpec>(spec);
        traj = solve_1d_limit(c.p, add(c.qL, c.qR), c.I0, grid, cfg.tol);
    } else if (family == "two-groups") {
        const auto& g = std::get<TwoGroupsSpec>(spec);
        traj = solve_twogroups_limit(g.p1, g.p2, g.q1, g.q2, g.I01, g.I02, grid, cfg.tol);
    } else {
        throw std::invalid_argument("limit: unknown family '" + family + "'");
    }
    write_output(cfg.out_path, to_csv(traj));
    return kExitOk;
}

int cmd_sweep(const CliOverrides& ov) {
    RunConfig cfg = resolve(ov);
    const NetworkSpec& spec = require_network(cfg);
    if (cfg.M_list.empty())
        throw std::invalid_argument("sweep: config needs a nonempty M_list");
    auto grid = config_grid(cfg);

    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    Trajectory limit;
    for (int M : cfg.M_list) {
        Trajectory traj;
        if (const auto* c = std::get_if<CompleteSpec>(&spec)) {
            traj = solve_complete_reduced(M, c->p, c->q, c->I0, grid, cfg.tol).traj;
        } else if (const auto* c = std::get_if<CircleSpec>(&spec)) {
            traj = solve_circle_reduced(M, c->p, c->qL, c->qR, c->I0, grid, cfg.tol).traj;
        } else if (const auto* g = std::get_if<TwoGroupsSpec>(&spec)) {
            traj = solve_twogroups_reduced(M, g->p1, g->p2, g->q1, g->q2, g->I01, g->I02,
                                           grid, cfg.tol).traj;
        } else {
            throw std::invalid_argument("sweep: general networks are not sweepable");
        }
        names.push_back("f_M" + std::to_string(M));
        cols.push_back(traj.f);
    }
    if (const auto* c = std::get_if<CompleteSpec>(&spec)) {
        limit = solve_compartmental(c->p, c->q, c->I0, grid, cfg.tol);
    } else if (const auto* c = std::get_if<CircleSpec>(&spec)) {
        limit = solve_1d_limit(c->p, add(c->qL, c->qR), c->I0, grid, cfg.tol);
    } else {
        const auto& g = std::get<TwoGroupsSpec>(spec);
        limit = solve_twogroups_limit(g.p1, g.p2, g.q1, g.q2, g.I01, g.I02, grid, cfg.tol);
    }
    names.push_back("f_limit");
    cols.push_back(limit.f);

    std::string csv = "t";
    for (const auto& n : names) csv += "," + n;
    csv += "\n";
    for (size_t i = 0; i < grid.size(); ++i) {
        csv += format_double(grid[i]);
        for (const auto& col : cols) csv += "," + format_double(col[i]);
        csv += "\n";
    }
    write_output(cfg.out_path, csv);
    return kExitOk;
}

int cmd_verify(const CliOverrides& ov, const std::string& suite) {
    RunConfig cfg = resolve(ov);
    auto reports = run_suite(suite, cfg.seed);
    write_output(cfg.out_path, reports_to_json(reports) + "\n");
    bool all_pass = true;
    for (const auto& r : reports) {
        if (!r.pass) {
            all_pass = false;
            std::cerr << "FAIL " << r.name << " [" << r.params_digest
                      << "] margin=" << r.worst_margin << "\n";
        }
    }
    return all_pass ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bass/SI spreading on networks: simulation, master equations, limits"};
    app.require_subcommand(1);

    CliOverrides ov;
    std::string backend = "reduced";
    std::string family;
    std::string suite = "all";

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo estimate of f(t)");
    add_common(sim, ov);
    auto* master = app.add_subcommand("master", "deterministic master-equation solve");
    add_common(master, ov);
    master->add_option("--backend", backend, "exact|reduced")
        ->check(CLI::IsMember({"exact", "reduced"}));
    auto* limit = app.add_subcommand("limit", "infinite-population limit");
    add_common(limit, ov);
    limit->add_option("--family", family, "compartmental|onedim|two-groups");
    auto* sweep = app.add_subcommand("sweep", "f(t;M) for each M in M_list plus the limit");
    add_common(sweep, ov);
    auto* verify = app.add_subcommand("verify", "run certification checks");
    add_common(verify, ov);
    verify->add_option("--suite", suite,
                       "all|monotone|bounds|equivalence|reduction|convergence");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(ov);
        if (master->parsed()) return cmd_master(ov, backend);
        if (limit->parsed()) return cmd_limit(ov, family);
        if (sweep->parsed()) return cmd_sweep(ov);
        if (verify->parsed()) return cmd_verify(ov, suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
