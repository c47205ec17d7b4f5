#pragma once

#include <string>
#include <vector>

namespace netspread {

/// Time grid with the expected adoption level and optional extra columns
/// (per-node f_j, per-group f_1/f_2, ...).
struct Trajectory {
    std::vector<double> t;
    std::vector<double> f;
    std::vector<std::string> component_names;
    std::vector<std::vector<double>> components; // components[c][i], same length as t
};

/// Uniform grid of n points on (0, t_end]: t_end/n, 2*t_end/n, ..., t_end.
std::vector<double> uniform_grid(double t_end, int n, bool include_zero = false);

/// CSV with 17-significant-digit numbers (exact double round trip).
std::string to_csv(const Trajectory& traj);
std::string format_double(double v);

} // namespace netspread
