#include "netspread/trajectory.hpp"

#include <cstdio>
#include <stdexcept>

namespace netspread {

std::vector<double> uniform_grid(double t_end, int n, bool include_zero) {
    if (n < 1 || t_end <= 0.0)
        throw std::invalid_argument("uniform_grid: need n >= 1 and t_end > 0");
    std::vector<double> g;
    if (include_zero) g.push_back(0.0);
    for (int i = 1; i <= n; ++i) g.push_back(t_end * i / n);
    return g;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_csv(const Trajectory& traj) {
    std::string out = "t,f";
    for (const auto& name : traj.component_names) out += "," + name;
    out += "\n";
    for (size_t i = 0; i < traj.t.size(); ++i) {
        out += format_double(traj.t[i]) + "," + format_double(traj.f[i]);
        for (const auto& col : traj.components) out += "," + format_double(col[i]);
        out += "\n";
    }
    return out;
}

} // namespace netspread
