#pragma once

#include "netspread/ode.hpp"
#include "netspread/schedule.hpp"
#include "netspread/trajectory.hpp"

#include <vector>

namespace netspread {

/// Symmetry-reduced master solution. For complete/circle networks the
/// state is [S^1..S^M]; for two groups it is the (M+1)x(M+1) grid of
/// [S^{k1,k2}] in row-major order with the (0,0) slot pinned to 1.
struct ReducedSolution {
    std::vector<double> grid;
    std::vector<std::vector<double>> states;
    Trajectory traj;
};

ReducedSolution solve_complete_reduced(int M, const RateSchedule& p, const RateSchedule& q,
                                       double I0, const std::vector<double>& grid,
                                       Tolerances tol = {});

ReducedSolution solve_circle_reduced(int M, const RateSchedule& p, const RateSchedule& qL,
                                     const RateSchedule& qR, double I0,
                                     const std::vector<double>& grid, Tolerances tol = {});

/// Two groups of M nodes each. Trajectory carries f plus f1, f2 columns.
ReducedSolution solve_twogroups_reduced(int M, const RateSchedule& p1, const RateSchedule& p2,
                                        const RateSchedule& q1, const RateSchedule& q2,
                                        double I01, double I02,
                                        const std::vector<double>& grid, Tolerances tol = {});

} // namespace netspread
