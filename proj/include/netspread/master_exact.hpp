#pragma once

#include "netspread/network.hpp"
#include "netspread/ode.hpp"
#include "netspread/trajectory.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace netspread {

inline constexpr int kExactDefaultCap = 16;
inline constexpr int kExactHardCap = 20;

/// Survival probabilities for every nonempty node subset. Slot mask-1
/// holds [S_Omega] for the bitmask Omega (masks 1 .. 2^M - 1).
struct SubsetSolution {
    int M = 0;
    std::vector<double> grid;
    std::vector<std::vector<double>> survival; // survival[i][mask-1] at grid[i]
    Trajectory traj;                           // f plus per-node f_j columns

    double at(int time_index, uint32_t mask) const { return survival[time_index][mask - 1]; }
};

/// Right-hand side of the full master-equation system
/// d[S_Omega]/dt = -(p_Omega + sum_k q_{k,Omega}) [S_Omega]
///                 + sum_k q_{k,Omega} [S_{Omega u k}],  k over Omega^c.
std::function<void(double, std::span<const double>, std::span<double>)>
build_exact_rhs(const GeneralForm& net, int cap = kExactDefaultCap);

std::vector<double> exact_initial_state(const GeneralForm& net);

SubsetSolution solve_exact(const GeneralForm& net, const std::vector<double>& grid,
                           Tolerances tol = {}, int cap = kExactDefaultCap);

} // namespace netspread
