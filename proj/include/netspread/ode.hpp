#pragma once

#include <functional>
#include <span>
#include <vector>

namespace netspread {

struct Tolerances {
    double rel = 1e-8;
    double abs = 1e-10;
};

/// Initial-value problem with a piecewise-smooth right-hand side.
/// The integrator never steps across a breakpoint.
struct IvpProblem {
    int dimension = 0;
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)> rhs;
    std::vector<double> y0;
    double t_end = 0.0;
    std::vector<double> breakpoints;  // sorted, in (0, t_end)
    std::vector<double> grid;         // sorted output times in [0, t_end]
};

struct OdeSolution {
    std::vector<double> times;                 // == prob.grid
    std::vector<std::vector<double>> states;   // states[i] at times[i]
};

/// Adaptive Dormand-Prince 5(4). Step ends are forced onto every
/// breakpoint and grid point, so dense output is exact step output.
OdeSolution integrate(const IvpProblem& prob, Tolerances tol = {});

} // namespace netspread
