#include "netspread/limits.hpp"

#include <cmath>
#include <stdexcept>

namespace netspread {

namespace {

Trajectory scalar_solve(IvpProblem prob, Tolerances tol) {
    OdeSolution ode = integrate(prob, tol);
    Trajectory traj;
    traj.t = ode.times;
    traj.f.resize(ode.times.size());
    for (size_t i = 0; i < ode.times.size(); ++i) traj.f[i] = ode.states[i][0];
    return traj;
}

} // namespace

Trajectory solve_compartmental(const RateSchedule& p, const RateSchedule& q, double I0,
                               const std::vector<double>& grid, Tolerances tol) {
    if (grid.empty()) throw std::invalid_argument("solve_compartmental: empty grid");
    IvpProblem prob;
    prob.dimension = 1;
    prob.t_end = grid.back();
    prob.grid = grid;
    prob.breakpoints = merged_breakpoints({&p, &q});
    prob.y0 = {I0};
    prob.rhs = [p, q](double t, std::span<const double> y, std::span<double> dy) {
        dy[0] = (1.0 - y[0]) * (p.eval(t) + q.eval(t) * y[0]);
    };
    return scalar_solve(std::move(prob), tol);
}

Trajectory solve_1d_limit(const RateSchedule& p, const RateSchedule& q_total, double I0,
                          const std::vector<double>& grid, Tolerances tol) {
    if (grid.empty()) throw std::invalid_argument("solve_1d_limit: empty grid");
    IvpProblem prob;
    prob.dimension = 1;
    prob.t_end = grid.back();
    prob.grid = grid;
    prob.breakpoints = merged_breakpoints({&p, &q_total});
    prob.y0 = {I0};
    // int_0^t p comes from the exact schedule integral, not an augmented state.
    prob.rhs = [p, q_total, I0](double t, std::span<const double> y, std::span<double> dy) {
        double seeded = 1.0 - (1.0 - I0) * std::exp(-p.integral(0.0, t));
        dy[0] = (1.0 - y[0]) * (p.eval(t) + q_total.eval(t) * seeded);
    };
    return scalar_solve(std::move(prob), tol);
}

Trajectory solve_twogroups_limit(const RateSchedule& p1, const RateSchedule& p2,
                                 const RateSchedule& q1, const RateSchedule& q2,
                                 double I01, double I02, const std::vector<double>& grid,
                                 Tolerances tol) {
    if (grid.empty()) throw std::invalid_argument("solve_twogroups_limit: empty grid");
    IvpProblem prob;
    prob.dimension = 2;
    prob.t_end = grid.back();
    prob.grid = grid;
    prob.breakpoints = merged_breakpoints({&p1, &p2, &q1, &q2});
    prob.y0 = {I01 / 2.0, I02 / 2.0};
    prob.rhs = [p1, p2, q1, q2](double t, std::span<const double> y, std::span<double> dy) {
        double total = y[0] + y[1];
        dy[0] = (0.5 - y[0]) * (p1.eval(t) + q1.eval(t) * total);
        dy[1] = (0.5 - y[1]) * (p2.eval(t) + q2.eval(t) * total);
    };
    OdeSolution ode = integrate(prob, tol);
    Trajectory traj;
    traj.t = ode.times;
    traj.f.resize(ode.times.size());
    traj.component_names = {"f1", "f2"};
    traj.components.assign(2, std::vector<double>(ode.times.size()));
    for (size_t i = 0; i < ode.times.size(); ++i) {
        traj.components[0][i] = ode.states[i][0];
        traj.components[1][i] = ode.states[i][1];
        traj.f[i] = ode.states[i][0] + ode.states[i][1];
    }
    return traj;
}

double closed_form_bass_compart(double p, double q, double t) {
    if (p <= 0.0)
        throw std::invalid_argument("closed_form_bass_compart: p > 0 required (use the SI form)");
    if (t < 0.0) throw std::invalid_argument("closed_form_bass_compart: t >= 0 required");
    double e = std::exp(-(p + q) * t);
    return (1.0 - e) / (1.0 + (q / p) * e);
}

double closed_form_si_compart(double q, double I0, double t) {
    if (t < 0.0) throw std::invalid_argument("closed_form_si_compart: t >= 0 required");
    return 1.0 / (1.0 + (1.0 / I0 - 1.0) * std::exp(-q * t));
}

double closed_form_bass_1d(double p, double q, double t) {
    if (t < 0.0) throw std::invalid_argument("closed_form_bass_1d: t >= 0 required");
    return 1.0 - std::exp(-(p + q) * t + q * (1.0 - std::exp(-p * t)) / p);
}

double closed_form_si_1d(double q, double I0, double t) {
    if (t < 0.0) throw std::invalid_argument("closed_form_si_1d: t >= 0 required");
    return 1.0 - (1.0 - I0) * std::exp(-q * I0 * t);
}

} // namespace netspread
