#include "netspread/master_reduced.hpp"

#include <cmath>
#include <stdexcept>

namespace netspread {

namespace {

ReducedSolution run(IvpProblem prob, Tolerances tol) {
    OdeSolution ode = integrate(prob, tol);
    ReducedSolution out;
    out.grid = ode.times;
    out.states = std::move(ode.states);
    out.traj.t = out.grid;
    return out;
}

} // namespace

ReducedSolution solve_complete_reduced(int M, const RateSchedule& p, const RateSchedule& q,
                                       double I0, const std::vector<double>& grid,
                                       Tolerances tol) {
    if (M < 1) throw std::invalid_argument("solve_complete_reduced: M >= 1 required");
    if (grid.empty()) throw std::invalid_argument("solve_complete_reduced: empty grid");

    IvpProblem prob;
    prob.dimension = M;
    prob.t_end = grid.back();
    prob.grid = grid;
    prob.breakpoints = merged_breakpoints({&p, &q});
    prob.y0.resize(M);
    for (int n = 1; n <= M; ++n) prob.y0[n - 1] = std::pow(1.0 - I0, n);
    prob.rhs = [M, p, q](double t, std::span<const double> y, std::span<double> dy) {
        double pv = p.eval(t);
        double qv = q.eval(t);
        for (int n = 1; n < M; ++n) {
            double w = qv * static_cast<double>(M - n) / (M - 1);
            dy[n - 1] = -n * (pv + w) * y[n - 1] + n * w * y[n];
        }
        dy[M - 1] = -M * pv * y[M - 1];
    };

    ReducedSolution out = run(std::move(prob), tol);
    out.traj.f.resize(out.grid.size());
    for (size_t i = 0; i < out.grid.size(); ++i) out.traj.f[i] = 1.0 - out.states[i][0];
    return out;
}

ReducedSolution solve_circle_reduced(int M, const RateSchedule& p, const RateSchedule& qL,
                                     const RateSchedule& qR, double I0,
                                     const std::vector<double>& grid, Tolerances tol) {
    if (M < 2) throw std::invalid_argument("solve_circle_reduced: M >= 2 required");
    if (grid.empty()) throw std::invalid_argument("solve_circle_reduced: empty grid");

    // The reduced system depends only on q = qL + qR.
    RateSchedule q = add(qL, qR);

    IvpProblem prob;
    prob.dimension = M;
    prob.t_end = grid.back();
    prob.grid = grid;
    prob.breakpoints = merged_breakpoints({&p, &q});
    prob.y0.resize(M);
    for (int n = 1; n <= M; ++n) prob.y0[n - 1] = std::pow(1.0 - I0, n);
    prob.rhs = [M, p, q](double t, std::span<const double> y, std::span<double> dy) {
        double pv = p.eval(t);
        double qv = q.eval(t);
        for (int n = 1; n < M; ++n)
            dy[n - 1] = -(n * pv + qv) * y[n - 1] + qv * y[n];
        dy[M - 1] = -M * pv * y[M - 1];
    };

    ReducedSolution out = run(std::move(prob), tol);
    out.traj.f.resize(out.grid.size());
    for (size_t i = 0; i < out.grid.size(); ++i) out.traj.f[i] = 1.0 - out.states[i][0];
    return out;
}

ReducedSolution solve_twogroups_reduced(int M, const RateSchedule& p1, const RateSchedule& p2,
                                        const RateSchedule& q1, const RateSchedule& q2,
                                        double I01, double I02,
                                        const std::vector<double>& grid, Tolerances tol) {
    if (M < 1) throw std::invalid_argument("solve_twogroups_reduced: M >= 1 required");
    if (grid.empty()) throw std::invalid_argument("solve_twogroups_reduced: empty grid");

    const int W = M + 1;
    const int dim = W * W; // (0,0) slot pinned to 1 for uniform indexing
    auto idx = [W](int k1, int k2) { return k1 * W + k2; };

    IvpProblem prob;
    prob.dimension = dim;
    prob.t_end = grid.back();
    prob.grid = grid;
    prob.breakpoints = merged_breakpoints({&p1, &p2, &q1, &q2});
    prob.y0.resize(dim);
    for (int k1 = 0; k1 <= M; ++k1)
        for (int k2 = 0; k2 <= M; ++k2)
            prob.y0[idx(k1, k2)] = std::pow(1.0 - I01, k1) * std::pow(1.0 - I02, k2);
    prob.rhs = [M, W, idx, p1, p2, q1, q2](double t, std::span<const double> y,
                                           std::span<double> dy) {
        double p1v = p1.eval(t), p2v = p2.eval(t);
        double q1v = q1.eval(t), q2v = q2.eval(t);
        double twoM = 2.0 * M;
        dy[0] = 0.0;
        for (int k1 = 0; k1 <= M; ++k1)
            for (int k2 = 0; k2 <= M; ++k2) {
                if (k1 == 0 && k2 == 0) continue;
                double qk = k1 * q1v + k2 * q2v;
                double out_rate =
                    k1 * p1v + k2 * p2v + (twoM - k1 - k2) / twoM * qk;
                double inflow = 0.0;
                // Prefactors (M - k_i) vanish at k_i = M, so the
                // out-of-range neighbors are never read.
                if (k1 < M) inflow += (M - k1) / twoM * y[idx(k1 + 1, k2)];
                if (k2 < M) inflow += (M - k2) / twoM * y[idx(k1, k2 + 1)];
                dy[idx(k1, k2)] = -out_rate * y[idx(k1, k2)] + inflow * qk;
            }
    };

    ReducedSolution out = run(std::move(prob), tol);
    size_t n = out.grid.size();
    out.traj.f.resize(n);
    out.traj.component_names = {"f1", "f2"};
    out.traj.components.assign(2, std::vector<double>(n));
    for (size_t i = 0; i < n; ++i) {
        double f1 = 0.5 * (1.0 - out.states[i][idx(1, 0)]);
        double f2 = 0.5 * (1.0 - out.states[i][idx(0, 1)]);
        out.traj.components[0][i] = f1;
        out.traj.components[1][i] = f2;
        out.traj.f[i] = f1 + f2;
    }
    return out;
}

} // namespace netspread
