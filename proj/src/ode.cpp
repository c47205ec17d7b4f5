#include "netspread/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace netspread {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
// 5th-order solution weights (also the a7* row; FSAL).
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Error weights: b - bhat.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

void check_finite(std::span<const double> v, double t) {
    for (double x : v)
        if (!std::isfinite(x))
            throw std::runtime_error("ode: non-finite rhs value at t=" + std::to_string(t));
}

} // namespace

OdeSolution integrate(const IvpProblem& prob, Tolerances tol) {
    if (tol.rel <= 0.0 || tol.abs <= 0.0)
        throw std::invalid_argument("ode: tolerances must be positive");
    const int n = prob.dimension;
    if (static_cast<int>(prob.y0.size()) != n)
        throw std::invalid_argument("ode: y0 dimension mismatch");

    // Stop times: breakpoints and grid points up to t_end, plus t_end.
    std::vector<double> stops;
    for (double t : prob.breakpoints)
        if (t > 0.0 && t < prob.t_end) stops.push_back(t);
    for (double t : prob.grid)
        if (t > 0.0 && t < prob.t_end) stops.push_back(t);
    stops.push_back(prob.t_end);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    OdeSolution sol;
    std::vector<double> y = prob.y0;
    double t = 0.0;

    auto emit_if_on_grid = [&](double tt, const std::vector<double>& yy) {
        for (double g : prob.grid)
            if (g == tt || std::abs(g - tt) <= 1e-15 * std::max(1.0, std::abs(tt))) {
                sol.times.push_back(g);
                sol.states.push_back(yy);
            }
    };
    emit_if_on_grid(0.0, y);

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    std::vector<double> ytmp(n), y5(n);

    prob.rhs(t, y, k1);
    check_finite(k1, t);

    const double hmin_factor = 1e-14;
    double h = 0.0; // chosen at first step of each smooth piece

    for (double stop : stops) {
        if (stop <= t) continue;
        // Fresh derivative at the start of each smooth piece (coefficients
        // may jump at the breakpoint we just crossed).
        prob.rhs(t, y, k1);
        check_finite(k1, t);
        if (h <= 0.0) h = (stop - t) / 16.0;
        while (t < stop) {
            h = std::min(h, stop - t);
            if (h < hmin_factor * std::max(1.0, std::abs(t)))
                throw std::runtime_error("ode: step size underflow at t=" + std::to_string(t));

            auto stage = [&](double c, std::span<double> k,
                             std::initializer_list<std::pair<const std::vector<double>*, double>> terms) {
                for (int i = 0; i < n; ++i) {
                    double acc = y[i];
                    for (const auto& [kv, w] : terms) acc += h * w * (*kv)[i];
                    ytmp[i] = acc;
                }
                prob.rhs(t + c * h, ytmp, k);
            };

            stage(c2, k2, {{&k1, a21}});
            stage(c3, k3, {{&k1, a31}, {&k2, a32}});
            stage(c4, k4, {{&k1, a41}, {&k2, a42}, {&k3, a43}});
            stage(c5, k5, {{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
            stage(1.0, k6, {{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});
            for (int i = 0; i < n; ++i)
                y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            prob.rhs(t + h, y5, k7);
            check_finite(k7, t + h);

            double err = 0.0;
            for (int i = 0; i < n; ++i) {
                double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                 e6 * k6[i] + e7 * k7[i]);
                // Margin factor keeps the accumulated global error within
                // the requested tolerance, not only the per-step error.
                constexpr double margin = 1.0 / 50.0;
                double sc = margin * (tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(y5[i])));
                err += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(err / n);

            if (err <= 1.0) {
                t += h;
                y = y5;
                k1 = k7; // FSAL
                if (t >= stop) emit_if_on_grid(stop, y);
            }
            double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
        }
        t = stop;
    }
    return sol;
}

} // namespace netspread
