#pragma once

#include "netspread/ode.hpp"
#include "netspread/schedule.hpp"
#include "netspread/trajectory.hpp"

#include <vector>

namespace netspread {

/// Infinite-population limits of the three structured families.

/// df/dt = (1 - f)(p(t) + q(t) f), f(0) = I0.
Trajectory solve_compartmental(const RateSchedule& p, const RateSchedule& q, double I0,
                               const std::vector<double>& grid, Tolerances tol = {});

/// One-dimensional lattice limit with q = qL + qR supplied as one schedule:
/// df/dt = (1 - f)(p(t) + q(t)(1 - (1 - I0) e^{-int_0^t p})), f(0) = I0.
Trajectory solve_1d_limit(const RateSchedule& p, const RateSchedule& q_total, double I0,
                          const std::vector<double>& grid, Tolerances tol = {});

/// Two-group limit system; trajectory carries f = f1 + f2 plus f1, f2.
Trajectory solve_twogroups_limit(const RateSchedule& p1, const RateSchedule& p2,
                                 const RateSchedule& q1, const RateSchedule& q2,
                                 double I01, double I02, const std::vector<double>& grid,
                                 Tolerances tol = {});

/// Time-independent closed forms.
double closed_form_bass_compart(double p, double q, double t);
double closed_form_si_compart(double q, double I0, double t);
double closed_form_bass_1d(double p, double q, double t);
double closed_form_si_1d(double q, double I0, double t);

} // namespace netspread
