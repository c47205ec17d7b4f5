#pragma once

#include "netspread/master_exact.hpp"
#include "netspread/network.hpp"
#include "netspread/ode.hpp"
#include "netspread/schedule.hpp"

#include <string>
#include <variant>
#include <vector>

namespace netspread {

struct CheckReport {
    std::string name;
    std::string params_digest;
    std::vector<double> grid;
    double worst_margin = 0.0;  // smallest slack; pass iff > 0 given the tolerance
    bool pass = false;
    double tolerance = 0.0;
    std::string detail;
};

struct CompleteParams {
    RateSchedule p, q;
    double I0 = 0.0;
};
struct CircleParams {
    RateSchedule p, qL, qR;
    double I0 = 0.0;
};
struct TwoGroupsParams {
    RateSchedule p1, p2, q1, q2;
    double I01 = 0.0, I02 = 0.0;
};
using FamilyParams = std::variant<CompleteParams, CircleParams, TwoGroupsParams>;

/// f(t; M) strictly increasing along M_list, plus the state-level
/// decrease of [S^1] the proofs provide. Strictness is resolved with
/// internally tightened solves; consecutive curves must also separate
/// by more than 1e-6 somewhere on the grid.
CheckReport check_monotone_in_M(const FamilyParams& params, const std::vector<int>& M_list,
                                const std::vector<double>& grid, Tolerances tol = {});

/// Strict sandwich 1-(1-I0)e^{-int p} < f(t;M) < f_limit(t) for t > 0.
CheckReport check_bounds(const FamilyParams& params, int M, const std::vector<double>& grid,
                         Tolerances tol = {});

/// [S_Omega](t) <= [S_Omega^0] e^{-int p_Omega} + 10*abs_tol for every subset.
CheckReport check_survival_bound(const GeneralForm& net, const std::vector<double>& grid,
                                 Tolerances tol = {});

/// f_SI(t;q,I0,M) = I0 + (1-I0) f_Bass(t; p~, q~, M~) with M~ = M(1-I0),
/// for a deterministic set of M*I0 initially infected nodes; the SI side
/// comes from the exact solver, the Bass side from the reduced one.
CheckReport check_si_bass_equivalence(int M, const RateSchedule& q, double I0,
                                      const std::vector<double>& grid, Tolerances tol = {});

/// Full 2^M-1 solver vs the symmetry-reduced solver on the same family.
CheckReport check_exact_vs_reduced(const FamilyParams& params, int M,
                                   const std::vector<double>& grid, Tolerances tol = {});

/// Gap f_limit - f(t;M) positive and strictly decreasing along M_list.
CheckReport check_limit_convergence(const FamilyParams& params, const std::vector<int>& M_list,
                                    const std::vector<double>& grid, Tolerances tol = {});

/// Named suites with the default desk-scale parameters (p=0.1, q=1, ...):
/// "monotone", "bounds", "equivalence", "reduction", "convergence", "all".
std::vector<CheckReport> run_suite(const std::string& suite, uint64_t seed = 1234);

std::string reports_to_json(const std::vector<CheckReport>& reports);

} // namespace netspread
