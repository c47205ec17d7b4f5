#pragma once

#include "netspread/schedule.hpp"

#include <string>
#include <variant>
#include <vector>

namespace netspread {

/// Homogeneous complete network: every ordered pair carries weight q(t)/(M-1).
struct CompleteSpec {
    int M = 1;
    RateSchedule p;
    RateSchedule q;
    double I0 = 0.0;
};

/// Circle with anisotropic nearest-neighbor influence.
struct CircleSpec {
    int M = 2;
    RateSchedule p;
    RateSchedule qL;
    RateSchedule qR;
    double I0 = 0.0;
};

/// Complete network of two homogeneous groups of M nodes each (2M total).
/// Node j < M is in group 1, node j >= M in group 2; the incoming weight
/// of a group-k node from any other node is q_k(t)/(2M).
struct TwoGroupsSpec {
    int M = 1;
    RateSchedule p1, p2;
    RateSchedule q1, q2;
    double I01 = 0.0, I02 = 0.0;
};

struct Edge {
    int from = 0;
    int to = 0;
    RateSchedule rate;
};

/// Arbitrary network in node-level form: per-node external rates,
/// directed weighted edges, per-node seed probabilities.
struct GeneralForm {
    int M = 1;
    std::vector<RateSchedule> p;
    std::vector<Edge> edges;
    std::vector<double> I0;
};

using NetworkSpec = std::variant<CompleteSpec, CircleSpec, TwoGroupsSpec, GeneralForm>;

struct ValidationIssue {
    std::string assumption;
    bool strict = true;   // strict: required by the convergence guarantees
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    bool strict_ok() const {
        for (const auto& i : issues)
            if (i.strict) return false;
        return true;
    }
};

ValidationReport validate(const NetworkSpec& spec);

/// Expand a structured family into the node-level form. Throws on
/// validation failure unless allow_invalid is set.
GeneralForm materialize(const NetworkSpec& spec, bool allow_invalid = false);

} // namespace netspread
