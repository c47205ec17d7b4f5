#include "netspread/network.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace netspread {

namespace {

// Minimum of a schedule over the segment endpoints and the tail.
// Segments are constant or affine, so endpoint checks are exhaustive.
double min_at_endpoints(const RateSchedule& s) {
    double m = s.tail();
    for (const auto& seg : s.segments()) {
        m = std::min(m, seg.value_at(seg.t0));
        m = std::min(m, seg.value_at(seg.t1));
    }
    return m;
}

double min_sum_at_endpoints(const RateSchedule& a, const RateSchedule& b) {
    double m = std::numeric_limits<double>::infinity();
    std::vector<double> pts{0.0};
    for (const RateSchedule* s : {&a, &b}) {
        auto bks = s->breakpoints();
        pts.insert(pts.end(), bks.begin(), bks.end());
    }
    double last = pts.empty() ? 0.0 : *std::max_element(pts.begin(), pts.end());
    pts.push_back(last + 1.0); // a point in the tail region
    for (double t : pts) m = std::min(m, a.eval(t) + b.eval(t));
    return m;
}

void check_prob(double v, const std::string& name, ValidationReport& rep) {
    if (!(v >= 0.0 && v < 1.0))
        rep.issues.push_back({name + " in [0,1)", true,
                              name + "=" + std::to_string(v)});
}

void require_positive_seed_or_external(double I0, const RateSchedule& p,
                                       const std::string& label,
                                       ValidationReport& rep) {
    if (I0 <= 0.0 && min_at_endpoints(p) <= 0.0)
        rep.issues.push_back({label, true,
                              "I0=0 and p(t) vanishes at some segment endpoint"});
}

} // namespace

ValidationReport validate(const NetworkSpec& spec) {
    ValidationReport rep;
    std::visit(
        [&rep](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CompleteSpec>) {
                if (s.M < 1)
                    rep.issues.push_back({"M >= 1", true, "M=" + std::to_string(s.M)});
                check_prob(s.I0, "I0", rep);
                if (min_at_endpoints(s.q) <= 0.0)
                    rep.issues.push_back({"q(t) > 0", true,
                                          "q vanishes at a segment endpoint"});
                require_positive_seed_or_external(s.I0, s.p, "I0 > 0 or p(t) > 0", rep);
            } else if constexpr (std::is_same_v<T, CircleSpec>) {
                if (s.M < 2)
                    rep.issues.push_back({"M >= 2", true, "M=" + std::to_string(s.M)});
                check_prob(s.I0, "I0", rep);
                if (min_sum_at_endpoints(s.qL, s.qR) <= 0.0)
                    rep.issues.push_back({"qL(t) + qR(t) > 0", true,
                                          "qL+qR vanishes at a segment endpoint"});
                require_positive_seed_or_external(s.I0, s.p, "I0 > 0 or p(t) > 0", rep);
            } else if constexpr (std::is_same_v<T, TwoGroupsSpec>) {
                if (s.M < 1)
                    rep.issues.push_back({"M >= 1", true, "M=" + std::to_string(s.M)});
                check_prob(s.I01, "I01", rep);
                check_prob(s.I02, "I02", rep);
                if (min_at_endpoints(s.q1) <= 0.0)
                    rep.issues.push_back({"q1(t) > 0", true, "q1 vanishes"});
                if (min_at_endpoints(s.q2) <= 0.0)
                    rep.issues.push_back({"q2(t) > 0", true, "q2 vanishes"});
                require_positive_seed_or_external(s.I01, s.p1, "I01 + p1(t) > 0", rep);
                require_positive_seed_or_external(s.I02, s.p2, "I02 + p2(t) > 0", rep);
            } else { // GeneralForm
                if (s.M < 1)
                    rep.issues.push_back({"M >= 1", true, "M=" + std::to_string(s.M)});
                if (static_cast<int>(s.p.size()) != s.M)
                    rep.issues.push_back({"one p schedule per node", true, ""});
                if (static_cast<int>(s.I0.size()) != s.M)
                    rep.issues.push_back({"one I0 per node", true, ""});
                for (double v : s.I0) check_prob(v, "I0_j", rep);
                for (const Edge& e : s.edges) {
                    if (e.from == e.to)
                        rep.issues.push_back({"no self-edges", true,
                                              "node " + std::to_string(e.from)});
                    if (e.from < 0 || e.from >= s.M || e.to < 0 || e.to >= s.M)
                        rep.issues.push_back({"edge endpoints in range", true, ""});
                }
            }
        },
        spec);
    return rep;
}

GeneralForm materialize(const NetworkSpec& spec, bool allow_invalid) {
    if (!allow_invalid) {
        ValidationReport rep = validate(spec);
        if (!rep.ok()) {
            std::string msg = "network validation failed:";
            for (const auto& i : rep.issues) msg += " [" + i.assumption + "]";
            throw std::invalid_argument(msg);
        }
    }
    GeneralForm out;
    std::visit(
        [&out](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CompleteSpec>) {
                out.M = s.M;
                out.p.assign(s.M, s.p);
                out.I0.assign(s.M, s.I0);
                if (s.M > 1) {
                    RateSchedule w = scale(s.q, 1.0 / (s.M - 1));
                    for (int k = 0; k < s.M; ++k)
                        for (int j = 0; j < s.M; ++j)
                            if (k != j) out.edges.push_back({k, j, w});
                }
            } else if constexpr (std::is_same_v<T, CircleSpec>) {
                out.M = s.M;
                out.p.assign(s.M, s.p);
                out.I0.assign(s.M, s.I0);
                for (int k = 0; k < s.M; ++k) {
                    int right = (k + 1) % s.M; // (j-k) mod M = 1: k is j's left neighbor
                    int left = (k - 1 + s.M) % s.M;
                    if (s.M == 2) {
                        // Both indicators fire on the single neighbor.
                        out.edges.push_back({k, right, add(s.qL, s.qR)});
                    } else {
                        out.edges.push_back({k, right, s.qL});
                        out.edges.push_back({k, left, s.qR});
                    }
                }
            } else if constexpr (std::is_same_v<T, TwoGroupsSpec>) {
                int total = 2 * s.M;
                out.M = total;
                out.p.reserve(total);
                for (int j = 0; j < total; ++j) {
                    bool group1 = j < s.M;
                    out.p.push_back(group1 ? s.p1 : s.p2);
                    out.I0.push_back(group1 ? s.I01 : s.I02);
                }
                RateSchedule w1 = scale(s.q1, 1.0 / total);
                RateSchedule w2 = scale(s.q2, 1.0 / total);
                // The model's sum includes a self term; it is inert since the
                // rate only applies while the target is a nonadopter.
                for (int k = 0; k < total; ++k)
                    for (int j = 0; j < total; ++j)
                        if (k != j) out.edges.push_back({k, j, j < s.M ? w1 : w2});
            } else {
                out = s;
            }
        },
        spec);
    return out;
}

} // namespace netspread
