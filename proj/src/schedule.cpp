#include "netspread/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netspread {

namespace {

constexpr double kContiguityTol = 1e-12;

void check_nonnegative(double v, double t) {
    if (v < 0.0)
        throw std::invalid_argument("RateSchedule: negative value " + std::to_string(v) +
                                    " at t=" + std::to_string(t));
}

} // namespace

RateSchedule::RateSchedule(std::vector<Segment> segments, double tail)
    : segments_(std::move(segments)), tail_(tail) {
    check_nonnegative(tail_, segments_.empty() ? 0.0 : segments_.back().t1);
    if (segments_.empty()) return;
    if (std::abs(segments_.front().t0) > 0.0)
        throw std::invalid_argument("RateSchedule: first segment must start at t=0");
    for (size_t i = 0; i < segments_.size(); ++i) {
        const Segment& s = segments_[i];
        if (!(s.t1 > s.t0))
            throw std::invalid_argument("RateSchedule: segment with t1 <= t0");
        if (i + 1 < segments_.size() &&
            std::abs(segments_[i + 1].t0 - s.t1) > kContiguityTol)
            throw std::invalid_argument("RateSchedule: segments not contiguous");
        // Affine pieces: endpoint checks suffice for nonnegativity.
        check_nonnegative(s.value_at(s.t0), s.t0);
        check_nonnegative(s.value_at(s.t1), s.t1);
    }
}

RateSchedule RateSchedule::constant(double c) {
    return RateSchedule({}, c);
}

RateSchedule RateSchedule::ramp(double t0, double t1, double a, double b, double tail) {
    std::vector<Segment> segs;
    if (t0 > 0.0)
        segs.push_back({0.0, t0, Shape::Constant, a, 0.0});
    segs.push_back({t0, t1, Shape::Linear, a, b});
    return RateSchedule(std::move(segs), tail);
}

RateSchedule RateSchedule::piecewise_constant(const std::vector<double>& breaks,
                                              const std::vector<double>& values) {
    if (breaks.size() != values.size() || breaks.empty() || breaks.front() != 0.0)
        throw std::invalid_argument("piecewise_constant: breaks must start at 0 and match values");
    std::vector<Segment> segs;
    for (size_t i = 0; i + 1 < breaks.size(); ++i)
        segs.push_back({breaks[i], breaks[i + 1], Shape::Constant, values[i], 0.0});
    return RateSchedule(std::move(segs), values.back());
}

double RateSchedule::eval(double t) const {
    return affine_at(t).value;
}

RateSchedule::Affine RateSchedule::affine_at(double t) const {
    if (t < 0.0)
        throw std::invalid_argument("RateSchedule::eval: t < 0");
    // Right-continuous: at a breakpoint, the segment beginning there wins.
    for (const Segment& s : segments_) {
        if (t >= s.t0 && t < s.t1)
            return {s.value_at(t), s.slope()};
    }
    return {tail_, 0.0};
}

double RateSchedule::integral(double t0, double t1) const {
    if (t0 < 0.0 || t0 > t1)
        throw std::invalid_argument("RateSchedule::integral: need 0 <= t0 <= t1");
    double total = 0.0;
    for (const Segment& s : segments_) {
        double lo = std::max(t0, s.t0);
        double hi = std::min(t1, s.t1);
        if (hi <= lo) continue;
        if (s.shape == Shape::Constant) {
            total += s.a * (hi - lo);
        } else {
            // Trapezoid: affine integrates exactly.
            total += 0.5 * (s.value_at(lo) + s.value_at(hi)) * (hi - lo);
        }
    }
    double tail_start = segments_.empty() ? 0.0 : segments_.back().t1;
    double lo = std::max(t0, tail_start);
    if (t1 > lo) total += tail_ * (t1 - lo);
    return total;
}

std::vector<double> RateSchedule::breakpoints() const {
    std::vector<double> bks;
    for (const Segment& s : segments_) {
        if (s.t0 > 0.0) bks.push_back(s.t0);
        bks.push_back(s.t1);
    }
    std::sort(bks.begin(), bks.end());
    bks.erase(std::unique(bks.begin(), bks.end()), bks.end());
    return bks;
}

bool RateSchedule::is_zero() const {
    if (tail_ != 0.0) return false;
    for (const Segment& s : segments_)
        if (s.value_at(s.t0) != 0.0 || s.value_at(s.t1) != 0.0) return false;
    return true;
}

std::vector<double> merged_breakpoints(const std::vector<const RateSchedule*>& schedules) {
    std::vector<double> all;
    for (const RateSchedule* s : schedules) {
        auto bks = s->breakpoints();
        all.insert(all.end(), bks.begin(), bks.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

RateSchedule scale(const RateSchedule& s, double factor) {
    if (factor < 0.0)
        throw std::invalid_argument("scale: negative factor");
    std::vector<RateSchedule::Segment> segs = s.segments();
    for (auto& seg : segs) {
        seg.a *= factor;
        seg.b *= factor;
    }
    return RateSchedule(std::move(segs), factor * s.tail());
}

RateSchedule add(const RateSchedule& a, const RateSchedule& b) {
    std::vector<double> cuts = merged_breakpoints({&a, &b});
    std::vector<RateSchedule::Segment> segs;
    double prev = 0.0;
    for (double t : cuts) {
        auto fa = a.affine_at(prev);
        auto fb = b.affine_at(prev);
        segs.push_back({prev, t,
                        (fa.slope + fb.slope) == 0.0 ? RateSchedule::Shape::Constant
                                                     : RateSchedule::Shape::Linear,
                        fa.value + fb.value, fa.slope + fb.slope});
        prev = t;
    }
    return RateSchedule(std::move(segs), a.tail() + b.tail());
}

} // namespace netspread
