#pragma once

#include <vector>
#include <string>
#include <cstddef>

namespace netspread {

/// Piecewise rate function of time built from contiguous constant and
/// affine segments, constant beyond the last segment. Values must be
/// nonnegative everywhere. Immutable after construction.
class RateSchedule {
public:
    enum class Shape { Constant, Linear };

    struct Segment {
        double t0 = 0.0;
        double t1 = 0.0;
        Shape shape = Shape::Constant;
        // Constant: value = a. Linear: value = a + b*(t - t0).
        double a = 0.0;
        double b = 0.0;

        double value_at(double t) const {
            return shape == Shape::Constant ? a : a + b * (t - t0);
        }
        double slope() const { return shape == Shape::Constant ? 0.0 : b; }
    };

    RateSchedule() : tail_(0.0) {}
    RateSchedule(std::vector<Segment> segments, double tail);

    static RateSchedule constant(double c);
    /// Single affine segment on [t0, t1], constant tail afterwards.
    static RateSchedule ramp(double t0, double t1, double a, double b, double tail);
    /// Piecewise-constant from breakpoints {0=b0 < b1 < ... < bn} and
    /// values {v0, ..., vn} where the last value is the tail.
    static RateSchedule piecewise_constant(const std::vector<double>& breaks,
                                           const std::vector<double>& values);

    double eval(double t) const;
    /// Value and slope of the containing piece at t (right-continuous).
    struct Affine { double value; double slope; };
    Affine affine_at(double t) const;

    /// Exact integral over [t0, t1].
    double integral(double t0, double t1) const;

    /// Interior segment boundaries in (0, inf), sorted, deduplicated.
    std::vector<double> breakpoints() const;

    double tail() const { return tail_; }
    const std::vector<Segment>& segments() const { return segments_; }
    bool is_zero() const;

private:
    std::vector<Segment> segments_;
    double tail_;
};

/// Sorted, deduplicated union of the breakpoints of several schedules.
std::vector<double> merged_breakpoints(const std::vector<const RateSchedule*>& schedules);

/// Pointwise factor * s (factor >= 0).
RateSchedule scale(const RateSchedule& s, double factor);

/// Pointwise a + b on the merged segment partition.
RateSchedule add(const RateSchedule& a, const RateSchedule& b);

} // namespace netspread
