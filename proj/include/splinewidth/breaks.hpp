#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace splinewidth {

/// Strictly increasing break points tau_0 < ... < tau_{N+1} on [a,b].
class BreakSequence {
public:
    explicit BreakSequence(std::vector<double> points);

    const std::vector<double>& points() const { return points_; }
    double a() const { return points_.front(); }
    double b() const { return points_.back(); }
    std::size_t intervals() const { return points_.size() - 1; }

    double h() const { return h_; }          // max interval length
    double h_min() const { return h_min_; }  // min interval length
    /// max{2 h_0, h_1, ..., h_{N-1}, 2 h_N}, the width entering the
    /// reduced-space estimates.
    double h_hat() const { return h_hat_; }

    std::string to_json() const;
    static BreakSequence from_json(const std::string& text);

private:
    std::vector<double> points_;
    double h_ = 0.0, h_min_ = 0.0, h_hat_ = 0.0;
};

BreakSequence make_uniform_breaks(std::size_t n_intervals, double a, double b);
BreakSequence make_explicit_breaks(std::vector<double> points);
/// Uniform breaks with interior points shifted by U(-amplitude, amplitude);
/// deterministic given the seed. amplitude must stay below half the uniform
/// spacing so the sequence remains increasing.
BreakSequence make_random_perturbed_breaks(std::size_t n_intervals, double amplitude,
                                           std::uint32_t seed, double a, double b);

/// The degree-dependent sequences tau_{p,i} on (0,1) whose constrained spline
/// spaces of dimension n are optimal for the boundary-value function classes
/// (i = 0: sines, i = 1: cosines, i = 2: shifted sines).
BreakSequence make_special_breaks(int p, int i, std::size_t n);

}  // namespace splinewidth
