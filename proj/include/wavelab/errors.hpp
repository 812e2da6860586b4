#pragma once

#include <stdexcept>
#include <string>

namespace wavelab {

/// A computation produced or received a NaN/Inf sample.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the CH stepper when max|u_x| crosses the configured ceiling.
class WaveBreakingError : public std::runtime_error {
public:
    WaveBreakingError(double time, double max_slope, const std::string& what)
        : std::runtime_error(what), time_(time), max_slope_(max_slope) {}

    double time() const noexcept { return time_; }
    double max_slope() const noexcept { return max_slope_; }

private:
    double time_;
    double max_slope_;
};

/// Raised by the peakon integrator when a peakon meets an antipeakon.
class PeakonCollisionError : public std::runtime_error {
public:
    PeakonCollisionError(double time, double estimated_collision_time, int first, int second,
                         const std::string& what)
        : std::runtime_error(what),
          time_(time),
          estimate_(estimated_collision_time),
          first_(first),
          second_(second) {}

    double time() const noexcept { return time_; }
    double estimated_collision_time() const noexcept { return estimate_; }
    int first() const noexcept { return first_; }
    int second() const noexcept { return second_; }

private:
    double time_;
    double estimate_;
    int first_;
    int second_;
};

/// A sampled path stopped being orientation preserving (d/dx gamma <= 0 somewhere).
class NotDiffeomorphismError : public std::runtime_error {
public:
    NotDiffeomorphismError(double min_slope, double eps, const std::string& what)
        : std::runtime_error(what), min_slope_(min_slope), eps_(eps) {}

    double min_slope() const noexcept { return min_slope_; }
    /// Perturbation size that triggered the failure (0 for unperturbed paths).
    double eps() const noexcept { return eps_; }

private:
    double min_slope_;
    double eps_;
};

/// Invalid or incomplete scenario configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wavelab
