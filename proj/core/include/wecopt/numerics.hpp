#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>

#include <Eigen/Core>

#include "wecopt/geometry.hpp"

namespace wecopt {

// Objective over one buoy position. All refiners maximize.
using PointObjective = std::function<double(const Position&)>;

struct RefinerResult {
    Position best_point;
    double best_value = 0.0;
    std::size_t evaluations_used = 0;
    bool converged = false;
    std::string termination_reason;
};

struct NelderMeadOptions {
    std::size_t max_evals = 20;
    double initial_edge = 10.0;   // m
    double min_diameter = 0.1;    // m
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
};

// Bounded Nelder-Mead on a 2D position. `start_value` is f(start) when the
// caller already knows it; otherwise the start is evaluated (and counted).
// Every proposal is clamped into `bounds`.
RefinerResult nelder_mead(const PointObjective& objective, const Position& start,
                          std::optional<double> start_value, const Box& bounds,
                          const NelderMeadOptions& options = {});

struct GradientEstimate {
    Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
    std::size_t evaluations = 0;
};

// Central differences, one-sided within h of a bound (no probe leaves the
// box). `value_at_point` avoids re-evaluating f(point) for one-sided probes.
GradientEstimate fd_gradient(const PointObjective& objective, const Position& point,
                             const Box& bounds, double h = 0.5,
                             std::optional<double> value_at_point = std::nullopt);

enum class BoundaryStrategy { ActiveSet, Sqp, InteriorPoint };

struct DescentOptions {
    std::size_t max_evals = 20;
    double initial_step = 20.0;     // m
    double armijo = 1e-4;
    double activity_tolerance = 0.1;  // m
    double fd_step = 0.5;           // m
    double min_step = 1e-3;         // m
    double barrier_scale = 1e-3;    // mu = barrier_scale * |f(start)|
};

// Gradient ascent with backtracking, distinguished by how the box is handled:
// ActiveSet freezes coordinates pressed against a bound, Sqp takes projected
// quasi-Newton (BFGS) steps, InteriorPoint adds a log barrier and stays strictly
// inside. Gradient probes count against max_evals.
RefinerResult constrained_descent(const PointObjective& objective, const Position& start,
                                  std::optional<double> start_value, const Box& bounds,
                                  BoundaryStrategy strategy, const DescentOptions& options = {});

// Point of `bounds` maximizing the minimum distance to `placed`, via Sqp
// descent (20 proxy calls) from the best of three random interior starts.
Position max_distance_point(std::span<const Position> placed, const Box& bounds,
                            std::mt19937_64& rng);

double min_distance_to(std::span<const Position> placed, const Position& p);

}  // namespace wecopt
