#include "wecopt/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace wecopt {

namespace {

Eigen::Vector2d vec(const Position& p) { return {p.x, p.y}; }
Position pos(const Eigen::Vector2d& v) { return {v.x(), v.y()}; }

// Wraps an objective with a hard call cap.
class CappedObjective {
public:
    CappedObjective(const PointObjective& f, std::size_t cap) : f_(f), cap_(cap) {}

    bool can_call(std::size_t n = 1) const { return used_ + n <= cap_; }
    std::size_t used() const { return used_; }
    std::size_t remaining() const { return cap_ - used_; }

    double operator()(const Position& p) {
        ++used_;
        return f_(p);
    }

private:
    const PointObjective& f_;
    std::size_t cap_;
    std::size_t used_ = 0;
};

struct Vertex {
    Position p;
    double value;
};

double simplex_diameter(const std::array<Vertex, 3>& s) {
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) d = std::max(d, distance(s[i].p, s[j].p));
    }
    return d;
}

double axis_probe(double x, double lo, double hi, double edge) {
    const double forward = std::min(x + edge, hi);
    if (forward > x) return forward;
    return std::max(x - edge, lo);
}

}  // namespace

double min_distance_to(std::span<const Position> placed, const Position& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : placed) best = std::min(best, distance(p, q));
    return best;
}

RefinerResult nelder_mead(const PointObjective& objective, const Position& start,
                          std::optional<double> start_value, const Box& bounds,
                          const NelderMeadOptions& opt) {
    CappedObjective f(objective, opt.max_evals);
    RefinerResult result;
    result.best_point = start;

    if (!start_value) {
        if (!f.can_call()) {
            result.best_value = std::numeric_limits<double>::quiet_NaN();
            result.termination_reason = "evaluation cap reached";
            return result;
        }
        start_value = f(start);
    }
    result.best_value = *start_value;

    std::array<Vertex, 3> simplex{{{start, *start_value},
                                   {{axis_probe(start.x, bounds.x_lo, bounds.x_hi, opt.initial_edge), start.y}, 0.0},
                                   {{start.x, axis_probe(start.y, bounds.y_lo, bounds.y_hi, opt.initial_edge)}, 0.0}}};
    for (std::size_t i = 1; i < 3; ++i) {
        if (!f.can_call()) {
            result.evaluations_used = f.used();
            result.termination_reason = "evaluation cap reached";
            return result;
        }
        simplex[i].value = f(simplex[i].p);
    }

    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
    };
    auto propose = [&](const Eigen::Vector2d& v) { return bounds.clamp(pos(v)); };

    while (true) {
        order();
        if (simplex_diameter(simplex) < opt.min_diameter) {
            result.converged = true;
            result.termination_reason = "simplex diameter below tolerance";
            break;
        }
        if (!f.can_call()) {
            result.termination_reason = "evaluation cap reached";
            break;
        }

        auto& best = simplex[0];
        auto& second = simplex[1];
        auto& worst = simplex[2];
        const Eigen::Vector2d centroid = 0.5 * (vec(best.p) + vec(second.p));
        const Eigen::Vector2d w = vec(worst.p);

        const Position r = propose(centroid + opt.reflection * (centroid - w));
        const double fr = f(r);

        if (fr > best.value) {
            if (f.can_call()) {
                const Position e = propose(centroid + opt.expansion * (vec(r) - centroid));
                const double fe = f(e);
                worst = fe > fr ? Vertex{e, fe} : Vertex{r, fr};
            } else {
                worst = {r, fr};
            }
            continue;
        }
        if (fr > second.value) {
            worst = {r, fr};
            continue;
        }
        if (!f.can_call()) {
            if (fr > worst.value) worst = {r, fr};
            result.termination_reason = "evaluation cap reached";
            break;
        }
        const bool outside = fr > worst.value;
        const Position c = outside ? propose(centroid + opt.contraction * (vec(r) - centroid))
                                   : propose(centroid + opt.contraction * (w - centroid));
        const double fc = f(c);
        if (outside ? fc >= fr : fc > worst.value) {
            worst = {c, fc};
            continue;
        }
        if (outside) worst = {r, fr};

        bool capped = false;
        for (std::size_t i = 1; i < 3; ++i) {
            if (!f.can_call()) {
                capped = true;
                break;
            }
            const Position s = propose(vec(simplex[0].p) + opt.shrink * (vec(simplex[i].p) - vec(simplex[0].p)));
            simplex[i] = {s, f(s)};
        }
        if (capped) {
            result.termination_reason = "evaluation cap reached";
            break;
        }
    }

    order();
    if (simplex[0].value > result.best_value) {
        result.best_point = simplex[0].p;
        result.best_value = simplex[0].value;
    }
    result.evaluations_used = f.used();
    return result;
}

GradientEstimate fd_gradient(const PointObjective& objective, const Position& point,
                             const Box& bounds, double h, std::optional<double> value_at_point) {
    GradientEstimate out;
    auto call = [&](const Position& p) {
        ++out.evaluations;
        return objective(p);
    };
    auto center = [&]() {
        if (!value_at_point) value_at_point = call(point);
        return *value_at_point;
    };

    const std::array<double, 2> x{point.x, point.y};
    const std::array<double, 2> lo{bounds.x_lo, bounds.y_lo};
    const std::array<double, 2> hi{bounds.x_hi, bounds.y_hi};
    for (int axis = 0; axis < 2; ++axis) {
        auto shifted = [&](double delta) {
            Position p = point;
            (axis == 0 ? p.x : p.y) += delta;
            return p;
        };
        const bool room_below = x[axis] - h >= lo[axis];
        const bool room_above = x[axis] + h <= hi[axis];
        if (room_below && room_above) {
            out.gradient[axis] = (call(shifted(h)) - call(shifted(-h))) / (2.0 * h);
        } else if (room_above) {
            out.gradient[axis] = (call(shifted(h)) - center()) / h;
        } else if (room_below) {
            out.gradient[axis] = (center() - call(shifted(-h))) / h;
        } else {
            out.gradient[axis] = 0.0;
        }
    }
    return out;
}

namespace {

// Probes needed by fd_gradient at `p` when f(p) is already known.
std::size_t gradient_cost(const Position& p, const Box& b, double h) {
    std::size_t n = 0;
    for (auto [x, lo, hi] : {std::array{p.x, b.x_lo, b.x_hi}, std::array{p.y, b.y_lo, b.y_hi}}) {
        const bool below = x - h >= lo;
        const bool above = x + h <= hi;
        n += (below && above) ? 2 : (below || above) ? 1 : 0;
    }
    return n;
}

double barrier(const Position& p, const Box& b) {
    return std::log(p.x - b.x_lo) + std::log(b.x_hi - p.x) + std::log(p.y - b.y_lo) +
           std::log(b.y_hi - p.y);
}

Eigen::Vector2d barrier_gradient(const Position& p, const Box& b) {
    return {1.0 / (p.x - b.x_lo) - 1.0 / (b.x_hi - p.x), 1.0 / (p.y - b.y_lo) - 1.0 / (b.y_hi - p.y)};
}

bool strictly_inside(const Position& p, const Box& b) {
    return p.x > b.x_lo && p.x < b.x_hi && p.y > b.y_lo && p.y < b.y_hi;
}

// Largest t with p + t d still strictly inside (times a fraction-to-boundary factor).
double interior_step_limit(const Position& p, const Eigen::Vector2d& d, const Box& b) {
    double t = std::numeric_limits<double>::infinity();
    const std::array<double, 2> x{p.x, p.y};
    const std::array<double, 2> lo{b.x_lo, b.y_lo};
    const std::array<double, 2> hi{b.x_hi, b.y_hi};
    for (int i = 0; i < 2; ++i) {
        if (d[i] > 0.0) t = std::min(t, (hi[i] - x[i]) / d[i]);
        if (d[i] < 0.0) t = std::min(t, (lo[i] - x[i]) / d[i]);
    }
    return 0.995 * t;
}

}  // namespace

RefinerResult constrained_descent(const PointObjective& objective, const Position& start,
                                  std::optional<double> start_value, const Box& bounds,
                                  BoundaryStrategy strategy, const DescentOptions& opt) {
    CappedObjective f(objective, opt.max_evals);
    RefinerResult result;
    result.best_point = start;

    if (!start_value) {
        if (!f.can_call()) {
            result.best_value = std::numeric_limits<double>::quiet_NaN();
            result.termination_reason = "evaluation cap reached";
            return result;
        }
        start_value = f(start);
    }
    result.best_value = *start_value;

    const bool interior = strategy == BoundaryStrategy::InteriorPoint;
    Position x = start;
    if (interior && !strictly_inside(x, bounds)) {
        // Pull the start just inside so the barrier is defined.
        const double eps = 1e-3;
        x = {std::clamp(x.x, bounds.x_lo + eps, bounds.x_hi - eps),
             std::clamp(x.y, bounds.y_lo + eps, bounds.y_hi - eps)};
        if (!f.can_call()) {
            result.evaluations_used = f.used();
            result.termination_reason = "evaluation cap reached";
            return result;
        }
        const double fx0 = f(x);
        if (fx0 > result.best_value) {
            result.best_point = x;
            result.best_value = fx0;
        }
        start_value = fx0;
    }
    double fx = *start_value;
    double mu = interior ? opt.barrier_scale * std::abs(*start_value) : 0.0;
    auto merit = [&](const Position& p, double fp) { return interior ? fp + mu * barrier(p, bounds) : fp; };

    Eigen::Matrix2d inv_hessian = Eigen::Matrix2d::Identity();
    bool hessian_scaled = false;
    std::optional<Eigen::Vector2d> last_step;
    std::optional<Eigen::Vector2d> last_gradient;

    while (true) {
        if (f.remaining() < gradient_cost(x, bounds, opt.fd_step) + 1) {
            result.termination_reason = "evaluation cap reached";
            break;
        }
        const auto fd = fd_gradient([&](const Position& p) { return f(p); }, x, bounds, opt.fd_step, fx);
        Eigen::Vector2d g = fd.gradient;
        if (interior) g += mu * barrier_gradient(x, bounds);

        Eigen::Vector2d direction = g;
        double step = opt.initial_step;
        switch (strategy) {
        case BoundaryStrategy::ActiveSet: {
            const std::array<double, 2> c{x.x, x.y};
            const std::array<double, 2> lo{bounds.x_lo, bounds.y_lo};
            const std::array<double, 2> hi{bounds.x_hi, bounds.y_hi};
            for (int i = 0; i < 2; ++i) {
                const bool at_lo = c[i] - lo[i] <= opt.activity_tolerance && g[i] < 0.0;
                const bool at_hi = hi[i] - c[i] <= opt.activity_tolerance && g[i] > 0.0;
                if (at_lo || at_hi) direction[i] = 0.0;
            }
            break;
        }
        case BoundaryStrategy::Sqp: {
            if (last_step && last_gradient) {
                const Eigen::Vector2d s = *last_step;
                const Eigen::Vector2d y = *last_gradient - g;  // curvature of -f
                const double ys = y.dot(s);
                if (ys > 1e-12 * s.norm() * y.norm()) {
                    if (!hessian_scaled) {
                        inv_hessian = Eigen::Matrix2d::Identity() * (ys / y.squaredNorm());
                        hessian_scaled = true;
                    }
                    const double rho = 1.0 / ys;
                    const Eigen::Matrix2d v = Eigen::Matrix2d::Identity() - rho * s * y.transpose();
                    inv_hessian = v * inv_hessian * v.transpose() + rho * s * s.transpose();
                }
            }
            direction = inv_hessian * g;
            if (direction.dot(g) <= 0.0) {
                inv_hessian = Eigen::Matrix2d::Identity();
                hessian_scaled = false;
                direction = g;
            }
            break;
        }
        case BoundaryStrategy::InteriorPoint:
            break;
        }

        // Relative test: deep in the penalty region f itself is tiny.
        const double dnorm = direction.norm();
        if (!(dnorm > 1e-12 * std::max(std::abs(fx), std::numeric_limits<double>::min()))) {
            result.converged = true;
            result.termination_reason = strategy == BoundaryStrategy::ActiveSet
                                            ? "projected gradient vanished on the active set"
                                            : "gradient vanished";
            break;
        }
        // Sqp uses the quasi-Newton length capped at initial_step; the others a unit direction.
        Eigen::Vector2d unit;
        if (strategy == BoundaryStrategy::Sqp && hessian_scaled) {
            unit = direction;
            step = std::min(1.0, opt.initial_step / dnorm);
        } else {
            unit = direction / dnorm;
        }
        if (interior) step = std::min(step, interior_step_limit(x, unit, bounds));

        const double merit_x = merit(x, fx);
        bool accepted = false;
        bool stalled = false;
        while (f.can_call()) {
            const Eigen::Vector2d raw = vec(x) + step * unit;
            const Position trial = interior ? pos(raw) : bounds.clamp(pos(raw));
            const Eigen::Vector2d moved = vec(trial) - vec(x);
            if (moved.norm() < opt.min_step) {
                stalled = true;
                break;
            }
            const double ft = f(trial);
            if (merit(trial, ft) >= merit_x + opt.armijo * g.dot(moved)) {
                last_step = moved;
                last_gradient = g;
                x = trial;
                fx = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (accepted) {
            if (fx > result.best_value) {
                result.best_point = x;
                result.best_value = fx;
            }
            if (interior) mu *= 0.5;
            continue;
        }
        if (stalled) {
            result.converged = true;
            result.termination_reason = "line search step below tolerance";
        } else {
            result.termination_reason = "evaluation cap reached";
        }
        break;
    }

    result.evaluations_used = f.used();
    return result;
}

Position max_distance_point(std::span<const Position> placed, const Box& bounds, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ux(bounds.x_lo, bounds.x_hi);
    std::uniform_real_distribution<double> uy(bounds.y_lo, bounds.y_hi);
    const PointObjective proxy = [&](const Position& p) { return min_distance_to(placed, p); };

    Position best_start{};
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        const Position p{ux(rng), uy(rng)};
        const double v = proxy(p);
        if (v > best_value) {
            best_value = v;
            best_start = p;
        }
    }

    DescentOptions opt;
    opt.max_evals = 20;
    // The proxy is cheap and scale-free; steps are sized to the box instead of the landscape.
    opt.initial_step = 0.5 * std::hypot(bounds.x_hi - bounds.x_lo, bounds.y_hi - bounds.y_lo);
    return constrained_descent(proxy, best_start, best_value, bounds, BoundaryStrategy::Sqp, opt).best_point;
}

}  // namespace wecopt
