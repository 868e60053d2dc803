#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "wecopt/geometry.hpp"
#include "wecopt/model.hpp"
#include "wecopt/wave_climate.hpp"

namespace wecopt {

inline constexpr double kDefaultMinSeparation = 50.0;  // m
inline constexpr double kPenaltyExponent = 20.0;

// Square lease of side sqrt(N * 20000) m with a minimum buoy separation.
struct FarmArea {
    double side = 0.0;
    double min_separation = kDefaultMinSeparation;

    static FarmArea for_buoys(std::size_t n, double min_separation = kDefaultMinSeparation);

    Box bounds() const { return Box::square(side); }
};

double farm_side(std::size_t n_buoys);

// Sum over pairs closer than r_prime of (r_prime - dist).
double violation_sum(const Layout& layout, double r_prime);

// (violation + 1)^20
double penalty_factor(double violation);

// raw / (violation + 1)^20
double penalized_fitness(double raw_power, double violation);

// Counter of full-layout evaluations. Thread-safe; `used` never exceeds `limit`.
class EvaluationBudget {
public:
    explicit EvaluationBudget(std::uint64_t limit) : limit_(limit) {}
    EvaluationBudget(const EvaluationBudget&) = delete;
    EvaluationBudget& operator=(const EvaluationBudget&) = delete;

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t used() const noexcept { return used_.load(std::memory_order_acquire); }
    std::uint64_t remaining() const noexcept { return limit_ - used(); }
    bool exhausted() const noexcept { return used() >= limit_; }

    // Reserves one evaluation and returns the new count.
    // Throws BudgetExhaustedError when nothing is left.
    std::uint64_t consume();

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
};

struct FitnessReport {
    double raw_power = 0.0;          // P_AAP, W
    double violation_sum = 0.0;      // m
    double penalty_factor = 1.0;
    double penalized_fitness = 0.0;  // W
    std::vector<double> per_buoy_power;
    std::uint64_t evaluations_used = 0;
};

// The objective every optimizer calls: scenario-averaged farm power with the
// separation penalty, metered against a budget.
class FarmEvaluator {
public:
    FarmEvaluator(WecParameters params, WaveScenario scenario, FarmArea farm,
                  const InteractionKernel& kernel = default_kernel());

    // Throws BoundsError for positions outside the farm and
    // BudgetExhaustedError once the budget is spent.
    FitnessReport evaluate(const Layout& layout, EvaluationBudget& budget) const;

    // Unmetered, unbounded power (surrogate sampling, diagnostics).
    PowerBreakdown power(const Layout& layout) const;

    double isolated_power() const noexcept { return isolated_power_; }
    const WecParameters& params() const noexcept { return params_; }
    const WaveScenario& scenario() const noexcept { return scenario_; }
    const FarmArea& farm() const noexcept { return farm_; }
    const InteractionKernel& kernel() const noexcept { return *kernel_; }

private:
    WecParameters params_;
    WaveScenario scenario_;
    FarmArea farm_;
    const InteractionKernel* kernel_;
    double isolated_power_ = 0.0;
};

FitnessReport evaluate_layout(const Layout& layout, const WecParameters& params,
                              const WaveScenario& scenario, const FarmArea& farm,
                              EvaluationBudget& budget);

}  // namespace wecopt
