#include "wecopt/fitness.hpp"

#include <cmath>
#include <sstream>

#include "wecopt/errors.hpp"

namespace wecopt {

double farm_side(std::size_t n_buoys) {
    if (n_buoys < 1) throw DomainError("farm needs at least one buoy");
    return std::sqrt(static_cast<double>(n_buoys) * 20000.0);
}

FarmArea FarmArea::for_buoys(std::size_t n, double min_separation) {
    if (!(min_separation > 0.0)) throw DomainError("minimum separation must be positive");
    return {farm_side(n), min_separation};
}

double violation_sum(const Layout& layout, double r_prime) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < layout.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.size(); ++j) {
            const double d = distance(layout[i], layout[j]);
            if (d < r_prime) sum += r_prime - d;
        }
    }
    return sum;
}

double penalty_factor(double violation) {
    return std::pow(violation + 1.0, kPenaltyExponent);
}

double penalized_fitness(double raw_power, double violation) {
    if (violation == 0.0) return raw_power;
    return raw_power / penalty_factor(violation);
}

std::uint64_t EvaluationBudget::consume() {
    auto current = used_.load(std::memory_order_relaxed);
    do {
        if (current >= limit_) {
            throw BudgetExhaustedError("evaluation budget of " + std::to_string(limit_) + " exhausted");
        }
    } while (!used_.compare_exchange_weak(current, current + 1, std::memory_order_acq_rel));
    return current + 1;
}

FarmEvaluator::FarmEvaluator(WecParameters params, WaveScenario scenario, FarmArea farm,
                             const InteractionKernel& kernel)
    : params_(params), scenario_(std::move(scenario)), farm_(farm), kernel_(&kernel) {
    params_.validate();
    scenario_.validate();
    if (!(farm_.side > 0.0) || !(farm_.min_separation > 0.0)) {
        throw DomainError("farm side and minimum separation must be positive");
    }
    isolated_power_ = isolated_annual_average_power(params_, scenario_, *kernel_);
}

PowerBreakdown FarmEvaluator::power(const Layout& layout) const {
    return annual_average_power_breakdown(layout, params_, scenario_, *kernel_);
}

FitnessReport FarmEvaluator::evaluate(const Layout& layout, EvaluationBudget& budget) const {
    const Box box = farm_.bounds();
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (!box.contains(layout[i])) {
            std::ostringstream msg;
            msg << "buoy " << i << " at (" << layout[i].x << ", " << layout[i].y
                << ") lies outside the farm [0, " << farm_.side << "]^2";
            throw BoundsError(msg.str());
        }
    }

    FitnessReport report;
    report.evaluations_used = budget.consume();
    auto breakdown = power(layout);
    report.raw_power = breakdown.total;
    report.per_buoy_power = std::move(breakdown.per_buoy);
    report.violation_sum = violation_sum(layout, farm_.min_separation);
    report.penalty_factor = penalty_factor(report.violation_sum);
    report.penalized_fitness = penalized_fitness(report.raw_power, report.violation_sum);
    return report;
}

FitnessReport evaluate_layout(const Layout& layout, const WecParameters& params,
                              const WaveScenario& scenario, const FarmArea& farm,
                              EvaluationBudget& budget) {
    return FarmEvaluator(params, scenario, farm).evaluate(layout, budget);
}

}  // namespace wecopt
