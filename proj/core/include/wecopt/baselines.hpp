#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wecopt/fitness.hpp"
#include "wecopt/heuristics.hpp"

namespace wecopt {

enum class MutationKind { FixedSigma, UniformS, LinearDecay, OneFifth };

struct MutationSchedule {
    MutationKind kind = MutationKind::FixedSigma;
    double sigma = 10.0;         // m: Gaussian std (FixedSigma, OneFifth start) or s (UniformS)
    double decay_start = 30.0;   // m, LinearDecay
    double decay_end = 1.0;      // m, LinearDecay
    std::size_t window = 20;     // OneFifth success window, steps
    double adapt_factor = 1.5;   // OneFifth

    void validate() const;
    // Step size used for mutation number `step` (0-based) of `total`.
    double linear_sigma(std::size_t step, std::size_t total) const;
};

// `budget.limit()` uniform layouts in [0, side]^2N; the best penalized one wins.
SearchResult run_random_search(const FarmEvaluator& evaluator, std::size_t n_buoys, EvaluationBudget& budget,
                               std::uint64_t seed);

// Elitist (1+1) strategy over all 2N coordinates; a child replaces the parent
// only on strict improvement.
SearchResult run_one_plus_one_ea(const FarmEvaluator& evaluator, std::size_t n_buoys,
                                 const MutationSchedule& schedule, EvaluationBudget& budget, std::uint64_t seed);

struct DeOptions {
    std::size_t mu = 50;
    double F = 0.5;
    double Pcr = 0.5;
};

// DE/rand/1/bin with generational (synchronous) greedy selection.
SearchResult run_de(const FarmEvaluator& evaluator, std::size_t n_buoys, const DeOptions& options,
                    EvaluationBudget& budget, std::uint64_t seed);

// Binomial crossover with one forced coordinate `forced`.
std::vector<double> de_crossover(const std::vector<double>& target, const std::vector<double>& donor, double Pcr,
                                 std::size_t forced, std::mt19937_64& rng);

// Uniform layout; redrawn up to 100 times while the violation sum is positive,
// keeping the least-violating draw.
Layout random_layout(std::size_t n_buoys, const FarmArea& farm, std::mt19937_64& rng);

}  // namespace wecopt
