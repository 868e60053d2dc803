#pragma once

#include <cstddef>
#include <span>

namespace wecopt {

struct Summary {
    std::size_t count = 0;
    double max = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;          // n - 1 divisor
    bool std_degenerate = false;   // single value, std reported as 0
};

// Throws DomainError on empty input.
Summary summarize(std::span<const double> values);

enum class WilcoxonMethod { Auto, Exact, Normal };

struct WilcoxonResult {
    double rank_sum_a = 0.0;  // midranks for ties
    double p_value = 1.0;     // P(W >= observed) under H0, alternative: a > b
    bool exact = false;
};

// One-tailed rank-sum test that `a` is stochastically greater than `b`.
// Auto enumerates when |a| + |b| <= 12 and otherwise uses the normal
// approximation with tie and continuity corrections.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                 WilcoxonMethod method = WilcoxonMethod::Auto);

inline double wilcoxon_one_tailed(std::span<const double> a, std::span<const double> b) {
    return wilcoxon_rank_sum(a, b).p_value;
}

}  // namespace wecopt
