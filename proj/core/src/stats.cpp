#include "wecopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "wecopt/errors.hpp"

namespace wecopt {

namespace {

// Midranks (1-based) of the concatenation a ++ b.
std::vector<double> midranks(std::span<const double> a, std::span<const double> b) {
    std::vector<double> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return all[i] < all[j]; });
    std::vector<double> ranks(all.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && all[order[j + 1]] == all[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

// Counts subsets of size `n` of `ranks` whose sum reaches `w`.
double exact_upper_tail(const std::vector<double>& ranks, std::size_t n, double w) {
    const std::size_t total = ranks.size();
    std::vector<bool> mask(total, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
    std::size_t hits = 0, all = 0;
    const double tol = 1e-9 * std::max(1.0, std::abs(w));
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < total; ++i)
            if (mask[i]) s += ranks[i];
        ++all;
        if (s >= w - tol) ++hits;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return static_cast<double>(hits) / static_cast<double>(all);
}

double normal_upper_tail(const std::vector<double>& ranks, std::size_t n, std::size_t m, double w) {
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    const double N = nn + mm;
    // Tie correction: sum over tie groups of (t^3 - t).
    std::vector<double> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    double ties = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        ties += t * t * t - t;
        i = j + 1;
    }
    const double mean = nn * (N + 1.0) / 2.0;
    const double var = nn * mm / 12.0 * ((N + 1.0) - ties / (N * (N - 1.0)));
    if (!(var > 0.0)) return w > mean ? 0.0 : (w < mean ? 1.0 : 0.5);
    // Upper-tail continuity correction.
    const double z = (w - 0.5 - mean) / std::sqrt(var);
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

}  // namespace

Summary summarize(std::span<const double> values) {
    if (values.empty()) throw DomainError("summarize needs at least one value");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    Summary s;
    s.count = v.size();
    s.max = v.back();
    const std::size_t h = v.size() / 2;
    s.median = v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() == 1) {
        s.std_dev = 0.0;
        s.std_degenerate = true;
    } else {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.std_dev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return s;
}

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, WilcoxonMethod method) {
    if (a.empty() || b.empty()) throw DomainError("rank-sum test needs two non-empty samples");
    const std::vector<double> ranks = midranks(a, b);
    WilcoxonResult r;
    for (std::size_t i = 0; i < a.size(); ++i) r.rank_sum_a += ranks[i];
    const bool exact = method == WilcoxonMethod::Exact ||
                       (method == WilcoxonMethod::Auto && a.size() + b.size() <= 12);
    r.exact = exact;
    r.p_value = exact ? exact_upper_tail(ranks, a.size(), r.rank_sum_a)
                      : normal_upper_tail(ranks, a.size(), b.size(), r.rank_sum_a);
    return r;
}

}  // namespace wecopt
