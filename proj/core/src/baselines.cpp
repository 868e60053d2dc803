#include "wecopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wecopt/errors.hpp"
#include "wecopt/rng.hpp"

namespace wecopt {

namespace {

class Tracker {
public:
    Tracker(const FarmEvaluator& evaluator, EvaluationBudget& budget) : ev_(evaluator), budget_(budget) {}

    double operator()(const Layout& layout) {
        const double v = ev_.evaluate(layout, budget_).penalized_fitness;
        ++calls_;
        if (!has_best_ || v > best_value_) {
            best_value_ = v;
            best_ = layout;
            has_best_ = true;
        }
        trace_.push_back({calls_, best_value_});
        return v;
    }

    SearchResult finish(bool complete) {
        SearchResult r;
        if (has_best_) {
            EvaluationBudget scratch(1);
            r.report = ev_.evaluate(best_, scratch);
            r.report.evaluations_used = calls_;
            r.layout = best_;
        }
        r.trace = std::move(trace_);
        r.evaluations_used = calls_;
        r.complete = complete && has_best_;
        return r;
    }

private:
    const FarmEvaluator& ev_;
    EvaluationBudget& budget_;
    std::uint64_t calls_ = 0;
    bool has_best_ = false;
    double best_value_ = -std::numeric_limits<double>::infinity();
    Layout best_;
    std::vector<TracePoint> trace_;
};

std::vector<double> flatten(const Layout& l) {
    std::vector<double> v;
    v.reserve(2 * l.size());
    for (const auto& p : l) {
        v.push_back(p.x);
        v.push_back(p.y);
    }
    return v;
}

Layout unflatten(const std::vector<double>& v, double side) {
    Layout l;
    for (std::size_t i = 0; i + 1 < v.size(); i += 2)
        l.push_back({std::clamp(v[i], 0.0, side), std::clamp(v[i + 1], 0.0, side)});
    return l;
}

Layout uniform_layout(std::size_t n, double side, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, side);
    Layout l;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = u(rng);
        l.push_back({x, u(rng)});
    }
    return l;
}

void require_buoys(std::size_t n) {
    if (n < 1) throw ConfigError("n_buoys must be at least 1");
}

}  // namespace

void MutationSchedule::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!(std::isfinite(sigma) && sigma >= 0.0)) throw ConfigError("mutation sigma must be finite and >= 0");
    if (kind == MutationKind::LinearDecay) {
        if (!positive(decay_start) || !positive(decay_end) || decay_end > decay_start)
            throw ConfigError("linear decay needs 0 < end <= start");
    }
    if (kind == MutationKind::OneFifth) {
        if (!positive(sigma)) throw ConfigError("1/5 rule needs sigma > 0");
        if (window < 1 || !(adapt_factor > 1.0)) throw ConfigError("1/5 rule needs window >= 1 and factor > 1");
    }
    if (kind == MutationKind::UniformS && !positive(sigma)) throw ConfigError("uniform mutation needs s > 0");
}

double MutationSchedule::linear_sigma(std::size_t step, std::size_t total) const {
    if (total <= 1) return decay_end;
    const double t = static_cast<double>(std::min(step, total - 1)) / static_cast<double>(total - 1);
    return decay_start + (decay_end - decay_start) * t;
}

Layout random_layout(std::size_t n_buoys, const FarmArea& farm, std::mt19937_64& rng) {
    Layout best = uniform_layout(n_buoys, farm.side, rng);
    double best_v = violation_sum(best, farm.min_separation);
    for (int attempt = 1; attempt < 100 && best_v > 0.0; ++attempt) {
        Layout l = uniform_layout(n_buoys, farm.side, rng);
        const double v = violation_sum(l, farm.min_separation);
        if (v < best_v) {
            best = std::move(l);
            best_v = v;
        }
    }
    return best;
}

SearchResult run_random_search(const FarmEvaluator& evaluator, std::size_t n_buoys, EvaluationBudget& budget,
                               std::uint64_t seed) {
    require_buoys(n_buoys);
    auto rng = substream(seed, 0);
    Tracker track(evaluator, budget);
    while (!budget.exhausted()) {
        try {
            track(uniform_layout(n_buoys, evaluator.farm().side, rng));
        } catch (const BudgetExhaustedError&) {
            break;
        }
    }
    return track.finish(true);
}

SearchResult run_one_plus_one_ea(const FarmEvaluator& evaluator, std::size_t n_buoys,
                                 const MutationSchedule& schedule, EvaluationBudget& budget, std::uint64_t seed) {
    require_buoys(n_buoys);
    schedule.validate();
    const double side = evaluator.farm().side;
    auto rng = substream(seed, 0);
    Tracker track(evaluator, budget);

    std::vector<double> parent;
    double parent_value = 0.0;
    try {
        const Layout start = random_layout(n_buoys, evaluator.farm(), rng);
        parent = flatten(start);
        parent_value = track(start);
    } catch (const BudgetExhaustedError&) {
        return track.finish(false);
    }

    const std::size_t steps = static_cast<std::size_t>(budget.remaining());
    double sigma = schedule.sigma;
    std::size_t successes = 0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::size_t step = 0; step < steps; ++step) {
        double s = sigma;
        if (schedule.kind == MutationKind::LinearDecay) s = schedule.linear_sigma(step, steps);
        std::vector<double> child = parent;
        for (double& c : child) {
            if (schedule.kind == MutationKind::UniformS) {
                const double magnitude = unit(rng) * s;
                c += unit(rng) < 0.5 ? -magnitude : magnitude;
            } else if (s > 0.0) {
                c += s * gauss(rng);
            }
            c = std::clamp(c, 0.0, side);
        }
        double v = 0.0;
        try {
            v = track(unflatten(child, side));
        } catch (const BudgetExhaustedError&) {
            break;
        }
        if (v > parent_value) {
            parent = std::move(child);
            parent_value = v;
            ++successes;
        }
        if (schedule.kind == MutationKind::OneFifth && (step + 1) % schedule.window == 0) {
            const double rate = static_cast<double>(successes) / static_cast<double>(schedule.window);
            sigma = rate > 0.2 ? sigma * schedule.adapt_factor : sigma / schedule.adapt_factor;
            successes = 0;
        }
    }
    return track.finish(true);
}

std::vector<double> de_crossover(const std::vector<double>& target, const std::vector<double>& donor, double Pcr,
                                 std::size_t forced, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> trial = target;
    for (std::size_t j = 0; j < trial.size(); ++j) {
        if (j == forced || unit(rng) < Pcr) trial[j] = donor[j];
    }
    return trial;
}

SearchResult run_de(const FarmEvaluator& evaluator, std::size_t n_buoys, const DeOptions& options,
                    EvaluationBudget& budget, std::uint64_t seed) {
    require_buoys(n_buoys);
    if (options.mu < 4) throw ConfigError("DE needs mu >= 4");
    if (!(options.F >= 0.0) || !(options.Pcr >= 0.0 && options.Pcr <= 1.0))
        throw ConfigError("DE needs F >= 0 and Pcr in [0, 1]");
    const double side = evaluator.farm().side;
    const std::size_t mu = options.mu;
    const std::size_t dims = 2 * n_buoys;
    auto rng = substream(seed, 0);
    Tracker track(evaluator, budget);

    std::vector<std::vector<double>> pop;
    std::vector<double> fit;
    try {
        for (std::size_t i = 0; i < mu; ++i) {
            const Layout l = random_layout(n_buoys, evaluator.farm(), rng);
            pop.push_back(flatten(l));
            fit.push_back(track(l));
        }
    } catch (const BudgetExhaustedError&) {
        return track.finish(false);
    }

    std::uniform_int_distribution<std::size_t> pick_member(0, mu - 1);
    std::uniform_int_distribution<std::size_t> pick_dim(0, dims - 1);
    bool out_of_budget = false;
    while (!out_of_budget && !budget.exhausted()) {
        std::vector<std::vector<double>> trials;
        std::vector<double> trial_fit;
        for (std::size_t i = 0; i < mu; ++i) {
            std::size_t a, b, c;
            do a = pick_member(rng); while (a == i);
            do b = pick_member(rng); while (b == i || b == a);
            do c = pick_member(rng); while (c == i || c == a || c == b);
            std::vector<double> donor(dims);
            for (std::size_t j = 0; j < dims; ++j)
                donor[j] = std::clamp(pop[a][j] + options.F * (pop[b][j] - pop[c][j]), 0.0, side);
            trials.push_back(de_crossover(pop[i], donor, options.Pcr, pick_dim(rng), rng));
        }
        // Synchronous generation: all trials are scored before any replacement.
        for (const auto& t : trials) {
            try {
                trial_fit.push_back(track(unflatten(t, side)));
            } catch (const BudgetExhaustedError&) {
                out_of_budget = true;
                break;
            }
        }
        for (std::size_t i = 0; i < trial_fit.size(); ++i) {
            if (trial_fit[i] >= fit[i]) {
                pop[i] = trials[i];
                fit[i] = trial_fit[i];
            }
        }
    }
    return track.finish(true);
}

}  // namespace wecopt
