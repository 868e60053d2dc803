#include "wecopt/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "wecopt/errors.hpp"
#include "wecopt/numerics.hpp"
#include "wecopt/rng.hpp"

namespace wecopt {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Meters every farm call and records the best-so-far trace.
class Meter {
public:
    Meter(const FarmEvaluator& evaluator, EvaluationBudget& budget) : ev_(evaluator), budget_(budget) {}

    double operator()(const Layout& layout) {
        const FitnessReport r = ev_.evaluate(layout, budget_);
        ++calls_;
        best_ = std::max(best_, r.penalized_fitness);
        trace_.push_back({calls_, best_});
        return r.penalized_fitness;
    }

    std::uint64_t calls() const { return calls_; }
    std::vector<TracePoint>& trace() { return trace_; }

private:
    const FarmEvaluator& ev_;
    EvaluationBudget& budget_;
    std::uint64_t calls_ = 0;
    double best_ = -std::numeric_limits<double>::infinity();
    std::vector<TracePoint> trace_;
};

struct Candidate {
    Position p;
    double value = -std::numeric_limits<double>::infinity();
    bool valid = false;

    void offer(const Position& q, double v) {
        // Strict improvement: ties keep the earliest sample.
        if (!valid || v > value) {
            p = q;
            value = v;
            valid = true;
        }
    }
};

// Evaluates `layout` with its last slot set to each sample in turn.
void evaluate_samples(Meter& meter, Layout& layout, const std::vector<Position>& samples,
                      Candidate& best) {
    for (const auto& s : samples) {
        layout.back() = s;
        best.offer(s, meter(layout));
    }
}

RefinerResult refine(Refiner refiner, const PointObjective& f, const Position& start, double start_value,
                     const Box& bounds, std::size_t cap) {
    switch (refiner) {
        case Refiner::NelderMead: {
            NelderMeadOptions o;
            o.max_evals = cap;
            return nelder_mead(f, start, start_value, bounds, o);
        }
        case Refiner::Sqp:
        case Refiner::ActiveSet:
        case Refiner::InteriorPoint: {
            DescentOptions o;
            o.max_evals = cap;
            const BoundaryStrategy s = refiner == Refiner::Sqp         ? BoundaryStrategy::Sqp
                                       : refiner == Refiner::ActiveSet ? BoundaryStrategy::ActiveSet
                                                                       : BoundaryStrategy::InteriorPoint;
            return constrained_descent(f, start, start_value, bounds, s, o);
        }
        default:
            break;
    }
    RefinerResult r;
    r.best_point = start;
    r.best_value = start_value;
    r.termination_reason = "no refiner";
    return r;
}

// Runs the refiner on the last slot of `layout`; every call is metered and the
// best point seen survives a budget exhaustion inside the refiner.
void refine_last(Refiner refiner, std::size_t cap, Meter& meter, Layout& layout, const Box& bounds,
                 Candidate& best) {
    if (refiner == Refiner::None || cap == 0) return;
    const PointObjective f = [&](const Position& p) {
        layout.back() = p;
        const double v = meter(layout);
        best.offer(p, v);
        return v;
    };
    refine(refiner, f, best.p, best.value, bounds, cap);
}

SearchResult finish(const FarmEvaluator& ev, Layout layout, Meter& meter, bool complete) {
    SearchResult r;
    if (!layout.empty()) {
        EvaluationBudget scratch(1);
        r.report = ev.evaluate(layout, scratch);
        r.report.evaluations_used = meter.calls();
    }
    r.layout = std::move(layout);
    r.trace = std::move(meter.trace());
    r.evaluations_used = meter.calls();
    r.complete = complete;
    return r;
}

const SearchSector& upper_sector(const SectorExtraction& ex) {
    if (ex.sectors.empty()) throw ConfigError("sector extraction holds no sector");
    return ex.sectors.front();
}

// Extreme x offsets of the sector's inner arc.
std::pair<double, double> arc_x_range(const SearchSector& s, double r) {
    double lo = std::min(std::cos(s.angle_lo_deg * kDeg), std::cos(s.angle_hi_deg * kDeg));
    double hi = std::max(std::cos(s.angle_lo_deg * kDeg), std::cos(s.angle_hi_deg * kDeg));
    for (double k = std::ceil(s.angle_lo_deg / 180.0); k * 180.0 <= s.angle_hi_deg; k += 1.0) {
        const double c = std::cos(k * std::numbers::pi);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return {r * lo, r * hi};
}

bool sector_leaves_sideways(const SearchSector& s, const Position& anchor, const FarmArea& farm) {
    const double r = std::max(farm.min_separation, s.radial_lo_m);
    const auto [lo, hi] = arc_x_range(s, r);
    return anchor.x + hi < 0.0 || anchor.x + lo > farm.side;
}

std::size_t remaining_cap(const EvaluationBudget& budget, std::size_t cap) {
    return static_cast<std::size_t>(std::min<std::uint64_t>(budget.remaining(), cap));
}

}  // namespace

std::string to_string(Refiner refiner) {
    switch (refiner) {
        case Refiner::None: return "none";
        case Refiner::NelderMead: return "nm";
        case Refiner::Sqp: return "sqp";
        case Refiner::ActiveSet: return "as";
        case Refiner::InteriorPoint: return "ip";
        case Refiner::Fast: return "f";
    }
    return "?";
}

Refiner parse_refiner(const std::string& name) {
    if (name == "none") return Refiner::None;
    if (name == "nm") return Refiner::NelderMead;
    if (name == "sqp") return Refiner::Sqp;
    if (name == "as") return Refiner::ActiveSet;
    if (name == "ip") return Refiner::InteriorPoint;
    if (name == "f" || name == "fast") return Refiner::Fast;
    throw ConfigError("unknown refiner '" + name + "'");
}

void HeuristicConfig::validate() const {
    if (n_buoys < 1) throw ConfigError("n_buoys must be at least 1");
    if (samples_phase1 < 1 || samples_phase2 < 1 || sls_samples < 1)
        throw ConfigError("sample counts must be at least 1");
    if (refiner != Refiner::None && refiner_evals < 1) throw ConfigError("refiner_evals must be at least 1");
    if (!(step_slack_kappa >= 0.0) || !std::isfinite(step_slack_kappa))
        throw ConfigError("step_slack_kappa must be finite and non-negative");
}

Position place_first_buoy(FirstBuoyRule rule, const FarmArea& farm, double best_angle_deg) {
    if (rule == FirstBuoyRule::CenterBottom) return {farm.side / 2.0, 0.0};
    if (best_angle_deg > 0.0 && best_angle_deg < 90.0) return {0.0, 0.0};
    return {farm.side, 0.0};
}

std::vector<Position> sample_sector(std::span<const SearchSector> sectors, const Position& anchor,
                                    const FarmArea& farm, std::mt19937_64& rng, std::size_t count,
                                    double radial_high) {
    if (sectors.empty()) throw ConfigError("no sector to sample");
    const double r_prime = farm.min_separation;
    std::vector<double> widths;
    for (const auto& s : sectors) {
        if (!(s.angular_width() >= 0.0)) throw ConfigError("sector with negative angular width");
        widths.push_back(std::max(s.angular_width(), 1e-12));
    }
    std::discrete_distribution<std::size_t> pick(widths.begin(), widths.end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Box box = farm.bounds();

    std::vector<Position> out;
    out.reserve(count);
    std::size_t rejections = 0;
    while (out.size() < count) {
        const SearchSector& s = sectors[sectors.size() == 1 ? 0 : pick(rng)];
        const double lo = std::max(r_prime, s.radial_lo_m);
        const double hi = std::max(lo, radial_high);
        const double angle = (s.angle_lo_deg + unit(rng) * s.angular_width()) * kDeg;
        const double r = lo + unit(rng) * (hi - lo);
        const Position p = box.clamp({anchor.x + r * std::cos(angle), anchor.y + r * std::sin(angle)});
        if (distance(p, anchor) < r_prime) {
            if (++rejections >= 100 * count)
                throw PlacementInfeasibleError("search sector lies outside the farm");
            continue;
        }
        out.push_back(p);
    }
    return out;
}

double sector_bottom_y(const SearchSector& sector, const Position& anchor, double r_prime) {
    const double r = std::max(r_prime, sector.radial_lo_m);
    double lo = std::min(std::sin(sector.angle_lo_deg * kDeg), std::sin(sector.angle_hi_deg * kDeg));
    for (double k = std::ceil((sector.angle_lo_deg - 270.0) / 360.0); 270.0 + k * 360.0 <= sector.angle_hi_deg;
         k += 1.0) {
        lo = -1.0;
    }
    return anchor.y + r * lo;
}

std::size_t first_row_capacity(const FarmArea& farm, double best_angle_deg, double best_distance_m) {
    const double diagonal = farm.side * std::numbers::sqrt2;
    const double c = std::abs(std::cos(best_angle_deg * kDeg));
    const double row = c > farm.side / diagonal ? farm.side / c : diagonal;
    return static_cast<std::size_t>(std::floor(row / best_distance_m)) + 1;
}

SearchResult run_sls(const FarmEvaluator& evaluator, const SectorExtraction& ex, const HeuristicConfig& config,
                     EvaluationBudget& budget, std::uint64_t seed) {
    config.validate();
    const FarmArea& farm = evaluator.farm();
    const Box box = farm.bounds();
    const double radial_high = ex.best_distance_m + config.step_slack_kappa;
    Meter meter(evaluator, budget);
    Layout placed;
    Position anchor = place_first_buoy(FirstBuoyRule::CenterBottom, farm, ex.best_angle_deg);

    if (config.n_buoys == 1) {
        placed.push_back(anchor);
        try {
            meter(placed);
        } catch (const BudgetExhaustedError&) {
            return finish(evaluator, placed, meter, false);
        }
        return finish(evaluator, placed, meter, true);
    }

    for (std::size_t i = 0; i < config.n_buoys; ++i) {
        auto rng = substream(seed, i);
        Layout layout = placed;
        layout.push_back(anchor);
        Candidate best;
        try {
            const auto samples = sample_sector(ex.sectors, anchor, farm, rng, config.sls_samples, radial_high);
            evaluate_samples(meter, layout, samples, best);
            refine_last(config.refiner, remaining_cap(budget, config.refiner_evals), meter, layout, box, best);
        } catch (const BudgetExhaustedError&) {
            if (best.valid) placed.push_back(best.p);
            return finish(evaluator, placed, meter, false);
        }
        placed.push_back(best.p);
        anchor = best.p;
    }
    return finish(evaluator, placed, meter, true);
}

SearchResult run_isls2(const FarmEvaluator& evaluator, const SectorExtraction& ex, const HeuristicConfig& config,
                       EvaluationBudget& budget, std::uint64_t seed) {
    config.validate();
    const FarmArea& farm = evaluator.farm();
    const double r_prime = farm.min_separation;
    const Box box = farm.bounds();
    const SearchSector upper = upper_sector(ex);
    const std::vector<SearchSector> phase1_sectors{upper};
    const double phase1_high = ex.best_distance_m + config.step_slack_kappa;
    // Phase two: the full circle around the previous buoy with 2R' extra reach.
    const std::vector<SearchSector> phase2_sectors{{0.0, 360.0, r_prime, 0.0, true}};
    const double phase2_high = ex.best_distance_m + config.step_slack_kappa + 2.0 * r_prime;
    const std::size_t bn_row = first_row_capacity(farm, ex.best_angle_deg, ex.best_distance_m);

    Meter meter(evaluator, budget);
    Layout placed;
    placed.push_back(place_first_buoy(FirstBuoyRule::Corner, farm, ex.best_angle_deg));
    std::size_t buoy_num = 2;
    std::size_t phase1 = 1;

    auto done = [&](bool complete) {
        SearchResult r = finish(evaluator, placed, meter, complete);
        r.phase1_buoys = phase1;
        r.bn_row = bn_row;
        return r;
    };
    if (config.n_buoys == 1) {
        try {
            meter(placed);
        } catch (const BudgetExhaustedError&) {
            return done(false);
        }
        return done(true);
    }

    auto phase1_open = [&] {
        const Position& a = placed.back();
        return sector_bottom_y(upper, a, r_prime) < farm.side && !sector_leaves_sideways(upper, a, farm);
    };

    Phase phase = Phase::One;
    while (placed.size() < config.n_buoys) {
        if (phase == Phase::One && !phase1_open()) phase = Phase::Two;
        const std::size_t index = placed.size();
        auto rng = substream(seed, index);
        Layout layout = placed;
        layout.push_back(placed.back());
        Candidate best;
        try {
            if (phase == Phase::One) {
                const auto samples =
                    sample_sector(phase1_sectors, placed.back(), farm, rng, config.samples_phase1, phase1_high);
                evaluate_samples(meter, layout, samples, best);
                ++buoy_num;
                ++phase1;
            } else if (config.refiner == Refiner::Fast) {
                const Position p = max_distance_point(placed.positions(), box, rng);
                layout.back() = p;
                best.offer(p, meter(layout));
            } else {
                const auto samples =
                    sample_sector(phase2_sectors, placed.back(), farm, rng, config.samples_phase2, phase2_high);
                evaluate_samples(meter, layout, samples, best);
                const bool gate = config.refiner != Refiner::ActiveSet || buoy_num <= bn_row ||
                                  best.p.y >= farm.side - r_prime;
                if (gate)
                    refine_last(config.refiner, remaining_cap(budget, config.refiner_evals), meter, layout, box,
                                best);
            }
        } catch (const BudgetExhaustedError&) {
            if (best.valid) placed.push_back(best.p);
            return done(false);
        }
        placed.push_back(best.p);
    }
    return done(true);
}

SearchResult run_isls(const FarmEvaluator& evaluator, const SectorExtraction& sectors, const HeuristicConfig& config,
                      EvaluationBudget& budget, std::uint64_t seed) {
    HeuristicConfig c = config;
    c.refiner = Refiner::None;
    return run_isls2(evaluator, sectors, c, budget, seed);
}

}  // namespace wecopt
