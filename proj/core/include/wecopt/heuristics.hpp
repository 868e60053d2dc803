#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "wecopt/fitness.hpp"
#include "wecopt/landscape.hpp"

namespace wecopt {

enum class FirstBuoyRule { CenterBottom, Corner };

enum class Refiner { None, NelderMead, Sqp, ActiveSet, InteriorPoint, Fast };

std::string to_string(Refiner refiner);
// Accepts none|nm|sqp|as|ip|f|fast; throws ConfigError otherwise.
Refiner parse_refiner(const std::string& name);

enum class Phase { One, Two };

struct HeuristicConfig {
    std::size_t n_buoys = 16;
    std::size_t samples_phase1 = 10;
    std::size_t samples_phase2 = 20;
    std::size_t sls_samples = 15;
    Refiner refiner = Refiner::None;
    std::size_t refiner_evals = 20;
    double step_slack_kappa = 10.0;  // m

    void validate() const;
};

struct TracePoint {
    std::uint64_t eval_index = 0;   // 1-based count of metered evaluations
    double best_penalized_w = 0.0;  // best seen up to and including this call
};

struct SearchResult {
    Layout layout;
    FitnessReport report;          // of `layout`, recomputed without metering
    std::vector<TracePoint> trace;
    bool complete = false;
    std::uint64_t evaluations_used = 0;
    std::size_t phase1_buoys = 0;  // buoys placed before phase two (incl. the first)
    std::size_t bn_row = 0;
};

Position place_first_buoy(FirstBuoyRule rule, const FarmArea& farm, double best_angle_deg);

// Draws `count` points: a sector is picked with probability proportional to
// its angular width, the angle is uniform inside it and the distance uniform
// in [max(R', radial_lo), radial_high]. Points are clamped into the farm and
// redrawn when the clamp pulls them within R' of the anchor.
// Throws PlacementInfeasibleError after 100 * count rejections.
std::vector<Position> sample_sector(std::span<const SearchSector> sectors, const Position& anchor,
                                    const FarmArea& farm, std::mt19937_64& rng, std::size_t count,
                                    double radial_high);

// Lowest y reachable by the sector's inner arc, in farm coordinates.
double sector_bottom_y(const SearchSector& sector, const Position& anchor, double r_prime);

// BN_row = floor(row_length / best_distance) + 1 with
// row_length = side / |cos(angle)| clipped to the farm diagonal.
std::size_t first_row_capacity(const FarmArea& farm, double best_angle_deg, double best_distance_m);

// Smart local search: every buoy (the first included) takes the best of
// `sls_samples` draws from both sectors around the previous buoy, optionally
// refined. `sectors` comes from SectorMode::Sls extraction.
SearchResult run_sls(const FarmEvaluator& evaluator, const SectorExtraction& sectors,
                     const HeuristicConfig& config, EvaluationBudget& budget, std::uint64_t seed);

// Two-phase search with the corner start. Phase one samples only the upward
// sector until it leaves the farm; phase two samples an annulus around the
// previous buoy and then applies `config.refiner`.
SearchResult run_isls2(const FarmEvaluator& evaluator, const SectorExtraction& sectors,
                       const HeuristicConfig& config, EvaluationBudget& budget, std::uint64_t seed);

// run_isls2 with the refiner forced to None.
SearchResult run_isls(const FarmEvaluator& evaluator, const SectorExtraction& sectors,
                      const HeuristicConfig& config, EvaluationBudget& budget, std::uint64_t seed);

}  // namespace wecopt
