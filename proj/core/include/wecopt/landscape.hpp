#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wecopt/fitness.hpp"

namespace wecopt {

inline constexpr double kSectorRadialCap = 300.0;  // m

struct LandscapeResolution {
    double angular_deg = 45.0;
    double radial_m = 5.0;
    double r_min = 50.0;
    double r_max = 300.0;

    static LandscapeResolution coarse() { return {45.0, 5.0, 50.0, 300.0}; }
    static LandscapeResolution fine() { return {5.0, 5.0, 50.0, 300.0}; }
};

// Two-buoy power table: buoy 1 at the origin of an unbounded plane, buoy 2 at
// (distance, angle) from it. Rows are angles, columns distances.
struct SurrogateLandscape {
    std::string scenario_name;
    double angular_res_deg = 0.0;
    double radial_res_m = 0.0;
    std::vector<double> angles_deg;
    std::vector<double> distances_m;
    std::vector<double> power_w;        // angles.size() x distances.size(), row-major
    std::size_t surrogate_evaluations = 0;

    double at(std::size_t angle_idx, std::size_t distance_idx) const {
        return power_w[angle_idx * distances_m.size() + distance_idx];
    }
};

// Sector relative to the last placed buoy. Angles in degrees, counter-clockwise
// from +x; the low bound may be negative when the sector straddles 0.
struct SearchSector {
    double angle_lo_deg = 0.0;
    double angle_hi_deg = 0.0;
    double radial_lo_m = 0.0;
    double radial_hi_m = 0.0;
    bool anchor_relative = true;

    double angular_width() const { return angle_hi_deg - angle_lo_deg; }
    SearchSector mirrored() const {
        return {angle_lo_deg + 180.0, angle_hi_deg + 180.0, radial_lo_m, radial_hi_m, anchor_relative};
    }
    bool contains(double angle_deg, double distance_m) const;
};

enum class SectorMode { Sls, Auto };

struct SectorExtraction {
    std::vector<SearchSector> sectors;  // Sls: {upper, mirrored}; Auto: {upper}
    double best_angle_deg = 0.0;
    double best_distance_m = 0.0;
    double best_power_w = 0.0;
};

// Throws DomainError when r_min is below the evaluator's minimum separation.
// Cells are independent and may be filled by `workers` threads.
SurrogateLandscape build_two_buoy_landscape(const FarmEvaluator& evaluator,
                                            const LandscapeResolution& resolution,
                                            std::size_t workers = 1);

SurrogateLandscape build_two_buoy_landscape(const WecParameters& params, const WaveScenario& scenario,
                                            const LandscapeResolution& resolution,
                                            std::size_t workers = 1);

// Power of the two-buoy pair at (angle, distance); unmetered.
double two_buoy_power(const FarmEvaluator& evaluator, double angle_deg, double distance_m);

// The two-buoy landscape is invariant under a 180 degree turn (swap the
// buoys), so only headings in [0, 180) are ranked. Ties go to the lowest
// angle, then the lowest distance. Throws DegenerateLandscapeError when flat.
SectorExtraction extract_search_sectors(const SurrogateLandscape& landscape, SectorMode mode,
                                        double r_prime = kDefaultMinSeparation,
                                        double radial_cap = kSectorRadialCap);

// CSV `angle_deg,distance_m,power_w` below one '#' metadata line.
void write_landscape(std::ostream& out, const SurrogateLandscape& landscape);
SurrogateLandscape read_landscape(std::istream& in);

}  // namespace wecopt
