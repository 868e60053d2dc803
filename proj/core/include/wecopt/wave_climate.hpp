#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wecopt/model.hpp"

namespace wecopt {

struct SeaState {
    double hs = 0.0;          // significant wave height, m
    double tp = 0.0;          // peak period, s
    double occurrence = 0.0;  // probability
};

// One heading of the directional rose. `density` is D(beta) in 1/rad and
// `width` the quadrature cell width in rad; sum(density * width) == 1.
struct DirectionBin {
    double beta = 0.0;
    double density = 0.0;
    double width = 0.0;
};

// One frequency node with its trapezoid weight (rad/s).
struct FrequencyBin {
    double omega = 0.0;
    double weight = 0.0;
};

struct WaveScenario {
    std::string name;
    std::vector<SeaState> sea_states;
    std::vector<DirectionBin> directions;
    std::vector<FrequencyBin> frequencies;

    std::vector<double> betas() const;
    std::vector<double> omegas() const;

    // Throws DomainError naming the offending field.
    void validate() const;
};

struct QFactorReport {
    double p_aap = 0.0;
    double isolated_p_aap = 0.0;
    std::size_t n_buoys = 0;
    double q = 0.0;
};

// Two-parameter Bretschneider density, m^2 s / rad.
double bretschneider_spectrum(double hs, double tp, double omega);

// Trapezoid weights for strictly increasing omegas. A single node gets weight 1.
std::vector<FrequencyBin> make_frequency_grid(const std::vector<double>& omegas);

// 50 nodes uniform on [0.25, 3.0] rad/s.
std::vector<FrequencyBin> default_frequency_grid();

// Midpoint cells around sorted headings (rad); raw weights renormalized so the
// discrete rose integrates to one.
std::vector<DirectionBin> make_direction_grid(const std::vector<double>& betas,
                                              const std::vector<double>& raw_weights);

// `count` headings uniform over [lo, hi) (rad) with uniform density.
std::vector<DirectionBin> uniform_directions(std::size_t count, double lo, double hi);

// Scales occurrences to sum to one. Returns true when a visible change
// (more than 1e-9) was needed.
bool normalize_occurrences(std::vector<SeaState>& states);

// Per-buoy P_i for one sea state from a precomputed regular-wave grid whose
// axes are scenario.betas() x scenario.omegas().
std::vector<double> sea_state_power_per_buoy(const RegularPowerGrid& grid, const SeaState& state,
                                             const WaveScenario& scenario);

double sea_state_power(const Layout& layout, const WecParameters& params, const SeaState& state,
                       const WaveScenario& scenario,
                       const InteractionKernel& kernel = default_kernel());

// P_AAP = sum_i O_i P_i, split per buoy.
PowerBreakdown annual_average_power_breakdown(const Layout& layout, const WecParameters& params,
                                              const WaveScenario& scenario,
                                              const InteractionKernel& kernel = default_kernel());

double annual_average_power(const Layout& layout, const WecParameters& params,
                            const WaveScenario& scenario,
                            const InteractionKernel& kernel = default_kernel());

// Power of one buoy alone in the scenario.
double isolated_annual_average_power(const WecParameters& params, const WaveScenario& scenario,
                                     const InteractionKernel& kernel = default_kernel());

QFactorReport q_factor(double p_aap, std::size_t n_buoys, double isolated_p_aap);

// Scenario text format: sections [seastates] (Hs,Tp,O), [directions]
// (beta_deg,weight) and [frequencies] (omega). Blank lines and '#' comments
// are ignored; an optional column-name row may follow each section marker.
// Warnings (e.g. renormalized occurrences) are appended to `warnings`.
WaveScenario parse_scenario(std::istream& in, const std::string& name,
                            std::vector<std::string>* warnings = nullptr);
WaveScenario load_scenario(const std::filesystem::path& path,
                           std::vector<std::string>* warnings = nullptr);
void write_scenario(std::ostream& out, const WaveScenario& scenario);

// Built-in scenarios: "simplified", "sydney", "perth", "adelaide", "tasmania".
std::vector<std::string> builtin_scenario_names();
WaveScenario builtin_scenario(const std::string& name);

// Builtin name or path to a scenario file.
WaveScenario resolve_scenario(const std::string& name_or_path,
                              std::vector<std::string>* warnings = nullptr);

}  // namespace wecopt
