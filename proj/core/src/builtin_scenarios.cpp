#include <cmath>
#include <numbers>

#include "wecopt/errors.hpp"
#include "wecopt/wave_climate.hpp"

// Synthetic stand-ins for the four coastal sites: multi-modal roses on a
// 15-degree heading grid and 4 x 5 (Hs, Tp) scatter tables. Shapes only;
// these are not measured data.
namespace wecopt {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Lobe {
    double mean_deg;
    double concentration;
    double amplitude;
};

struct SiteShape {
    const char* name;
    Lobe lobes[3];
    double hs_mode;
    double tp_mode;
};

constexpr SiteShape kSites[] = {
    {"sydney", {{100.0, 2.0, 1.0}, {150.0, 3.0, 0.7}, {40.0, 2.0, 0.5}}, 2.0, 9.0},
    {"perth", {{95.0, 12.0, 1.0}, {60.0, 6.0, 0.25}, {0.0, 0.0, 0.0}}, 2.5, 12.0},
    {"adelaide", {{80.0, 15.0, 1.0}, {110.0, 8.0, 0.2}, {0.0, 0.0, 0.0}}, 2.0, 11.0},
    {"tasmania", {{90.0, 10.0, 1.0}, {130.0, 5.0, 0.35}, {0.0, 0.0, 0.0}}, 3.0, 13.0},
};

WaveScenario site_scenario(const SiteShape& site) {
    WaveScenario s;
    s.name = site.name;

    constexpr double hs_values[] = {1.0, 2.0, 3.0, 4.0};
    constexpr double tp_values[] = {7.0, 9.0, 11.0, 13.0, 15.0};
    for (double hs : hs_values) {
        for (double tp : tp_values) {
            const double zh = (hs - site.hs_mode) / 1.0;
            const double zt = (tp - site.tp_mode) / 2.5;
            s.sea_states.push_back({hs, tp, std::exp(-0.5 * (zh * zh + zt * zt))});
        }
    }
    normalize_occurrences(s.sea_states);

    std::vector<double> betas;
    std::vector<double> weights;
    for (int i = 0; i < 24; ++i) {
        const double beta = 15.0 * i * kDeg;
        double w = 0.0;
        for (const auto& lobe : site.lobes) {
            if (lobe.amplitude == 0.0) continue;
            w += lobe.amplitude *
                 std::exp(lobe.concentration * (std::cos(beta - lobe.mean_deg * kDeg) - 1.0));
        }
        betas.push_back(beta);
        weights.push_back(w);
    }
    s.directions = make_direction_grid(betas, weights);
    s.frequencies = default_frequency_grid();
    return s;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
    std::vector<std::string> names{"simplified"};
    for (const auto& site : kSites) names.emplace_back(site.name);
    return names;
}

WaveScenario builtin_scenario(const std::string& name) {
    if (name == "simplified") {
        WaveScenario s;
        s.name = "simplified";
        s.sea_states = {{2.0, 9.0, 1.0}};
        // cos^2 spreading about 90 deg on 7 headings spanning [0, 180)
        std::vector<double> betas, weights;
        for (int i = 0; i < 7; ++i) {
            const double b = i * std::numbers::pi / 7.0;
            const double c = std::cos(b - std::numbers::pi / 2.0);
            betas.push_back(b);
            weights.push_back(c * c);
        }
        s.directions = make_direction_grid(betas, weights);
        s.frequencies = default_frequency_grid();
        return s;
    }
    for (const auto& site : kSites) {
        if (name == site.name) return site_scenario(site);
    }
    throw ConfigError("unknown builtin scenario '" + name + "'");
}

}  // namespace wecopt
