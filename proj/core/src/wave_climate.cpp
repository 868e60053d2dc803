#include "wecopt/wave_climate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "wecopt/csv.hpp"
#include "wecopt/errors.hpp"

namespace wecopt {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

std::vector<double> WaveScenario::betas() const {
    std::vector<double> out;
    out.reserve(directions.size());
    for (const auto& d : directions) out.push_back(d.beta);
    return out;
}

std::vector<double> WaveScenario::omegas() const {
    std::vector<double> out;
    out.reserve(frequencies.size());
    for (const auto& f : frequencies) out.push_back(f.omega);
    return out;
}

void WaveScenario::validate() const {
    require(!sea_states.empty(), "sea_states: at least one sea state is required");
    double occurrence_sum = 0.0;
    for (const auto& s : sea_states) {
        require(s.hs > 0.0 && std::isfinite(s.hs), "sea_states.Hs must be positive");
        require(s.tp > 0.0 && std::isfinite(s.tp), "sea_states.Tp must be positive");
        require(s.occurrence >= 0.0 && s.occurrence <= 1.0, "sea_states.O must lie in [0, 1]");
        occurrence_sum += s.occurrence;
    }
    require(std::abs(occurrence_sum - 1.0) <= 1e-9, "sea_states.O must sum to 1");

    require(!directions.empty(), "directions: at least one heading is required");
    double rose = 0.0;
    for (std::size_t i = 0; i < directions.size(); ++i) {
        const auto& d = directions[i];
        require(std::isfinite(d.beta), "directions.beta must be finite");
        require(d.density >= 0.0, "directions.weight must be non-negative");
        require(d.width > 0.0, "directions: cell width must be positive");
        if (i > 0) require(d.beta > directions[i - 1].beta, "directions.beta must be strictly increasing");
        rose += d.density * d.width;
    }
    require(std::abs(rose - 1.0) <= 1e-6, "directions.weight must integrate to 1");

    require(!frequencies.empty(), "frequencies: at least one frequency is required");
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        require(frequencies[i].omega > 0.0, "frequencies.omega must be positive");
        require(frequencies[i].weight > 0.0, "frequencies: quadrature weight must be positive");
        if (i > 0) {
            require(frequencies[i].omega > frequencies[i - 1].omega,
                    "frequencies.omega must be strictly increasing");
        }
    }
}

double bretschneider_spectrum(double hs, double tp, double omega) {
    if (!(hs > 0.0) || !(tp > 0.0) || !(omega > 0.0)) {
        throw DomainError("Bretschneider spectrum needs positive Hs, Tp and omega");
    }
    const double wp = 2.0 * std::numbers::pi / tp;
    const double ratio4 = std::pow(wp / omega, 4);
    return 5.0 / 16.0 * hs * hs * ratio4 / omega * std::exp(-1.25 * ratio4);
}

std::vector<FrequencyBin> make_frequency_grid(const std::vector<double>& omegas) {
    std::vector<FrequencyBin> grid(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        require(omegas[i] > 0.0, "frequencies.omega must be positive");
        if (i > 0) require(omegas[i] > omegas[i - 1], "frequencies.omega must be strictly increasing");
        grid[i].omega = omegas[i];
    }
    if (grid.size() == 1) {
        grid[0].weight = 1.0;
        return grid;
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double half = 0.5 * (grid[i + 1].omega - grid[i].omega);
        grid[i].weight += half;
        grid[i + 1].weight += half;
    }
    return grid;
}

std::vector<FrequencyBin> default_frequency_grid() {
    constexpr std::size_t n = 50;
    constexpr double lo = 0.25;
    constexpr double hi = 3.0;
    std::vector<double> omegas(n);
    for (std::size_t i = 0; i < n; ++i) omegas[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return make_frequency_grid(omegas);
}

std::vector<DirectionBin> make_direction_grid(const std::vector<double>& betas,
                                              const std::vector<double>& raw_weights) {
    require(!betas.empty(), "directions: at least one heading is required");
    require(betas.size() == raw_weights.size(), "directions: heading/weight count mismatch");

    std::vector<std::size_t> order(betas.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return betas[a] < betas[b]; });

    std::vector<DirectionBin> grid(betas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        grid[i].beta = betas[order[i]];
        grid[i].density = raw_weights[order[i]];
        require(std::isfinite(grid[i].beta), "directions.beta must be finite");
        require(grid[i].density >= 0.0 && std::isfinite(grid[i].density),
                "directions.weight must be non-negative");
        if (i > 0) require(grid[i].beta > grid[i - 1].beta, "directions.beta must be distinct");
    }

    const std::size_t n = grid.size();
    if (n == 1) {
        grid[0].width = 1.0;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double left = i > 0 ? grid[i].beta - grid[i - 1].beta : grid[1].beta - grid[0].beta;
            const double right = i + 1 < n ? grid[i + 1].beta - grid[i].beta : grid[n - 1].beta - grid[n - 2].beta;
            grid[i].width = 0.5 * (left + right);
        }
    }

    double mass = 0.0;
    for (const auto& d : grid) mass += d.density * d.width;
    require(mass > 0.0, "directions.weight must not all be zero");
    for (auto& d : grid) d.density /= mass;
    return grid;
}

std::vector<DirectionBin> uniform_directions(std::size_t count, double lo, double hi) {
    require(count >= 1 && hi > lo, "uniform_directions needs count >= 1 and hi > lo");
    std::vector<double> betas(count);
    for (std::size_t i = 0; i < count; ++i) {
        betas[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count);
    }
    return make_direction_grid(betas, std::vector<double>(count, 1.0));
}

bool normalize_occurrences(std::vector<SeaState>& states) {
    double sum = 0.0;
    for (const auto& s : states) sum += s.occurrence;
    require(sum > 0.0, "sea_states.O must not all be zero");
    for (auto& s : states) s.occurrence /= sum;
    return std::abs(sum - 1.0) > 1e-9;
}

std::vector<double> sea_state_power_per_buoy(const RegularPowerGrid& grid, const SeaState& state,
                                             const WaveScenario& scenario) {
    const std::size_t n_beta = scenario.directions.size();
    const std::size_t n_omega = scenario.frequencies.size();
    if (grid.n_betas() != n_beta || grid.n_omegas() != n_omega) {
        throw DomainError("power grid does not match the scenario grids");
    }

    std::vector<double> spectral(n_omega);
    for (std::size_t w = 0; w < n_omega; ++w) {
        const auto& f = scenario.frequencies[w];
        spectral[w] = 2.0 * bretschneider_spectrum(state.hs, state.tp, f.omega) * f.weight;
    }

    std::vector<double> total(grid.n_buoys(), 0.0);
    std::vector<double> heading(grid.n_buoys());
    for (std::size_t b = 0; b < n_beta; ++b) {
        std::fill(heading.begin(), heading.end(), 0.0);
        for (std::size_t w = 0; w < n_omega; ++w) {
            for (std::size_t i = 0; i < grid.n_buoys(); ++i) heading[i] += spectral[w] * grid.at(b, w, i);
        }
        const double dir_weight = scenario.directions[b].density * scenario.directions[b].width;
        for (std::size_t i = 0; i < grid.n_buoys(); ++i) total[i] += dir_weight * heading[i];
    }
    return total;
}

double sea_state_power(const Layout& layout, const WecParameters& params, const SeaState& state,
                       const WaveScenario& scenario, const InteractionKernel& kernel) {
    const auto betas = scenario.betas();
    const auto omegas = scenario.omegas();
    const auto grid = farm_power_grid(layout, params, betas, omegas, kernel);
    const auto per_buoy = sea_state_power_per_buoy(grid, state, scenario);
    return std::accumulate(per_buoy.begin(), per_buoy.end(), 0.0);
}

PowerBreakdown annual_average_power_breakdown(const Layout& layout, const WecParameters& params,
                                              const WaveScenario& scenario,
                                              const InteractionKernel& kernel) {
    const auto betas = scenario.betas();
    const auto omegas = scenario.omegas();
    const auto grid = farm_power_grid(layout, params, betas, omegas, kernel);

    PowerBreakdown out;
    out.per_buoy.assign(layout.size(), 0.0);
    for (const auto& state : scenario.sea_states) {
        if (state.occurrence == 0.0) continue;
        const auto p = sea_state_power_per_buoy(grid, state, scenario);
        for (std::size_t i = 0; i < p.size(); ++i) out.per_buoy[i] += state.occurrence * p[i];
    }
    for (double p : out.per_buoy) out.total += p;
    return out;
}

double annual_average_power(const Layout& layout, const WecParameters& params,
                            const WaveScenario& scenario, const InteractionKernel& kernel) {
    return annual_average_power_breakdown(layout, params, scenario, kernel).total;
}

double isolated_annual_average_power(const WecParameters& params, const WaveScenario& scenario,
                                     const InteractionKernel& kernel) {
    return annual_average_power(Layout{{0.0, 0.0}}, params, scenario, kernel);
}

QFactorReport q_factor(double p_aap, std::size_t n_buoys, double isolated_p_aap) {
    if (n_buoys < 1) throw DomainError("q-factor needs at least one buoy");
    if (!(isolated_p_aap > 0.0)) throw DomainError("isolated power must be positive");
    return {p_aap, isolated_p_aap, n_buoys, p_aap / (static_cast<double>(n_buoys) * isolated_p_aap)};
}

WaveScenario parse_scenario(std::istream& in, const std::string& name,
                            std::vector<std::string>* warnings) {
    enum class Section { None, SeaStates, Directions, Frequencies };
    Section section = Section::None;
    bool first_row = false;

    WaveScenario scenario;
    scenario.name = name;
    std::vector<double> betas;
    std::vector<double> weights;
    std::vector<double> omegas;

    std::string raw;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) -> void {
        throw ParseError("line " + std::to_string(line_no) + ": " + what, line_no);
    };

    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = csv::strip_comment(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line == "[seastates]") section = Section::SeaStates;
            else if (line == "[directions]") section = Section::Directions;
            else if (line == "[frequencies]") section = Section::Frequencies;
            else fail("unknown section " + std::string(line));
            first_row = true;
            continue;
        }
        if (section == Section::None) fail("data row outside of any section");

        const auto fields = csv::split(line);
        std::vector<double> values;
        bool numeric = true;
        for (auto f : fields) {
            const auto v = csv::parse_double(f);
            if (!v) {
                numeric = false;
                break;
            }
            values.push_back(*v);
        }
        const bool was_first = first_row;
        first_row = false;
        if (!numeric) {
            if (was_first) continue;  // column-name row
            fail("non-numeric field in '" + std::string(line) + "'");
        }

        switch (section) {
        case Section::SeaStates:
            if (values.size() != 3) fail("expected Hs,Tp,O");
            if (!(values[0] > 0.0)) fail("field Hs must be positive");
            if (!(values[1] > 0.0)) fail("field Tp must be positive");
            if (!(values[2] >= 0.0 && values[2] <= 1.0)) fail("field O must lie in [0, 1]");
            scenario.sea_states.push_back({values[0], values[1], values[2]});
            break;
        case Section::Directions:
            if (values.size() != 2) fail("expected beta_deg,weight");
            if (!(values[1] >= 0.0)) fail("field weight must be non-negative");
            betas.push_back(values[0] * kDegToRad);
            weights.push_back(values[1]);
            break;
        case Section::Frequencies:
            if (values.size() != 1) fail("expected omega");
            if (!(values[0] > 0.0)) fail("field omega must be positive");
            if (!omegas.empty() && !(values[0] > omegas.back())) fail("field omega must be strictly increasing");
            omegas.push_back(values[0]);
            break;
        case Section::None:
            break;
        }
    }

    require(!scenario.sea_states.empty(), "sea_states: at least one sea state is required");
    require(!betas.empty(), "directions: at least one heading is required");

    double occurrence_sum = 0.0;
    for (const auto& s : scenario.sea_states) occurrence_sum += s.occurrence;
    if (normalize_occurrences(scenario.sea_states) && warnings) {
        warnings->push_back("scenario '" + name + "': occurrence probabilities summed to " +
                            csv::format_significant(occurrence_sum, 10) + "; renormalized to 1");
    }
    scenario.directions = make_direction_grid(betas, weights);
    // No frequency rows: fall back to the default grid.
    scenario.frequencies = omegas.empty() ? default_frequency_grid() : make_frequency_grid(omegas);
    scenario.validate();
    return scenario;
}

WaveScenario load_scenario(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    return parse_scenario(in, path.stem().string(), warnings);
}

void write_scenario(std::ostream& out, const WaveScenario& scenario) {
    out << "# wave scenario: " << scenario.name << "\n";
    out << "[seastates]\nHs,Tp,O\n";
    for (const auto& s : scenario.sea_states) {
        out << csv::format_exact(s.hs) << ',' << csv::format_exact(s.tp) << ','
            << csv::format_exact(s.occurrence) << '\n';
    }
    out << "\n[directions]\nbeta_deg,weight\n";
    for (const auto& d : scenario.directions) {
        out << csv::format_exact(d.beta / kDegToRad) << ',' << csv::format_exact(d.density) << '\n';
    }
    out << "\n[frequencies]\nomega\n";
    for (const auto& f : scenario.frequencies) out << csv::format_exact(f.omega) << '\n';
}

WaveScenario resolve_scenario(const std::string& name_or_path, std::vector<std::string>* warnings) {
    const auto names = builtin_scenario_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
        return builtin_scenario(name_or_path);
    }
    return load_scenario(name_or_path, warnings);
}

}  // namespace wecopt
