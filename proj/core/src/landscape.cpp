#include "wecopt/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "wecopt/csv.hpp"
#include "wecopt/errors.hpp"

namespace wecopt {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::vector<double> axis(double lo, double hi, double step, bool inclusive) {
    std::vector<double> v;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = lo + step * static_cast<double>(i);
        if (!inclusive && x >= hi - 1e-9) break;
        v.push_back(x);
    }
    return v;
}

struct Cell {
    std::size_t angle;
    std::size_t distance;
    double power;
};

// Descending power; ties to lower angle, then lower distance.
bool ranks_before(const Cell& a, const Cell& b) {
    if (a.power != b.power) return a.power > b.power;
    if (a.angle != b.angle) return a.angle < b.angle;
    return a.distance < b.distance;
}

}  // namespace

bool SearchSector::contains(double angle_deg, double distance_m) const {
    if (distance_m < radial_lo_m || distance_m > radial_hi_m) return false;
    // Bring the angle into [lo, lo + 360).
    const double shifted = angle_lo_deg + std::fmod(std::fmod(angle_deg - angle_lo_deg, 360.0) + 360.0, 360.0);
    return shifted <= angle_hi_deg;
}

double two_buoy_power(const FarmEvaluator& evaluator, double angle_deg, double distance_m) {
    const double a = angle_deg * kDeg;
    return evaluator.power(Layout{{0.0, 0.0}, {distance_m * std::cos(a), distance_m * std::sin(a)}}).total;
}

SurrogateLandscape build_two_buoy_landscape(const FarmEvaluator& evaluator,
                                            const LandscapeResolution& res, std::size_t workers) {
    if (!(res.angular_deg > 0.0) || !(res.radial_m > 0.0)) {
        throw DomainError("landscape resolutions must be positive");
    }
    if (res.r_min < evaluator.farm().min_separation) {
        throw DomainError("landscape r_min must not be below the minimum separation");
    }
    if (!(res.r_max >= res.r_min)) throw DomainError("landscape r_max must not be below r_min");

    SurrogateLandscape out;
    out.scenario_name = evaluator.scenario().name;
    out.angular_res_deg = res.angular_deg;
    out.radial_res_m = res.radial_m;
    out.angles_deg = axis(0.0, 360.0, res.angular_deg, false);
    out.distances_m = axis(res.r_min, res.r_max, res.radial_m, true);
    const std::size_t cells = out.angles_deg.size() * out.distances_m.size();
    out.power_w.assign(cells, 0.0);
    out.surrogate_evaluations = cells;

    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const std::size_t ai = c / out.distances_m.size();
            const std::size_t di = c % out.distances_m.size();
            out.power_w[c] = two_buoy_power(evaluator, out.angles_deg[ai], out.distances_m[di]);
        }
    };

    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(cells, 1));
    if (workers == 1) {
        fill(0, cells);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (cells + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(cells, begin + chunk);
            if (begin < end) pool.emplace_back(fill, begin, end);
        }
    }
    return out;
}

SurrogateLandscape build_two_buoy_landscape(const WecParameters& params, const WaveScenario& scenario,
                                            const LandscapeResolution& resolution, std::size_t workers) {
    const FarmEvaluator evaluator(params, scenario, FarmArea::for_buoys(2));
    return build_two_buoy_landscape(evaluator, resolution, workers);
}

SectorExtraction extract_search_sectors(const SurrogateLandscape& landscape, SectorMode mode,
                                        double r_prime, double radial_cap) {
    if (landscape.angles_deg.empty() || landscape.distances_m.empty() ||
        landscape.power_w.size() != landscape.angles_deg.size() * landscape.distances_m.size()) {
        throw DomainError("landscape table is incomplete");
    }

    const auto [lo_it, hi_it] = std::minmax_element(landscape.power_w.begin(), landscape.power_w.end());
    if (*lo_it == *hi_it) throw DegenerateLandscapeError("two-buoy landscape is flat");

    std::vector<Cell> cells;
    for (std::size_t a = 0; a < landscape.angles_deg.size(); ++a) {
        if (landscape.angles_deg[a] >= 180.0) continue;
        for (std::size_t d = 0; d < landscape.distances_m.size(); ++d) {
            if (mode == SectorMode::Auto && landscape.distances_m[d] > radial_cap) continue;
            cells.push_back({a, d, landscape.at(a, d)});
        }
    }
    if (cells.size() < 2) throw DegenerateLandscapeError("landscape has fewer than two usable cells");
    std::partial_sort(cells.begin(), cells.begin() + 2, cells.end(), ranks_before);
    const Cell& best = cells[0];
    const Cell& second = cells[1];

    const double a1 = landscape.angles_deg[best.angle];
    const double a2 = landscape.angles_deg[second.angle];
    const double d1 = landscape.distances_m[best.distance];
    const double d2 = landscape.distances_m[second.distance];
    const double half_a = 0.5 * landscape.angular_res_deg;
    const double half_r = 0.5 * landscape.radial_res_m;

    SearchSector sector;
    sector.angle_lo_deg = std::min(a1, a2) - half_a;
    sector.angle_hi_deg = std::max(a1, a2) + half_a;
    // Radially the sector spans the two cells exactly; it only gets a margin
    // when both cells share a distance.
    const double margin_r = d1 == d2 ? half_r : 0.0;
    sector.radial_lo_m = std::max(r_prime, std::min(d1, d2) - margin_r);
    sector.radial_hi_m = std::min(radial_cap, std::max(d1, d2) + margin_r);
    if (!(sector.radial_hi_m > sector.radial_lo_m)) sector.radial_hi_m = sector.radial_lo_m + landscape.radial_res_m;

    SectorExtraction out;
    out.best_angle_deg = a1;
    out.best_distance_m = d1;
    out.best_power_w = best.power;
    out.sectors.push_back(sector);
    if (mode == SectorMode::Sls) out.sectors.push_back(sector.mirrored());
    return out;
}

void write_landscape(std::ostream& out, const SurrogateLandscape& l) {
    out << "# scenario=" << l.scenario_name << " angular_res_deg=" << csv::format_exact(l.angular_res_deg)
        << " radial_res_m=" << csv::format_exact(l.radial_res_m)
        << " surrogate_evaluations=" << l.surrogate_evaluations << "\n";
    out << "angle_deg,distance_m,power_w\n";
    for (std::size_t a = 0; a < l.angles_deg.size(); ++a) {
        for (std::size_t d = 0; d < l.distances_m.size(); ++d) {
            out << csv::format_exact(l.angles_deg[a]) << ',' << csv::format_exact(l.distances_m[d]) << ','
                << csv::format_exact(l.at(a, d)) << '\n';
        }
    }
}

SurrogateLandscape read_landscape(std::istream& in) {
    SurrogateLandscape l;
    std::string line;
    std::size_t line_no = 0;
    std::map<double, std::map<double, double>> table;
    while (std::getline(in, line)) {
        ++line_no;
        const auto trimmed = csv::trim(line);
        if (trimmed.empty()) continue;
        if (trimmed.front() == '#') {
            std::istringstream meta{std::string(trimmed.substr(1))};
            std::string kv;
            while (meta >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                const auto key = kv.substr(0, eq);
                const auto value = kv.substr(eq + 1);
                if (key == "scenario") l.scenario_name = value;
                else if (key == "angular_res_deg") l.angular_res_deg = csv::parse_double(value).value_or(0.0);
                else if (key == "radial_res_m") l.radial_res_m = csv::parse_double(value).value_or(0.0);
                else if (key == "surrogate_evaluations")
                    l.surrogate_evaluations = static_cast<std::size_t>(csv::parse_int(value).value_or(0));
            }
            continue;
        }
        const auto fields = csv::split(trimmed);
        if (fields.size() == 3 && fields[0] == "angle_deg") continue;
        if (fields.size() != 3) throw ParseError("landscape line " + std::to_string(line_no) + ": expected 3 fields", line_no);
        const auto a = csv::parse_double(fields[0]);
        const auto d = csv::parse_double(fields[1]);
        const auto p = csv::parse_double(fields[2]);
        if (!a || !d || !p) throw ParseError("landscape line " + std::to_string(line_no) + ": non-numeric field", line_no);
        table[*a][*d] = *p;
    }
    if (table.empty()) throw ParseError("landscape file holds no cells", 0);
    for (const auto& [d, p] : table.begin()->second) l.distances_m.push_back(d);
    for (const auto& [a, row] : table) {
        if (row.size() != l.distances_m.size()) throw ParseError("landscape table has holes", 0);
        l.angles_deg.push_back(a);
        for (std::size_t i = 0; const auto& [d, p] : row) {
            if (d != l.distances_m[i++]) throw ParseError("landscape table has holes", 0);
            l.power_w.push_back(p);
        }
    }
    return l;
}

}  // namespace wecopt
