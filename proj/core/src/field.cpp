#include "wecopt/field.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "wecopt/csv.hpp"
#include "wecopt/errors.hpp"

namespace wecopt {

double probe_power(const FarmEvaluator& evaluator, const Layout& layout, const Position& probe) {
    Layout with_probe = layout;
    with_probe.push_back(probe);
    return evaluator.power(with_probe).per_buoy.back();
}

EnergyField export_energy_field(const FarmEvaluator& evaluator, const Layout& layout, double grid_step_m,
                                double margin_m, std::size_t workers) {
    if (!(grid_step_m > 0.0) || !std::isfinite(grid_step_m)) throw ConfigError("grid step must be positive");
    if (!(margin_m >= 0.0)) throw ConfigError("margin must be non-negative");
    const double side = evaluator.farm().side;
    const double r_prime = evaluator.farm().min_separation;
    const double lo = -margin_m;
    const double hi = side + margin_m;
    const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / grid_step_m + 1e-9)) + 1;

    EnergyField field;
    field.step_m = grid_step_m;
    for (std::size_t iy = 0; iy < steps; ++iy) {
        for (std::size_t ix = 0; ix < steps; ++ix) {
            FieldNode n;
            n.x = lo + static_cast<double>(ix) * grid_step_m;
            n.y = lo + static_cast<double>(iy) * grid_step_m;
            for (const auto& p : layout) {
                if (distance(p, {n.x, n.y}) < r_prime) n.masked = true;
            }
            field.nodes.push_back(n);
        }
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> evaluated{0};
    auto work = [&] {
        for (std::size_t i = next++; i < field.nodes.size(); i = next++) {
            FieldNode& n = field.nodes[i];
            if (n.masked) continue;
            n.power_w = probe_power(evaluator, layout, {n.x, n.y});
            ++evaluated;
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < std::max<std::size_t>(workers, 1); ++w) pool.emplace_back(work);
        work();
    }
    field.probe_evaluations = evaluated.load();
    return field;
}

void write_energy_field(std::ostream& out, const EnergyField& field) {
    out << "x_m,y_m,power_w,masked\n";
    for (const auto& n : field.nodes) {
        out << csv::format_fixed(n.x, 2) << ',' << csv::format_fixed(n.y, 2) << ','
            << (n.masked ? std::string("nan") : csv::format_significant(n.power_w, 6)) << ','
            << (n.masked ? 1 : 0) << '\n';
    }
}

}  // namespace wecopt
