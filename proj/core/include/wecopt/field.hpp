#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "wecopt/fitness.hpp"

namespace wecopt {

struct FieldNode {
    double x = 0.0;  // m
    double y = 0.0;  // m
    double power_w = 0.0;
    bool masked = false;
};

struct EnergyField {
    double step_m = 0.0;
    std::vector<FieldNode> nodes;  // row-major, y outer
    std::size_t probe_evaluations = 0;
};

// Annual average power a probe buoy added at `probe` would absorb next to
// `layout`. Unmetered against any optimizer budget.
double probe_power(const FarmEvaluator& evaluator, const Layout& layout, const Position& probe);

// Grid over the farm square widened by `margin` on every side. Nodes closer
// than R' to a buoy are masked and not evaluated.
EnergyField export_energy_field(const FarmEvaluator& evaluator, const Layout& layout, double grid_step_m,
                                double margin_m = 100.0, std::size_t workers = 1);

// `x_m,y_m,power_w,masked`
void write_energy_field(std::ostream& out, const EnergyField& field);

}  // namespace wecopt
