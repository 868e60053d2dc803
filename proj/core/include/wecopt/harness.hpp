#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wecopt/heuristics.hpp"
#include "wecopt/stats.hpp"

namespace wecopt {

struct MethodInfo {
    std::string name;
    std::string description;
};

const std::vector<MethodInfo>& method_registry();
bool is_known_method(const std::string& name);

struct ExperimentConfig {
    std::string scenario = "simplified";  // builtin name or file path
    std::string method = "isls2-as";
    std::size_t n_buoys = 16;
    std::uint64_t budget = 600;
    std::size_t n_runs = 10;
    std::uint64_t root_seed = 1;
    std::size_t workers = 1;

    // Method parameters; each method reads only its own.
    double sigma = 10.0;        // ea-fixed, ea-onefifth start
    double uniform_s = 30.0;    // ea-uniform
    double decay_start = 30.0;  // ea-linear
    double decay_end = 1.0;
    std::size_t de_mu = 50;
    double de_F = 0.5;
    double de_Pcr = 0.5;

    // Throws ConfigError.
    void validate() const;
};

struct RunRecord {
    std::size_t run_id = 0;
    std::uint64_t seed = 0;
    Layout layout;
    FitnessReport report;
    double q_factor = 0.0;
    std::vector<TracePoint> trace;
    double wall_seconds = 0.0;
    std::size_t surrogate_evaluations = 0;  // shared landscape, not in the budget
    bool complete = false;
};

// Runs config.n_runs independent runs with seeds root_seed + run index.
// Records do not depend on config.workers.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const WecParameters& params = {});

// Single run of a method against a prepared evaluator and landscape sectors.
// `sectors` may be empty for methods that do not use the surrogate.
SearchResult run_method(const ExperimentConfig& config, const FarmEvaluator& evaluator,
                        const std::optional<SectorExtraction>& sectors, EvaluationBudget& budget,
                        std::uint64_t seed);

// Landscape resolution and sector mode a method uses, if any.
struct SurrogatePlan {
    LandscapeResolution resolution;
    SectorMode mode = SectorMode::Sls;
};
std::optional<SurrogatePlan> surrogate_plan(const std::string& method);

struct ResultRow {
    std::size_t run_id = 0;
    std::uint64_t seed = 0;
    double final_power_w = 0.0;
    double violation_m = 0.0;
    double penalized_w = 0.0;
    double q_factor = 0.0;
    std::uint64_t evals_used = 0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

ResultRow to_row(const RunRecord& record);

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<ResultRow> read_results_csv(std::istream& in);
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);
void write_layout_csv(std::ostream& out, const Layout& layout, const std::vector<double>& per_buoy_power);
Layout read_layout_csv(std::istream& in);
Layout read_layout_csv(const std::filesystem::path& path);

// results.csv, trace_<run>.csv, layout_<run>.csv and timing.csv in `dir`.
void write_experiment(const std::filesystem::path& dir, const std::vector<RunRecord>& records);

struct Comparison {
    Summary a;
    Summary b;
    WilcoxonResult test;  // alternative: a > b
    double alpha = 0.025;
    bool significant() const { return test.p_value < alpha; }
};

Comparison compare_samples(const std::vector<double>& a, const std::vector<double>& b, double alpha = 0.025);
void write_comparison(std::ostream& out, const Comparison& c);

}  // namespace wecopt
