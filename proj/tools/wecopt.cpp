// wecopt command line: optimize, landscape, field, compare, scenario.
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wecopt/errors.hpp"
#include "wecopt/field.hpp"
#include "wecopt/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFailure = 3;

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw wecopt::ConfigError("cannot write '" + path.string() + "'");
    return out;
}

wecopt::WaveScenario load(const std::string& name) {
    std::vector<std::string> warnings;
    auto s = wecopt::resolve_scenario(name, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return s;
}

int cmd_optimize(const wecopt::ExperimentConfig& config, const std::filesystem::path& out_dir) {
    const auto records = wecopt::run_experiment(config);
    wecopt::write_experiment(out_dir, records);
    std::vector<double> fitness;
    bool failed = false;
    for (const auto& r : records) {
        fitness.push_back(r.report.penalized_fitness);
        if (!r.complete || r.report.violation_sum > 0.0) {
            failed = true;
            std::cerr << "run " << r.run_id << (r.complete ? " is infeasible" : " is incomplete") << '\n';
        }
    }
    const auto s = wecopt::summarize(fitness);
    std::cout << config.method << " n=" << s.count << " max=" << s.max << " median=" << s.median
              << " mean=" << s.mean << " std=" << s.std_dev << '\n';
    return failed ? kExitFailure : 0;
}

int cmd_landscape(const std::string& scenario, const std::string& mode, std::size_t n_buoys, std::size_t workers,
                  const std::filesystem::path& out_path) {
    const auto res = mode == "fine" ? wecopt::LandscapeResolution::fine() : wecopt::LandscapeResolution::coarse();
    const wecopt::FarmEvaluator ev({}, load(scenario), wecopt::FarmArea::for_buoys(n_buoys));
    const auto land = wecopt::build_two_buoy_landscape(ev, res, workers);
    auto out = open_out(out_path);
    wecopt::write_landscape(out, land);
    const auto ex = wecopt::extract_search_sectors(
        land, mode == "fine" ? wecopt::SectorMode::Auto : wecopt::SectorMode::Sls, ev.farm().min_separation);
    const auto& s = ex.sectors.front();
    std::cout << "best angle " << ex.best_angle_deg << " deg, distance " << ex.best_distance_m << " m, power "
              << ex.best_power_w << " W; sector [" << s.angle_lo_deg << ", " << s.angle_hi_deg << "] deg x ["
              << s.radial_lo_m << ", " << s.radial_hi_m << "] m\n";
    return 0;
}

int cmd_field(const std::filesystem::path& layout_path, const std::string& scenario, double step, double margin,
              std::size_t workers, const std::filesystem::path& out_path) {
    const wecopt::Layout layout = wecopt::read_layout_csv(layout_path);
    const wecopt::FarmEvaluator ev({}, load(scenario), wecopt::FarmArea::for_buoys(layout.size()));
    const auto field = wecopt::export_energy_field(ev, layout, step, margin, workers);
    auto out = open_out(out_path);
    wecopt::write_energy_field(out, field);
    std::cout << field.nodes.size() << " nodes, " << field.probe_evaluations << " probe evaluations\n";
    return 0;
}

int cmd_compare(const std::filesystem::path& a, const std::filesystem::path& b, double alpha) {
    auto column = [](const std::filesystem::path& dir) {
        std::vector<double> v;
        for (const auto& r : wecopt::read_results_csv(dir / "results.csv")) v.push_back(r.penalized_w);
        return v;
    };
    wecopt::write_comparison(std::cout, wecopt::compare_samples(column(a), column(b), alpha));
    return 0;
}

int cmd_scenario(const std::string& name, const std::filesystem::path& out_path) {
    auto out = open_out(out_path);
    wecopt::write_scenario(out, wecopt::builtin_scenario(name));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wave energy converter array evaluation and layout optimization"};
    app.require_subcommand(1);

    wecopt::ExperimentConfig config;
    std::filesystem::path out_dir = "results";
    auto* optimize = app.add_subcommand("optimize", "run a seeded multi-run experiment");
    optimize->add_option("--scenario", config.scenario, "builtin name or scenario file")->capture_default_str();
    optimize->add_option("--method", config.method, "method name (see --list-methods)")->capture_default_str();
    optimize->add_option("--buoys", config.n_buoys, "number of buoys")->capture_default_str();
    optimize->add_option("--budget", config.budget, "farm evaluations per run")->capture_default_str();
    optimize->add_option("--runs", config.n_runs, "independent runs")->capture_default_str();
    optimize->add_option("--seed", config.root_seed, "root seed; run i uses seed + i")->capture_default_str();
    optimize->add_option("--out", out_dir, "output directory")->capture_default_str();
    optimize->add_option("--workers", config.workers, "worker threads")->capture_default_str();
    optimize->add_option("--sigma", config.sigma, "ea-fixed / ea-onefifth step, m")->capture_default_str();
    optimize->add_option("--uniform-s", config.uniform_s, "ea-uniform range, m")->capture_default_str();
    optimize->add_option("--decay-start", config.decay_start, "ea-linear first step, m")->capture_default_str();
    optimize->add_option("--decay-end", config.decay_end, "ea-linear last step, m")->capture_default_str();
    optimize->add_option("--de-mu", config.de_mu, "DE population")->capture_default_str();
    optimize->add_option("--de-f", config.de_F, "DE scale factor")->capture_default_str();
    optimize->add_option("--de-pcr", config.de_Pcr, "DE crossover rate")->capture_default_str();
    bool list_methods = false;
    optimize->add_flag("--list-methods", list_methods, "print the method registry and exit");

    std::string land_scenario = "simplified", land_mode = "coarse";
    std::filesystem::path land_out = "landscape.csv";
    std::size_t land_buoys = 16, land_workers = 1;
    auto* landscape = app.add_subcommand("landscape", "sample the two-buoy power landscape");
    landscape->add_option("--scenario", land_scenario)->capture_default_str();
    landscape->add_option("--mode", land_mode)->check(CLI::IsMember({"coarse", "fine"}))->capture_default_str();
    landscape->add_option("--out", land_out)->capture_default_str();
    landscape->add_option("--buoys", land_buoys, "farm size the separation refers to")->capture_default_str();
    landscape->add_option("--workers", land_workers)->capture_default_str();

    std::filesystem::path field_layout, field_out = "field.csv";
    std::string field_scenario = "simplified";
    double field_step = 10.0, field_margin = 100.0;
    std::size_t field_workers = 1;
    auto* field = app.add_subcommand("field", "probe-buoy energy field around a layout");
    field->add_option("--layout", field_layout, "layout_<run>.csv")->required();
    field->add_option("--scenario", field_scenario)->capture_default_str();
    field->add_option("--step", field_step, "grid step, m")->capture_default_str();
    field->add_option("--margin", field_margin, "margin around the farm, m")->capture_default_str();
    field->add_option("--out", field_out)->capture_default_str();
    field->add_option("--workers", field_workers)->capture_default_str();

    std::filesystem::path cmp_a, cmp_b;
    double cmp_alpha = 0.025;
    auto* compare = app.add_subcommand("compare", "one-tailed rank-sum test that A beats B");
    compare->add_option("--a", cmp_a, "experiment directory A")->required();
    compare->add_option("--b", cmp_b, "experiment directory B")->required();
    compare->add_option("--alpha", cmp_alpha)->capture_default_str();

    std::string sc_name;
    std::filesystem::path sc_out;
    auto* scenario = app.add_subcommand("scenario", "write a builtin scenario file");
    scenario->add_option("--name", sc_name)->required();
    scenario->add_option("--out", sc_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (optimize->parsed()) {
            if (list_methods) {
                for (const auto& m : wecopt::method_registry()) std::cout << m.name << "  " << m.description << '\n';
                return 0;
            }
            return cmd_optimize(config, out_dir);
        }
        if (landscape->parsed()) return cmd_landscape(land_scenario, land_mode, land_buoys, land_workers, land_out);
        if (field->parsed())
            return cmd_field(field_layout, field_scenario, field_step, field_margin, field_workers, field_out);
        if (compare->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_alpha);
        if (scenario->parsed()) return cmd_scenario(sc_name, sc_out);
    } catch (const wecopt::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wecopt::ParseError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wecopt::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wecopt::BudgetExhaustedError& e) {
        std::cerr << "budget error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const wecopt::PlacementInfeasibleError& e) {
        std::cerr << "placement error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
