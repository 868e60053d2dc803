#include "wecopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <thread>

#include "wecopt/baselines.hpp"
#include "wecopt/csv.hpp"
#include "wecopt/errors.hpp"

namespace wecopt {

namespace {

const char* const kResultsHeader = "run_id,seed,final_power_w,violation_m,penalized_w,q_factor,evals_used";

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

HeuristicConfig heuristic_config(const ExperimentConfig& c) {
    HeuristicConfig h;
    h.n_buoys = c.n_buoys;
    const std::string& m = c.method;
    if (m == "sls") {
        h.sls_samples = 15;
        h.step_slack_kappa = 20.0;
    } else if (m == "sls-nm") {
        h.sls_samples = 3;
        h.refiner = Refiner::NelderMead;
        h.step_slack_kappa = 20.0;
    } else if (m == "isls") {
        h.samples_phase2 = 20;
    } else if (m == "isls-nm") {
        h.samples_phase2 = 3;
        h.refiner = Refiner::NelderMead;
    } else if (starts_with(m, "isls2-")) {
        h.samples_phase2 = 3;
        h.refiner = parse_refiner(m.substr(6));
    }
    return h;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path.string() + "'");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    return out;
}

template <typename T>
T field_or_throw(std::optional<T> v, std::size_t line, const char* name) {
    if (!v) throw ParseError(std::string("bad value for ") + name, line);
    return *v;
}

}  // namespace

const std::vector<MethodInfo>& method_registry() {
    static const std::vector<MethodInfo> registry{
        {"rs", "random search over the whole layout"},
        {"ea-fixed", "1+1EA, Gaussian step of fixed sigma"},
        {"ea-uniform", "1+1EA, signed uniform step in [0, s]"},
        {"ea-linear", "1+1EA, Gaussian step decaying linearly"},
        {"ea-onefifth", "1+1EA, Gaussian step under the 1/5 success rule"},
        {"de", "differential evolution rand/1/bin"},
        {"sls", "smart local search, 15 samples per buoy"},
        {"sls-nm", "smart local search, 3 samples + Nelder-Mead"},
        {"isls", "two-phase local search, 10 then 20 samples"},
        {"isls-nm", "two-phase local search, phase two 3 samples + Nelder-Mead"},
        {"isls2-as", "automatic sector, phase two 3 samples + active set"},
        {"isls2-sqp", "automatic sector, phase two 3 samples + quasi-Newton"},
        {"isls2-ip", "automatic sector, phase two 3 samples + log barrier"},
        {"isls2-nm", "automatic sector, phase two 3 samples + Nelder-Mead"},
        {"isls2-f", "automatic sector, phase two by max-min distance"},
    };
    return registry;
}

bool is_known_method(const std::string& name) {
    const auto& r = method_registry();
    return std::any_of(r.begin(), r.end(), [&](const MethodInfo& m) { return m.name == name; });
}

void ExperimentConfig::validate() const {
    if (!is_known_method(method)) throw ConfigError("unknown method '" + method + "'");
    if (n_buoys < 1) throw ConfigError("buoys must be at least 1");
    if (budget < 1) throw ConfigError("budget must be at least 1");
    if (n_runs < 1) throw ConfigError("runs must be at least 1");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (method == "de" && budget < de_mu) throw ConfigError("de needs budget >= mu");
    if (method == "sls" && n_buoys > 1 && budget < 15 * n_buoys)
        throw ConfigError("sls needs budget >= 15 * buoys");
}

std::optional<SurrogatePlan> surrogate_plan(const std::string& method) {
    if (starts_with(method, "isls2-")) return SurrogatePlan{LandscapeResolution::fine(), SectorMode::Auto};
    if (starts_with(method, "sls") || starts_with(method, "isls"))
        return SurrogatePlan{LandscapeResolution::coarse(), SectorMode::Sls};
    return std::nullopt;
}

SearchResult run_method(const ExperimentConfig& c, const FarmEvaluator& evaluator,
                        const std::optional<SectorExtraction>& sectors, EvaluationBudget& budget,
                        std::uint64_t seed) {
    const std::string& m = c.method;
    if (m == "rs") return run_random_search(evaluator, c.n_buoys, budget, seed);
    if (starts_with(m, "ea-")) {
        MutationSchedule s;
        if (m == "ea-fixed") {
            s.kind = MutationKind::FixedSigma;
            s.sigma = c.sigma;
        } else if (m == "ea-uniform") {
            s.kind = MutationKind::UniformS;
            s.sigma = c.uniform_s;
        } else if (m == "ea-linear") {
            s.kind = MutationKind::LinearDecay;
            s.decay_start = c.decay_start;
            s.decay_end = c.decay_end;
        } else if (m == "ea-onefifth") {
            s.kind = MutationKind::OneFifth;
            s.sigma = c.sigma;
        } else {
            throw ConfigError("unknown method '" + m + "'");
        }
        return run_one_plus_one_ea(evaluator, c.n_buoys, s, budget, seed);
    }
    if (m == "de") return run_de(evaluator, c.n_buoys, {c.de_mu, c.de_F, c.de_Pcr}, budget, seed);
    if (!is_known_method(m)) throw ConfigError("unknown method '" + m + "'");
    if (!sectors) throw ConfigError("method '" + m + "' needs search sectors");
    const HeuristicConfig h = heuristic_config(c);
    if (starts_with(m, "sls")) return run_sls(evaluator, *sectors, h, budget, seed);
    return run_isls2(evaluator, *sectors, h, budget, seed);
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const WecParameters& params) {
    config.validate();
    const WaveScenario scenario = resolve_scenario(config.scenario);
    const FarmEvaluator evaluator(params, scenario, FarmArea::for_buoys(config.n_buoys));

    std::optional<SectorExtraction> sectors;
    std::size_t surrogate_evals = 0;
    if (const auto plan = surrogate_plan(config.method)) {
        const SurrogateLandscape land = build_two_buoy_landscape(evaluator, plan->resolution, config.workers);
        surrogate_evals = land.surrogate_evaluations;
        sectors = extract_search_sectors(land, plan->mode, evaluator.farm().min_separation);
    }

    std::vector<RunRecord> records(config.n_runs);
    std::vector<std::exception_ptr> errors(config.n_runs);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < config.n_runs; i = next++) {
            try {
                RunRecord& r = records[i];
                r.run_id = i;
                r.seed = config.root_seed + i;
                const auto t0 = std::chrono::steady_clock::now();
                EvaluationBudget budget(config.budget);
                SearchResult s = run_method(config, evaluator, sectors, budget, r.seed);
                r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                r.layout = std::move(s.layout);
                r.report = std::move(s.report);
                r.trace = std::move(s.trace);
                r.complete = s.complete && r.layout.size() == config.n_buoys;
                r.surrogate_evaluations = surrogate_evals;
                r.q_factor = r.layout.empty()
                                 ? 0.0
                                 : q_factor(r.report.raw_power, r.layout.size(), evaluator.isolated_power()).q;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t threads = std::min(config.workers, config.n_runs);
        for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work);
        work();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return records;
}

ResultRow to_row(const RunRecord& r) {
    return {r.run_id, r.seed, r.report.raw_power, r.report.violation_sum, r.report.penalized_fitness, r.q_factor,
            r.report.evaluations_used};
}

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << kResultsHeader << '\n';
    for (const auto& rec : records) {
        const ResultRow r = to_row(rec);
        out << r.run_id << ',' << r.seed << ',' << csv::format_exact(r.final_power_w) << ','
            << csv::format_exact(r.violation_m) << ',' << csv::format_exact(r.penalized_w) << ','
            << csv::format_exact(r.q_factor) << ',' << r.evals_used << '\n';
    }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
    std::vector<ResultRow> rows;
    std::string line;
    std::size_t n = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++n;
        const auto body = csv::strip_comment(line);
        if (body.empty()) continue;
        if (!header) {
            if (body != kResultsHeader) throw ParseError("unexpected results header", n);
            header = true;
            continue;
        }
        const auto f = csv::split(body);
        if (f.size() != 7) throw ParseError("expected 7 fields", n);
        ResultRow r;
        r.run_id = static_cast<std::size_t>(field_or_throw(csv::parse_int(f[0]), n, "run_id"));
        r.seed = static_cast<std::uint64_t>(field_or_throw(csv::parse_int(f[1]), n, "seed"));
        r.final_power_w = field_or_throw(csv::parse_double(f[2]), n, "final_power_w");
        r.violation_m = field_or_throw(csv::parse_double(f[3]), n, "violation_m");
        r.penalized_w = field_or_throw(csv::parse_double(f[4]), n, "penalized_w");
        r.q_factor = field_or_throw(csv::parse_double(f[5]), n, "q_factor");
        r.evals_used = static_cast<std::uint64_t>(field_or_throw(csv::parse_int(f[6]), n, "evals_used"));
        rows.push_back(r);
    }
    if (!header) throw ParseError("missing results header", n);
    return rows;
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_results_csv(in);
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
    out << "eval_index,best_penalized_w\n";
    for (const auto& t : trace) out << t.eval_index << ',' << csv::format_significant(t.best_penalized_w, 6) << '\n';
}

void write_layout_csv(std::ostream& out, const Layout& layout, const std::vector<double>& per_buoy_power) {
    out << "buoy_index,x_m,y_m,per_buoy_power_w\n";
    for (std::size_t i = 0; i < layout.size(); ++i) {
        out << i << ',' << csv::format_fixed(layout[i].x, 2) << ',' << csv::format_fixed(layout[i].y, 2) << ','
            << csv::format_significant(i < per_buoy_power.size() ? per_buoy_power[i] : 0.0, 6) << '\n';
    }
}

Layout read_layout_csv(std::istream& in) {
    Layout layout;
    std::string line;
    std::size_t n = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++n;
        const auto body = csv::strip_comment(line);
        if (body.empty()) continue;
        const auto f = csv::split(body);
        if (!header && !f.empty() && f[0] == "buoy_index") {
            header = true;
            continue;
        }
        if (f.size() < 3) throw ParseError("expected buoy_index,x_m,y_m", n);
        const double x = field_or_throw(csv::parse_double(f[1]), n, "x_m");
        const double y = field_or_throw(csv::parse_double(f[2]), n, "y_m");
        layout.push_back({x, y});
    }
    if (layout.empty()) throw ParseError("layout has no buoys", n);
    return layout;
}

Layout read_layout_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_layout_csv(in);
}

void write_experiment(const std::filesystem::path& dir, const std::vector<RunRecord>& records) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / "results.csv");
        write_results_csv(out, records);
    }
    auto timing = open_out(dir / "timing.csv");
    timing << "run_id,wall_s,surrogate_evaluations\n";
    for (const auto& r : records) {
        auto trace = open_out(dir / ("trace_" + std::to_string(r.run_id) + ".csv"));
        write_trace_csv(trace, r.trace);
        auto layout = open_out(dir / ("layout_" + std::to_string(r.run_id) + ".csv"));
        write_layout_csv(layout, r.layout, r.report.per_buoy_power);
        timing << r.run_id << ',' << csv::format_significant(r.wall_seconds, 6) << ',' << r.surrogate_evaluations
               << '\n';
    }
}

Comparison compare_samples(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
    Comparison c;
    c.a = summarize(a);
    c.b = summarize(b);
    c.test = wilcoxon_rank_sum(a, b);
    c.alpha = alpha;
    return c;
}

void write_comparison(std::ostream& out, const Comparison& c) {
    auto row = [&](const char* name, const Summary& s) {
        out << name << ": n=" << s.count << " max=" << csv::format_significant(s.max, 6)
            << " median=" << csv::format_significant(s.median, 6) << " mean=" << csv::format_significant(s.mean, 6)
            << " std=" << csv::format_significant(s.std_dev, 6) << (s.std_degenerate ? " (single run)" : "") << '\n';
    };
    row("a", c.a);
    row("b", c.b);
    out << "wilcoxon one-tailed (a > b): W=" << csv::format_significant(c.test.rank_sum_a, 6)
        << " p=" << csv::format_significant(c.test.p_value, 6) << (c.test.exact ? " exact" : " normal")
        << " alpha=" << csv::format_significant(c.alpha, 6) << (c.significant() ? " significant" : " not significant")
        << '\n';
}

}  // namespace wecopt
