#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "wecopt/errors.hpp"
#include "wecopt/field.hpp"
#include "wecopt/harness.hpp"

using namespace wecopt;

namespace {

ExperimentConfig small(const std::string& method) {
    ExperimentConfig c;
    c.method = method;
    c.n_buoys = 3;
    c.budget = 60;
    c.n_runs = 3;
    c.root_seed = 100;
    c.de_mu = 6;
    return c;
}

std::string results_text(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    write_results_csv(out, records);
    return out.str();
}

}  // namespace

TEST(Registry, FifteenUniqueMethods) {
    const auto& r = method_registry();
    EXPECT_EQ(r.size(), 15u);
    for (const auto& m : r) EXPECT_TRUE(is_known_method(m.name));
    EXPECT_FALSE(is_known_method("pso"));
}

TEST(ExperimentConfigTest, Validation) {
    auto c = small("rs");
    EXPECT_NO_THROW(c.validate());
    c.method = "pso";
    EXPECT_THROW(c.validate(), ConfigError);
    c = small("sls");
    c.budget = 44;
    EXPECT_THROW(c.validate(), ConfigError);
    c = small("rs");
    c.workers = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = small("de");
    c.budget = 5;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(SurrogatePlanTest, ByFamily) {
    EXPECT_FALSE(surrogate_plan("rs"));
    EXPECT_FALSE(surrogate_plan("de"));
    EXPECT_EQ(surrogate_plan("sls")->resolution.angular_deg, 45.0);
    EXPECT_EQ(surrogate_plan("isls")->mode, SectorMode::Sls);
    EXPECT_EQ(surrogate_plan("isls2-as")->resolution.angular_deg, 5.0);
    EXPECT_EQ(surrogate_plan("isls2-as")->mode, SectorMode::Auto);
}

TEST(Experiment, EveryMethodRunsWithinBudget) {
    for (const auto& m : method_registry()) {
        const auto records = run_experiment(small(m.name));
        ASSERT_EQ(records.size(), 3u) << m.name;
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            EXPECT_EQ(r.run_id, i);
            EXPECT_EQ(r.seed, 100u + i);
            EXPECT_LE(r.report.evaluations_used, 60u) << m.name;
            EXPECT_EQ(r.trace.size(), r.report.evaluations_used) << m.name;
            EXPECT_TRUE(r.complete) << m.name;
            EXPECT_EQ(r.layout.size(), 3u) << m.name;
            EXPECT_GT(r.q_factor, 0.0) << m.name;
            if (surrogate_plan(m.name)) EXPECT_GT(r.surrogate_evaluations, 0u);
        }
    }
}

TEST(Experiment, WorkerCountDoesNotChangeResults) {
    for (const char* m : {"rs", "isls2-nm"}) {
        auto c = small(m);
        const auto one = results_text(run_experiment(c));
        c.workers = 3;
        EXPECT_EQ(results_text(run_experiment(c)), one) << m;
    }
}

TEST(ResultsCsv, ExactRoundTrip) {
    const auto records = run_experiment(small("ea-fixed"));
    std::stringstream buf;
    write_results_csv(buf, records);
    const auto rows = read_results_csv(buf);
    ASSERT_EQ(rows.size(), records.size());
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i], to_row(records[i]));
}

TEST(ResultsCsv, ParseErrors) {
    std::istringstream bad_header("run,seed\n");
    EXPECT_THROW(read_results_csv(bad_header), ParseError);
    std::istringstream bad_field(
        "run_id,seed,final_power_w,violation_m,penalized_w,q_factor,evals_used\n0,1,x,0,0,0,1\n");
    try {
        read_results_csv(bad_field);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(read_results_csv(std::filesystem::path("/nonexistent/results.csv")), ConfigError);
}

TEST(LayoutCsv, CentimetreRoundTrip) {
    const Layout l{{1.234, 5.678}, {100.0, 0.005}};
    std::stringstream buf;
    write_layout_csv(buf, l, {1.0, 2.0});
    const auto back = read_layout_csv(buf);
    ASSERT_EQ(back.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(back[i].x, l[i].x, 0.005 + 1e-12);
        EXPECT_NEAR(back[i].y, l[i].y, 0.005 + 1e-12);
    }
    std::istringstream empty("buoy_index,x_m,y_m,per_buoy_power_w\n");
    EXPECT_THROW(read_layout_csv(empty), ParseError);
}

TEST(TraceCsv, Header) {
    std::ostringstream out;
    write_trace_csv(out, {{1, 1234567.0}, {2, 2345678.9}});
    EXPECT_EQ(out.str(), "eval_index,best_penalized_w\n1,1.23457e+06\n2,2.34568e+06\n");
}

TEST(ExperimentFiles, WritesAllArtifacts) {
    const auto dir = std::filesystem::temp_directory_path() / "wecopt_harness_test";
    std::filesystem::remove_all(dir);
    auto c = small("rs");
    c.n_runs = 2;
    write_experiment(dir, run_experiment(c));
    for (const char* f : {"results.csv", "timing.csv", "trace_0.csv", "trace_1.csv", "layout_0.csv", "layout_1.csv"})
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
    EXPECT_EQ(read_results_csv(dir / "results.csv").size(), 2u);
    EXPECT_EQ(read_layout_csv(dir / "layout_1.csv").size(), 3u);
    std::filesystem::remove_all(dir);
}

TEST(CompareTest, SignificanceAndReport) {
    std::vector<double> a, b;
    for (int i = 0; i < 10; ++i) {
        a.push_back(100.0 + i);
        b.push_back(50.0 + i);
    }
    const auto c = compare_samples(a, b);
    EXPECT_TRUE(c.significant());
    EXPECT_FALSE(compare_samples(b, a).significant());
    std::ostringstream out;
    write_comparison(out, c);
    EXPECT_NE(out.str().find("significant"), std::string::npos);
    EXPECT_EQ(out.str().find("not significant"), std::string::npos);
}

class FieldTest : public ::testing::Test {
protected:
    FarmEvaluator ev{{}, builtin_scenario("simplified"), FarmArea::for_buoys(2)};
    Layout layout{{50.0, 50.0}, {150.0, 120.0}};
};

TEST_F(FieldTest, GridAndMask) {
    const auto f = export_energy_field(ev, layout, 50.0, 50.0);
    const double side = ev.farm().side;
    const std::size_t per_axis = static_cast<std::size_t>(std::floor((side + 100.0) / 50.0 + 1e-9)) + 1;
    EXPECT_EQ(f.nodes.size(), per_axis * per_axis);
    std::size_t evaluated = 0;
    for (const auto& n : f.nodes) {
        bool near = false;
        for (const auto& p : layout) near = near || distance(p, {n.x, n.y}) < 50.0;
        EXPECT_EQ(n.masked, near);
        if (!n.masked) {
            ++evaluated;
            EXPECT_GT(n.power_w, 0.0);
        }
    }
    EXPECT_EQ(f.probe_evaluations, evaluated);
    EXPECT_EQ(f.nodes.front().x, -50.0);
    EXPECT_EQ(f.nodes.front().y, -50.0);
}

TEST_F(FieldTest, FarProbeIsIsolated) {
    const double p = probe_power(ev, layout, {20000.0, 20000.0});
    EXPECT_NEAR(p / ev.isolated_power(), 1.0, 1e-3);
}

TEST_F(FieldTest, WorkersAgreeAndCsvMasksNan) {
    const auto a = export_energy_field(ev, layout, 40.0, 0.0, 1);
    const auto b = export_energy_field(ev, layout, 40.0, 0.0, 3);
    ASSERT_EQ(a.nodes.size(), b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) EXPECT_EQ(a.nodes[i].power_w, b.nodes[i].power_w);
    std::ostringstream out;
    write_energy_field(out, a);
    EXPECT_EQ(out.str().rfind("x_m,y_m,power_w,masked\n", 0), 0u);
    EXPECT_NE(out.str().find("nan"), std::string::npos);
    EXPECT_THROW(export_energy_field(ev, layout, 0.0), ConfigError);
}
