#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "wecopt/baselines.hpp"
#include "wecopt/errors.hpp"

using namespace wecopt;

namespace {

class Baselines : public ::testing::Test {
protected:
    FarmArea farm = FarmArea::for_buoys(4);
    FarmEvaluator ev{{}, builtin_scenario("simplified"), farm};

    void check(const SearchResult& r, std::uint64_t budget) {
        EXPECT_TRUE(r.complete);
        EXPECT_EQ(r.evaluations_used, budget);
        ASSERT_EQ(r.trace.size(), budget);
        for (std::size_t i = 1; i < r.trace.size(); ++i)
            EXPECT_GE(r.trace[i].best_penalized_w, r.trace[i - 1].best_penalized_w);
        EXPECT_EQ(r.trace.back().best_penalized_w, r.report.penalized_fitness);
        EXPECT_EQ(r.layout.size(), 4u);
        for (const auto& p : r.layout) EXPECT_TRUE(farm.bounds().contains(p));
    }
};

}  // namespace

TEST_F(Baselines, RandomSearchSpendsBudget) {
    EvaluationBudget b(40);
    check(run_random_search(ev, 4, b, 1), 40);
}

TEST_F(Baselines, EaVariantsSpendBudgetAndNeverRegress) {
    for (auto kind : {MutationKind::FixedSigma, MutationKind::UniformS, MutationKind::LinearDecay,
                      MutationKind::OneFifth}) {
        MutationSchedule s;
        s.kind = kind;
        EvaluationBudget b(60);
        check(run_one_plus_one_ea(ev, 4, s, b, 2), 60);
    }
}

TEST_F(Baselines, ZeroSigmaRepeatsParent) {
    MutationSchedule s;
    s.sigma = 0.0;
    EvaluationBudget b(5);
    const auto r = run_one_plus_one_ea(ev, 4, s, b, 2);
    for (const auto& t : r.trace) EXPECT_EQ(t.best_penalized_w, r.trace.front().best_penalized_w);
}

TEST_F(Baselines, DeSpendsBudgetIncludingPartialGeneration) {
    DeOptions o;
    o.mu = 8;
    EvaluationBudget b(30);
    check(run_de(ev, 4, o, b, 3), 30);
}

TEST_F(Baselines, DeterministicPerSeed) {
    DeOptions o;
    o.mu = 6;
    EvaluationBudget a(20), b(20), c(20);
    const auto x = run_de(ev, 4, o, a, 9);
    const auto y = run_de(ev, 4, o, b, 9);
    const auto z = run_de(ev, 4, o, c, 10);
    EXPECT_EQ(x.layout, y.layout);
    EXPECT_NE(x.layout, z.layout);
}

TEST_F(Baselines, ConfigErrors) {
    DeOptions o;
    o.mu = 3;
    EvaluationBudget b(10);
    EXPECT_THROW(run_de(ev, 4, o, b, 1), ConfigError);
    MutationSchedule s;
    s.kind = MutationKind::LinearDecay;
    s.decay_start = 1.0;
    s.decay_end = 5.0;
    EXPECT_THROW(run_one_plus_one_ea(ev, 4, s, b, 1), ConfigError);
    EXPECT_THROW(run_random_search(ev, 0, b, 1), ConfigError);
}

TEST(MutationScheduleTest, LinearEndpoints) {
    MutationSchedule s;
    s.decay_start = 30.0;
    s.decay_end = 1.0;
    EXPECT_EQ(s.linear_sigma(0, 100), 30.0);
    EXPECT_EQ(s.linear_sigma(99, 100), 1.0);
    EXPECT_NEAR(s.linear_sigma(33, 67), 15.5, 1e-12);
    EXPECT_EQ(s.linear_sigma(0, 1), 1.0);
}

TEST(DeCrossover, ForcedIndexAndExtremes) {
    std::mt19937_64 rng(1);
    const std::vector<double> t{0, 0, 0, 0, 0, 0}, d{1, 1, 1, 1, 1, 1};
    for (std::size_t k = 0; k < 6; ++k) {
        const auto none = de_crossover(t, d, 0.0, k, rng);
        for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(none[j], j == k ? 1.0 : 0.0);
    }
    EXPECT_EQ(de_crossover(t, d, 1.0, 2, rng), d);
}

TEST(DeCrossover, RateMatchesPcr) {
    std::mt19937_64 rng(2);
    const std::vector<double> t(32, 0.0), d(32, 1.0);
    double taken = 0.0;
    for (int i = 0; i < 2000; ++i)
        for (double v : de_crossover(t, d, 0.3, 0, rng)) taken += v;
    // forced index + 0.3 of the other 31
    EXPECT_NEAR(taken / 2000.0, 1.0 + 0.3 * 31.0, 0.3);
}

TEST(RandomLayout, InsideFarmAndPrefersFeasible) {
    const auto farm = FarmArea::for_buoys(16);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto l = random_layout(16, farm, rng);
        ASSERT_EQ(l.size(), 16u);
        for (const auto& p : l) EXPECT_TRUE(farm.bounds().contains(p));
    }
}
