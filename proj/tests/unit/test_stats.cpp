#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "wecopt/errors.hpp"
#include "wecopt/stats.hpp"

using namespace wecopt;

TEST(Summarize, Values) {
    const std::vector<double> v{3.0, 1.0, 4.0, 1.0, 5.0};
    const auto s = summarize(v);
    EXPECT_EQ(s.count, 5u);
    EXPECT_EQ(s.max, 5.0);
    EXPECT_EQ(s.median, 3.0);
    EXPECT_DOUBLE_EQ(s.mean, 2.8);
    EXPECT_NEAR(s.std_dev, std::sqrt(3.2), 1e-12);
    EXPECT_FALSE(s.std_degenerate);
}

TEST(Summarize, EvenMedianAndSingle) {
    const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
    EXPECT_EQ(summarize(v).median, 2.5);
    const std::vector<double> one{7.0};
    const auto s = summarize(one);
    EXPECT_EQ(s.std_dev, 0.0);
    EXPECT_TRUE(s.std_degenerate);
    EXPECT_THROW(summarize(std::vector<double>{}), DomainError);
}

TEST(Wilcoxon, ExactSmallSample) {
    // a dominates b completely: only 1 of C(6,3)=20 arrangements is as extreme.
    const std::vector<double> a{4.0, 5.0, 6.0}, b{1.0, 2.0, 3.0};
    const auto r = wilcoxon_rank_sum(a, b);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.rank_sum_a, 15.0);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0 / 20.0);
    EXPECT_DOUBLE_EQ(wilcoxon_rank_sum(b, a).p_value, 1.0);
}

TEST(Wilcoxon, ExactMidranks) {
    const std::vector<double> a{2.0, 3.0}, b{1.0, 2.0};
    const auto r = wilcoxon_rank_sum(a, b, WilcoxonMethod::Exact);
    EXPECT_EQ(r.rank_sum_a, 2.5 + 4.0);
    // Rank sums of 2-subsets of {1, 2.5, 2.5, 4}: 3.5,3.5,5,5,6.5,6.5 -> P(W >= 6.5) = 2/6.
    EXPECT_DOUBLE_EQ(r.p_value, 2.0 / 6.0);
}

TEST(Wilcoxon, NormalApproximationTenVersusTen) {
    std::vector<double> a, b;
    for (int i = 0; i < 10; ++i) {
        a.push_back(10.0 + i);
        b.push_back(i);
    }
    const auto r = wilcoxon_rank_sum(a, b);
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.rank_sum_a, 155.0);
    // mu = 105, sigma^2 = 175, z = (155 - 105 - 0.5) / sqrt(175)
    const double z = 49.5 / std::sqrt(175.0);
    EXPECT_NEAR(r.p_value, 0.5 * std::erfc(z / std::sqrt(2.0)), 1e-12);
    EXPECT_LT(r.p_value, 0.025);
}

TEST(Wilcoxon, NormalBelowMeanUsesUpperTailCorrection) {
    std::vector<double> a, b;
    for (int i = 0; i < 10; ++i) {
        a.push_back(i);
        b.push_back(10.0 + i);
    }
    const auto r = wilcoxon_rank_sum(a, b);
    EXPECT_EQ(r.rank_sum_a, 55.0);
    EXPECT_NEAR(r.p_value, 0.5 * std::erfc((55.0 - 0.5 - 105.0) / std::sqrt(175.0) / std::sqrt(2.0)), 1e-12);
}

TEST(Wilcoxon, NormalTracksExactAtSixVersusSix) {
    // a holds six consecutive ranks; sliding the window sweeps W across its range.
    for (int shift = 0; shift <= 6; ++shift) {
        std::vector<double> a, b;
        for (int i = 0; i < 12; ++i) (i >= shift && i < shift + 6 ? a : b).push_back(i);
        const double e = wilcoxon_rank_sum(a, b, WilcoxonMethod::Exact).p_value;
        const double n = wilcoxon_rank_sum(a, b, WilcoxonMethod::Normal).p_value;
        EXPECT_NEAR(e, n, 0.01) << "shift " << shift;
    }
}

TEST(Wilcoxon, IdenticalSamplesNormalPath) {
    const std::vector<double> a(10, 1.0), b(10, 1.0);
    const auto r = wilcoxon_rank_sum(a, b);
    EXPECT_FALSE(r.exact);
    EXPECT_EQ(r.p_value, 0.5);
}

TEST(Wilcoxon, ExactAgreesWithNormalRoughly) {
    const std::vector<double> a{1.1, 2.5, 3.9, 6.2, 7.0, 8.8}, b{0.5, 1.9, 2.2, 4.1, 5.5, 6.0};
    const auto e = wilcoxon_rank_sum(a, b, WilcoxonMethod::Exact);
    const auto n = wilcoxon_rank_sum(a, b, WilcoxonMethod::Normal);
    EXPECT_NEAR(e.p_value, n.p_value, 0.03);
    EXPECT_EQ(e.rank_sum_a, n.rank_sum_a);
}

TEST(Wilcoxon, Complementarity) {
    // Without ties, P(W_a >= w) + P(W_b >= w_b) = 1 + P(W_a = w) exactly.
    const std::vector<double> a{1.0, 4.0, 6.0}, b{2.0, 3.0, 5.0, 7.0};
    const double pa = wilcoxon_rank_sum(a, b).p_value;
    const double pb = wilcoxon_rank_sum(b, a).p_value;
    EXPECT_GT(pa + pb, 1.0);
    EXPECT_LE(pa + pb, 1.0 + 0.5);
}

TEST(Wilcoxon, EmptySampleRejected) {
    const std::vector<double> a{1.0}, none;
    EXPECT_THROW(wilcoxon_rank_sum(a, none), DomainError);
}
