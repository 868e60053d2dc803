#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "wecopt/numerics.hpp"

using namespace wecopt;

namespace {

// Concave bowl peaking at (cx, cy).
PointObjective bowl(double cx, double cy, std::size_t* calls = nullptr, std::vector<Position>* seen = nullptr) {
    return [=](const Position& p) {
        if (calls) ++*calls;
        if (seen) seen->push_back(p);
        return 1000.0 - (p.x - cx) * (p.x - cx) - 2.0 * (p.y - cy) * (p.y - cy);
    };
}

const Box kBox{0.0, 100.0, 0.0, 100.0};

}  // namespace

TEST(NelderMead, FindsInteriorPeak) {
    NelderMeadOptions opt;
    opt.max_evals = 300;
    opt.min_diameter = 1e-4;
    const auto r = nelder_mead(bowl(40.0, 60.0), {20.0, 20.0}, std::nullopt, kBox, opt);
    EXPECT_NEAR(r.best_point.x, 40.0, 0.05);
    EXPECT_NEAR(r.best_point.y, 60.0, 0.05);
    EXPECT_TRUE(r.converged);
}

TEST(NelderMead, RespectsCapBoundsAndNeverWorsens) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int t = 0; t < 30; ++t) {
        std::size_t calls = 0;
        std::vector<Position> seen;
        const double cx = u(rng) * 1.5 - 25.0, cy = u(rng) * 1.5 - 25.0;
        const auto f = bowl(cx, cy, &calls, &seen);
        const Position start{u(rng), u(rng)};
        const double f0 = bowl(cx, cy)(start);
        const auto r = nelder_mead(f, start, f0, kBox, {});
        EXPECT_LE(calls, 20u);
        EXPECT_EQ(r.evaluations_used, calls);
        EXPECT_GE(r.best_value, f0);
        EXPECT_EQ(r.best_value, bowl(cx, cy)(r.best_point));
        for (const auto& p : seen) EXPECT_TRUE(kBox.contains(p));
    }
}

TEST(NelderMead, CountsStartWhenUnknown) {
    std::size_t calls = 0;
    NelderMeadOptions opt;
    opt.max_evals = 1;
    const auto r = nelder_mead(bowl(50.0, 50.0, &calls), {10.0, 10.0}, std::nullopt, kBox, opt);
    EXPECT_EQ(calls, 1u);
    EXPECT_EQ(r.best_point, (Position{10.0, 10.0}));
}

TEST(FdGradient, MatchesAnalytic) {
    const auto f = bowl(30.0, 70.0);
    const auto g = fd_gradient(f, {50.0, 50.0}, kBox);
    EXPECT_NEAR(g.gradient.x(), -2.0 * 20.0, 1e-6);
    EXPECT_NEAR(g.gradient.y(), -4.0 * -20.0, 1e-6);
    EXPECT_EQ(g.evaluations, 4u);
}

TEST(FdGradient, OneSidedAtBounds) {
    std::vector<Position> seen;
    const auto f = bowl(30.0, 70.0, nullptr, &seen);
    const auto g = fd_gradient(f, {0.0, 100.0}, kBox, 0.5, bowl(30.0, 70.0)({0.0, 100.0}));
    for (const auto& p : seen) EXPECT_TRUE(kBox.contains(p));
    EXPECT_EQ(g.evaluations, 2u);
    // Forward/backward differences on a quadratic are off by h * curvature.
    EXPECT_NEAR(g.gradient.x(), 60.0, 1.0);
    EXPECT_NEAR(g.gradient.y(), -120.0, 2.0);
}

class DescentStrategies : public ::testing::TestWithParam<BoundaryStrategy> {};

TEST_P(DescentStrategies, ImprovesWithinCapAndBounds) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(5.0, 95.0);
    for (int t = 0; t < 20; ++t) {
        std::size_t calls = 0;
        std::vector<Position> seen;
        const double cx = u(rng), cy = u(rng);
        const auto f = bowl(cx, cy, &calls, &seen);
        const Position start{u(rng), u(rng)};
        const double f0 = bowl(cx, cy)(start);
        const auto r = constrained_descent(f, start, f0, kBox, GetParam());
        EXPECT_LE(calls, 20u);
        EXPECT_EQ(r.evaluations_used, calls);
        EXPECT_GE(r.best_value, f0);
        EXPECT_TRUE(kBox.contains(r.best_point));
        for (const auto& p : seen) EXPECT_TRUE(kBox.contains(p));
    }
}

TEST_P(DescentStrategies, PeakOutsideBoxEndsNearBoundary) {
    DescentOptions opt;
    opt.max_evals = 200;
    const auto r = constrained_descent(bowl(150.0, 50.0), {50.0, 50.0}, std::nullopt, kBox, GetParam(), opt);
    EXPECT_GT(r.best_point.x, 95.0);
    EXPECT_LE(r.best_point.x, 100.0);
    EXPECT_NEAR(r.best_point.y, 50.0, 2.0);
    if (GetParam() == BoundaryStrategy::InteriorPoint) EXPECT_LT(r.best_point.x, 100.0);
}

INSTANTIATE_TEST_SUITE_P(All, DescentStrategies,
                         ::testing::Values(BoundaryStrategy::ActiveSet, BoundaryStrategy::Sqp,
                                           BoundaryStrategy::InteriorPoint),
                         [](const auto& info) {
                             switch (info.param) {
                                 case BoundaryStrategy::ActiveSet: return std::string("ActiveSet");
                                 case BoundaryStrategy::Sqp: return std::string("Sqp");
                                 default: return std::string("InteriorPoint");
                             }
                         });

TEST(Descent, FlatObjectiveStopsWithoutWandering) {
    const PointObjective flat = [](const Position&) { return 1e-23; };
    const auto r = constrained_descent(flat, {10.0, 10.0}, 1e-23, kBox, BoundaryStrategy::ActiveSet);
    EXPECT_EQ(r.best_point, (Position{10.0, 10.0}));
    EXPECT_LE(r.evaluations_used, 20u);
}

TEST(Descent, TinyButSlopedObjectiveStillMoves) {
    // Penalized fitness can be ~1e-23 in absolute terms yet carry a usable slope.
    const PointObjective f = [](const Position& p) { return 1e-23 * (1.0 + p.x); };
    const auto r = constrained_descent(f, {10.0, 10.0}, std::nullopt, kBox, BoundaryStrategy::ActiveSet);
    EXPECT_GT(r.best_point.x, 10.0);
}

TEST(MaxDistancePoint, PushesAwayFromPlaced) {
    std::mt19937_64 rng(1);
    const std::vector<Position> placed{{50.0, 50.0}};
    for (int t = 0; t < 10; ++t) {
        const Position p = max_distance_point(placed, kBox, rng);
        EXPECT_TRUE(kBox.contains(p));
        EXPECT_GT(min_distance_to(placed, p), 60.0);
    }
}

TEST(MaxDistancePoint, Deterministic) {
    const std::vector<Position> placed{{10.0, 10.0}, {90.0, 20.0}, {40.0, 80.0}};
    std::mt19937_64 a(3), b(3);
    EXPECT_EQ(max_distance_point(placed, kBox, a), max_distance_point(placed, kBox, b));
}

TEST(MinDistance, EmptyIsInfinite) {
    EXPECT_TRUE(std::isinf(min_distance_to({}, {1.0, 2.0})));
    const std::vector<Position> pts{{0.0, 0.0}, {3.0, 4.0}};
    EXPECT_DOUBLE_EQ(min_distance_to(pts, {3.0, 0.0}), 3.0);
}
