#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "wecopt/errors.hpp"
#include "wecopt/landscape.hpp"

using namespace wecopt;

namespace {

SurrogateLandscape table(std::vector<double> angles, std::vector<double> dists, double ares, double rres) {
    SurrogateLandscape l;
    l.angles_deg = std::move(angles);
    l.distances_m = std::move(dists);
    l.angular_res_deg = ares;
    l.radial_res_m = rres;
    l.power_w.assign(l.angles_deg.size() * l.distances_m.size(), 1.0);
    return l;
}

void set(SurrogateLandscape& l, double angle, double dist, double v) {
    for (std::size_t a = 0; a < l.angles_deg.size(); ++a)
        for (std::size_t d = 0; d < l.distances_m.size(); ++d)
            if (l.angles_deg[a] == angle && l.distances_m[d] == dist) l.power_w[a * l.distances_m.size() + d] = v;
}

}  // namespace

class LandscapeTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        evaluator = new FarmEvaluator({}, builtin_scenario("simplified"), FarmArea::for_buoys(16));
        coarse = new SurrogateLandscape(build_two_buoy_landscape(*evaluator, LandscapeResolution::coarse(), 2));
    }
    static void TearDownTestSuite() {
        delete coarse;
        delete evaluator;
    }
    static FarmEvaluator* evaluator;
    static SurrogateLandscape* coarse;
};
FarmEvaluator* LandscapeTest::evaluator = nullptr;
SurrogateLandscape* LandscapeTest::coarse = nullptr;

TEST_F(LandscapeTest, CoarseShape) {
    EXPECT_EQ(coarse->angles_deg.size(), 8u);
    EXPECT_EQ(coarse->distances_m.size(), 51u);
    EXPECT_EQ(coarse->power_w.size(), 8u * 51u);
    for (double p : coarse->power_w) EXPECT_GE(p, 0.0);
}

TEST_F(LandscapeTest, FarLimitIsTwiceIsolated) {
    for (double a = 0.0; a < 360.0; a += 45.0)
        EXPECT_LE(std::abs(two_buoy_power(*evaluator, a, 10000.0) / (2.0 * evaluator->isolated_power()) - 1.0), 1e-3);
}

TEST_F(LandscapeTest, HalfTurnSymmetry) {
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t d = 0; d < coarse->distances_m.size(); ++d)
            EXPECT_NEAR(coarse->at(a, d), coarse->at(a + 4, d), 1e-9 * coarse->at(a, d));
}

TEST_F(LandscapeTest, RebuildIsIdentical) {
    const auto again = build_two_buoy_landscape(*evaluator, LandscapeResolution::coarse(), 1);
    EXPECT_EQ(again.power_w, coarse->power_w);
}

TEST_F(LandscapeTest, SectorContainsArgmax) {
    for (auto mode : {SectorMode::Sls, SectorMode::Auto}) {
        const auto ex = extract_search_sectors(*coarse, mode);
        EXPECT_TRUE(ex.sectors.front().contains(ex.best_angle_deg, ex.best_distance_m));
        for (const auto& s : ex.sectors) {
            EXPECT_GE(s.radial_lo_m, 50.0);
            EXPECT_LE(s.radial_hi_m, 300.0);
            EXPECT_LT(s.angle_lo_deg, s.angle_hi_deg);
            EXPECT_LT(s.radial_lo_m, s.radial_hi_m);
            EXPECT_TRUE(s.anchor_relative);
        }
        EXPECT_GE(ex.best_angle_deg, 0.0);
        EXPECT_LT(ex.best_angle_deg, 360.0);
    }
}

TEST_F(LandscapeTest, SlsSectorsMirror) {
    const auto ex = extract_search_sectors(*coarse, SectorMode::Sls);
    ASSERT_EQ(ex.sectors.size(), 2u);
    EXPECT_DOUBLE_EQ(ex.sectors[0].angular_width(), ex.sectors[1].angular_width());
    EXPECT_DOUBLE_EQ(ex.sectors[1].angle_lo_deg, ex.sectors[0].angle_lo_deg + 180.0);
}

TEST_F(LandscapeTest, CsvRoundTrip) {
    std::stringstream buf;
    write_landscape(buf, *coarse);
    const auto back = read_landscape(buf);
    EXPECT_EQ(back.angles_deg, coarse->angles_deg);
    EXPECT_EQ(back.distances_m, coarse->distances_m);
    EXPECT_EQ(back.power_w, coarse->power_w);
    EXPECT_EQ(back.scenario_name, coarse->scenario_name);
    EXPECT_EQ(back.surrogate_evaluations, coarse->surrogate_evaluations);
}

TEST(SectorExtraction, TwoCellDefinition) {
    std::vector<double> angles, dists;
    for (double a = 0.0; a < 360.0; a += 5.0) angles.push_back(a);
    for (double d = 50.0; d <= 300.0; d += 5.0) dists.push_back(d);
    auto l = table(angles, dists, 5.0, 5.0);
    set(l, 45.0, 70.0, 3.0);
    set(l, 45.0, 120.0, 2.0);
    const auto ex = extract_search_sectors(l, SectorMode::Auto);
    ASSERT_EQ(ex.sectors.size(), 1u);
    EXPECT_DOUBLE_EQ(ex.sectors[0].angle_lo_deg, 42.5);
    EXPECT_DOUBLE_EQ(ex.sectors[0].angle_hi_deg, 47.5);
    EXPECT_DOUBLE_EQ(ex.sectors[0].radial_lo_m, 70.0);
    EXPECT_DOUBLE_EQ(ex.sectors[0].radial_hi_m, 120.0);
    EXPECT_EQ(ex.best_angle_deg, 45.0);
    EXPECT_EQ(ex.best_distance_m, 70.0);
}

TEST(SectorExtraction, TiesAndCap) {
    std::vector<double> angles{0.0, 90.0, 180.0, 270.0};
    std::vector<double> dists{50.0, 100.0, 350.0};
    auto l = table(angles, dists, 90.0, 50.0);
    set(l, 90.0, 350.0, 9.0);  // beyond the cap
    set(l, 90.0, 100.0, 5.0);
    set(l, 0.0, 100.0, 5.0);
    const auto ex = extract_search_sectors(l, SectorMode::Auto);
    EXPECT_EQ(ex.best_angle_deg, 0.0);
    EXPECT_EQ(ex.best_distance_m, 100.0);
}

TEST(SectorExtraction, FlatLandscapeRejected) {
    auto l = table({0.0, 45.0}, {50.0, 55.0}, 45.0, 5.0);
    EXPECT_THROW(extract_search_sectors(l, SectorMode::Auto), DegenerateLandscapeError);
}

TEST(LandscapeBuild, RejectsInnerRadiusBelowSeparation) {
    const FarmEvaluator ev({}, builtin_scenario("simplified"), FarmArea::for_buoys(4));
    EXPECT_THROW(build_two_buoy_landscape(ev, {45.0, 5.0, 40.0, 300.0}), DomainError);
}

TEST(LandscapeBuild, SingleDirectionMirrorAboutWaveAxis) {
    auto s = builtin_scenario("simplified");
    s.directions = make_direction_grid({std::numbers::pi / 2.0}, {1.0});
    const FarmEvaluator ev({}, s, FarmArea::for_buoys(4));
    for (double a : {10.0, 35.0, 60.0})
        for (double d : {55.0, 120.0, 230.0}) {
            const double p = two_buoy_power(ev, a, d);
            EXPECT_NEAR(two_buoy_power(ev, 180.0 - a, d), p, 1e-6 * p);
        }
}
