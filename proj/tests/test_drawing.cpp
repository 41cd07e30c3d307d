#include <random>

#include "bcross/layout.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bcross;

namespace {

CombinatorialDrawing two_chords_drawing() {
    CombinatorialDrawing d;
    d.instance = matching_from_chords(4, {{0, 2}, {1, 3}});
    d.crossings = {{0, 1}};
    d.along_edge = {{{0, 1}}, {{0, 1}}};
    return d;
}

}  // namespace

TEST_CASE("planarize the one-crossing drawing: four triangles") {
    const FaceCensus census = planarize(two_chords_drawing());
    CHECK(census.count(3) == 4);
    CHECK(census.total() == 4);
    CHECK(census.census_identity_residual() == 0);
}

TEST_CASE("planarize a single short chord next to the boundary") {
    CombinatorialDrawing d;
    d.instance = matching_from_chords(3, {{0, 1}});
    d.along_edge = {{}};
    const FaceCensus census = planarize(d);
    CHECK(census.total() == 2);  // bigon against the arc plus one triangle
    CHECK(census.count(2) == 1);
    CHECK(census.count(3) == 1);
}

TEST_CASE("planarize the two-slope drawing of the three-diagonal matching") {
    const LayoutResult lr = two_slope_layout(matching_from_chords(6, {{0, 3}, {1, 4}, {2, 5}}));
    const FaceCensus census = planarize(lr.drawing);
    CHECK(census.count(3) == 4);
    CHECK(census.count(4) == 3);
    CHECK(census.total() == 7);
    CHECK(census.census_identity_residual() == 0);
}

TEST_CASE("planarize rejects an unrealizable rotation system") {
    // Three mutually crossing chords with cyclically inconsistent orders.
    CombinatorialDrawing d;
    d.instance = matching_from_chords(6, {{0, 3}, {1, 4}, {2, 5}});
    d.crossings = {{0, 1}, {0, 2}, {1, 2}};
    d.along_edge = {{{0, 1}, {0, 2}}, {{1, 2}, {0, 1}}, {{0, 2}, {1, 2}}};
    CHECK_THROWS_WITH_AS(planarize(d), "non-planar drawing", error);
}

TEST_CASE("check_drawing rejects a crossing set that is not the forced one") {
    CombinatorialDrawing d;
    d.instance = matching_from_chords(4, {{0, 2}, {1, 3}});
    d.along_edge = {{}, {}};
    CHECK_THROWS(check_drawing(d));  // missing forced crossing

    d = two_chords_drawing();
    d.crossings.insert({0, 0});
    CHECK_THROWS(check_drawing(d));
}

TEST_CASE("validate_bundling accepts the single-crossing bundle") {
    const CombinatorialDrawing d = two_chords_drawing();
    BundledCrossing b;
    b.bundle1 = {0};
    b.bundle2 = {1};
    b.member_crossings = {{0, 1}};
    const BundlingPlan plan = BundlingPlan::from_bundles({b});
    CHECK(validate_bundling(d, plan).ok);
}

TEST_CASE("validate_bundling flags an uncovered crossing") {
    const LayoutResult lr = two_slope_layout(matching_from_chords(6, {{0, 3}, {1, 4}, {2, 5}}));
    // Single bundle {e0} x {e1, e2} omits the crossing (e1, e2).
    BundledCrossing b;
    b.bundle1 = {0};
    b.bundle2 = {1, 2};
    b.member_crossings = {{0, 1}, {0, 2}};
    const auto report = validate_bundling(lr.drawing, BundlingPlan::from_bundles({b}));
    CHECK_FALSE(report.ok);
    bool named = false;
    for (const auto& v : report.violations) named |= v.code == "not a partition";
    CHECK(named);
}

TEST_CASE("validate_bundling rejects dangling crossing ids") {
    const CombinatorialDrawing d = two_chords_drawing();
    BundledCrossing b;
    b.bundle1 = {0};
    b.bundle2 = {1};
    b.member_crossings = {{0, 1}, {7, 9}};
    CHECK_THROWS_WITH_AS(validate_bundling(d, BundlingPlan::from_bundles({b})),
                         "unknown crossing", error);
}

TEST_CASE("validate_bundling rejects overlapping bundle sides") {
    const CombinatorialDrawing d = two_chords_drawing();
    BundledCrossing b;
    b.bundle1 = {0, 1};
    b.bundle2 = {1};
    b.member_crossings = {{0, 1}};
    const auto report = validate_bundling(d, BundlingPlan::from_bundles({b}));
    CHECK_FALSE(report.ok);
}

TEST_CASE("two_slope output validates on random matchings") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const MatchingInstance m = testutil::random_matching(rng, 24);
        const LayoutResult lr = two_slope_layout(m);
        CHECK(validate_bundling(lr.drawing, lr.plan).ok);
    }
}

TEST_CASE("face census identity holds on drawings without unused slots") {
    // Planarization bookkeeping check: interior faces of H must satisfy
    // n_H - m_H + f_H = 2 with the outer face present; spot-check degrees.
    const LayoutResult lr =
        two_slope_layout(matching_from_chords(8, {{0, 4}, {1, 5}, {2, 6}, {3, 7}}));
    const FaceCensus census = planarize(lr.drawing);
    CHECK(census.census_identity_residual() == 0);
}
