#include <random>

#include "bcross/bounds.hpp"
#include "bcross/layout.hpp"
#include "bcross/oracle.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bcross;

namespace {

// Unrestricted oracle for the pruning self-check: enumerates every set
// partition of the crossings (restricted-growth strings) and validates each
// against the full validator.
long long min_bundles_unrestricted(const CombinatorialDrawing& d) {
    const std::vector<CrossingId> xs(d.crossings.begin(), d.crossings.end());
    if (xs.empty()) return 0;
    std::vector<int> label(xs.size(), 0);
    long long best = xs.size() + 1;

    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == xs.size()) {
            std::vector<BundledCrossing> bundles(used);
            std::vector<std::set<int>> touched(used);
            for (std::size_t c = 0; c < xs.size(); ++c) {
                bundles[label[c]].member_crossings.insert(xs[c]);
                touched[label[c]].insert(xs[c].first);
                touched[label[c]].insert(xs[c].second);
            }
            // Try both bipartitions of each group's edge set greedily: the
            // bipartition is forced by connectivity of the crossing graph.
            for (int g = 0; g < used; ++g) {
                std::map<int, int> side;
                bool ok = true;
                for (const CrossingId& c : bundles[g].member_crossings) {
                    int sa = side.count(c.first) ? side[c.first] : 0;
                    int sb = side.count(c.second) ? side[c.second] : 0;
                    if (sa == 0 && sb == 0) {
                        side[c.first] = 1;
                        side[c.second] = 2;
                    } else if (sa == 0) {
                        side[c.first] = sb == 1 ? 2 : 1;
                    } else if (sb == 0) {
                        side[c.second] = sa == 1 ? 2 : 1;
                    } else if (sa == sb) {
                        ok = false;
                    }
                }
                if (!ok) return;
                for (const auto& [e, s] : side)
                    (s == 1 ? bundles[g].bundle1 : bundles[g].bundle2).push_back(e);
            }
            if (validate_bundling(d, BundlingPlan::from_bundles(bundles)).ok)
                best = std::min<long long>(best, used);
            return;
        }
        for (int g = 0; g <= used && g < static_cast<int>(xs.size()); ++g) {
            label[i] = g;
            rec(i + 1, std::max(used, g + 1));
        }
    };
    rec(0, 0);
    return best;
}

}  // namespace

TEST_CASE("enumerate_embeddings trivial cases") {
    CHECK(enumerate_embeddings(matching_from_chords(4, {{0, 2}, {1, 3}})).size() == 1);
    CHECK(enumerate_embeddings(matching_from_chords(4, {{0, 1}, {2, 3}})).size() == 1);
    CHECK(enumerate_embeddings(matching_from_chords(0, {})).size() == 1);
}

TEST_CASE("enumerate_embeddings of the three-diagonal matching") {
    const MatchingInstance m = matching_from_chords(6, {{0, 3}, {1, 4}, {2, 5}});
    const auto drawings = enumerate_embeddings(m);
    // Regression value from the first run: the central triangle flips.
    CHECK(drawings.size() == 2);
    for (const auto& d : drawings) CHECK_NOTHROW(planarize(d));
    // The two-slope drawing must be among them.
    const LayoutResult lr = two_slope_layout(m);
    bool found = false;
    for (const auto& d : drawings) found |= d.along_edge == lr.drawing.along_edge;
    CHECK(found);
}

TEST_CASE("enumerate_embeddings enforces the cap") {
    std::vector<Edge> chords;
    for (int i = 0; i < 7; ++i) chords.push_back({i, i + 7});
    CHECK_THROWS_WITH_AS(enumerate_embeddings(matching_from_chords(14, chords)),
                         "instance too large for oracle", error);
}

TEST_CASE("decide_bc on two crossing chords") {
    const MatchingInstance m = matching_from_chords(4, {{0, 2}, {1, 3}});
    CHECK(decide_bc(m, 1).feasible);
    CHECK_FALSE(decide_bc(m, 0).feasible);
}

TEST_CASE("decide_bc on three mutually crossing chords") {
    const MatchingInstance m = matching_from_chords(6, {{0, 3}, {1, 4}, {2, 5}});
    CHECK_FALSE(decide_bc(m, 1).feasible);
    const DecideResult r = decide_bc(m, 2);
    REQUIRE(r.feasible);
    CHECK(validate_bundling(r.witness->first, r.witness->second).ok);
    CHECK(r.witness->second.bundles.size() <= 2);
}

TEST_CASE("exact_bc examples") {
    CHECK(exact_bc(matching_from_chords(4, {{0, 2}, {1, 3}})).optimum == 1);
    CHECK(exact_bc(matching_from_chords(6, {{0, 3}, {1, 4}, {2, 5}})).optimum == 2);
    CHECK(exact_bc(matching_from_chords(4, {{0, 3}, {1, 2}})).optimum == 0);
}

TEST_CASE("exact_bc witnesses validate against the original instance") {
    std::mt19937 rng(71);
    int done = 0;
    while (done < 25) {
        const MatchingInstance m = testutil::random_matching(rng, 10);
        if (m.chords().size() > 5) continue;
        ++done;
        const OracleResult r = exact_bc(m);
        CHECK(r.witness_drawing.instance.base.edges == m.base.edges);
        CHECK(validate_bundling(r.witness_drawing, r.witness_plan).ok);
        CHECK(static_cast<long long>(r.witness_plan.bundles.size()) == r.optimum);
    }
}

TEST_CASE("oracle sandwich against bounds and two_slope") {
    std::mt19937 rng(73);
    int done = 0;
    while (done < 25) {
        const MatchingInstance m = testutil::random_matching(rng, 10);
        if (m.chords().size() > 5) continue;
        ++done;
        const OracleResult r = exact_bc(m);
        const SimplifyResult s = simplify(m);
        CHECK(r.optimum >= lower_bound_fixed(s.simplified.chords().size()));
        CHECK(r.optimum <= two_slope_layout(m).bundle_count);
    }
}

TEST_CASE("exact_bc is invariant under rotation and reflection") {
    const std::vector<Edge> base = {{0, 3}, {1, 4}, {2, 6}};
    const int n = 8;
    const long long expect = exact_bc(matching_from_chords(n, base)).optimum;
    for (int shift = 1; shift < n; ++shift) {
        std::vector<Edge> rotated;
        for (const Edge& e : base)
            rotated.push_back({(e.first + shift) % n, (e.second + shift) % n});
        CHECK(exact_bc(matching_from_chords(n, rotated)).optimum == expect);
    }
    std::vector<Edge> reflected;
    for (const Edge& e : base)
        reflected.push_back({(n - e.first) % n, (n - e.second) % n});
    CHECK(exact_bc(matching_from_chords(n, reflected)).optimum == expect);
}

TEST_CASE("circular genus bound cross-checked on the expanded K4") {
    std::vector<Edge> edges;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) edges.push_back({u, v});
    const auto k4 = CircularInstance::identity(4, edges);
    const auto [lb_general, lb_circular] = genus_lower_bounds(4, 6);
    CHECK(lb_general == 0);
    CHECK(lb_circular == 1);
    CHECK(exact_bc(to_matching(k4)).optimum == 1);
}

TEST_CASE("oracle optimum respects the f3/4 bound of its witness drawing") {
    std::mt19937 rng(83);
    int done = 0;
    while (done < 20) {
        const MatchingInstance m = testutil::random_matching(rng, 10);
        const SimplifyResult s = simplify(m);
        if (s.simplified.chords().size() > 5 || s.simplified.chords().empty()) continue;
        ++done;
        const OracleResult r = exact_bc(s.simplified);
        const FaceCensus census = planarize(r.witness_drawing);
        CHECK(4 * r.optimum >= census.count(3));
    }
}

TEST_CASE("pruned partition search matches unrestricted enumeration") {
    std::mt19937 rng(79);
    int done = 0;
    while (done < 25) {
        const MatchingInstance m = testutil::random_matching(rng, 10);
        if (forced_crossing_pairs(m).size() > 6 || m.chords().size() > 5) continue;
        ++done;
        long long best_unrestricted = -1;
        for (const auto& d : enumerate_embeddings(m)) {
            const long long b = min_bundles_unrestricted(d);
            if (best_unrestricted < 0 || b < best_unrestricted) best_unrestricted = b;
        }
        const OracleResult r = exact_bc(m);
        if (best_unrestricted < 0) best_unrestricted = 0;
        CHECK(r.optimum == best_unrestricted);
    }
}
