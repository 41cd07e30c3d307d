#pragma once

#include <vector>

#include "bcross/drawing.hpp"
#include "bcross/instance.hpp"

namespace bcross {

struct LayoutResult {
    CombinatorialDrawing drawing;
    BundlingPlan plan;
    long long bundle_count = 0;
    bool used_fallback = false;
};

// Two-slope construction: edge (i, j) is a slope-1 segment from (i, 0)
// followed by a vertical drop at x = j. One bundle per edge groups all
// crossings of that edge's vertical segment; at most m-1 bundles.
LayoutResult two_slope_layout(const MatchingInstance& m);

// Maximal pairwise non-interleaving edge subset, greedy by ascending index.
std::vector<int> greedy_outerplanar_subset(const MatchingInstance& m);

// Layout that draws the edges of estar crossing-free and routes every other
// edge with an entry vertical, a slope-1 segment, and an exit vertical; at
// most two bundles per non-estar edge, so at most 2(m - |estar|) in total.
// Falls back to two_slope_layout when the construction fails validation.
// Throws error("not outerplanar for this order") when estar has an
// interleaving pair.
LayoutResult outerplanar_layout(const MatchingInstance& m, const std::vector<int>& estar);

}  // namespace bcross
