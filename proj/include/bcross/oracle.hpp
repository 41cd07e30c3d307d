#pragma once

#include <functional>
#include <optional>

#include "bcross/drawing.hpp"
#include "bcross/instance.hpp"
#include "bcross/simplify.hpp"

namespace bcross {

inline constexpr int kDefaultOracleCap = 6;

struct SearchStats {
    long long embeddings_enumerated = 0;
    long long partitions_tested = 0;
};

struct OracleResult {
    long long optimum = 0;
    CombinatorialDrawing witness_drawing;
    BundlingPlan witness_plan;
    SearchStats stats;
};

// Enumerates every disk-realizable assignment of crossing orders along the
// edges, in canonical (lexicographic) order, invoking the visitor on each.
// Throws error("instance too large for oracle") when the edge count exceeds
// the cap.
long long enumerate_embeddings(const MatchingInstance& m, int cap,
                               const std::function<void(const CombinatorialDrawing&)>& visit);

std::vector<CombinatorialDrawing> enumerate_embeddings(const MatchingInstance& m,
                                                       int cap = kDefaultOracleCap);

struct DecideResult {
    bool feasible = false;
    std::optional<std::pair<CombinatorialDrawing, BundlingPlan>> witness;
    SearchStats stats;
};

// True iff some enumerated embedding admits a partition of the crossings
// into at most k valid bundled crossings; reports the lexicographically
// smallest witness.
DecideResult decide_bc(const MatchingInstance& m, long long k, int cap = kDefaultOracleCap);

// Exact fixed-order bundled crossing number: simplifies, finds the least
// feasible k, and reinserts the removed edges into the witness.
OracleResult exact_bc(const MatchingInstance& m, int cap = kDefaultOracleCap);

}  // namespace bcross
