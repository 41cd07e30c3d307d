#pragma once

#include <vector>

#include "bcross/drawing.hpp"
#include "bcross/instance.hpp"

namespace bcross {

// One removal step. Edges are recorded by their endpoints in the coordinate
// space of the instance the log belongs to.
struct RemovalRecord {
    enum class Kind { CrossingFree, Parallel };
    Kind kind;
    Edge removed;
    Edge kept;  // partner for Parallel records; unused otherwise
};

// Replayable removal history. slot_map sends each slot of the compacted
// simplified instance back to its slot in the original instance.
struct RemovalLog {
    int original_n = 0;
    std::vector<Edge> original_edges;  // original chords, normalized
    std::vector<RemovalRecord> records;
    std::vector<int> slot_map;

    bool empty() const { return records.empty(); }
};

struct SimplifyResult {
    MatchingInstance simplified;
    RemovalLog log;
};

// Iterates parallel-pair and crossing-free removals to a fixpoint and
// compacts unused slots away, so the simplified instance has exactly two
// slots per surviving edge.
SimplifyResult simplify(const MatchingInstance& m);

// Rebuilds the original matching instance a log was produced from.
MatchingInstance original_of(const RemovalLog& log);

// Lifts a plan for the simplified instance to the original instance: each
// Parallel edge joins every bundle of its kept partner on the same side;
// CrossingFree edges join nothing. The bundle count never changes.
// Throws error("log mismatch") when the plan references edges the log's
// simplified instance does not have.
BundlingPlan reinsert(const BundlingPlan& p, const RemovalLog& log);

// Extends a drawing of the simplified instance to a drawing of the original
// instance by routing each removed Parallel edge alongside its kept partner
// and re-adding CrossingFree edges without crossings.
CombinatorialDrawing extend_drawing(const CombinatorialDrawing& simplified, const RemovalLog& log);

}  // namespace bcross
