#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bcross {

// Thrown for contract violations named in the module interfaces
// ("adjacent edges", "non-planar drawing", "unknown crossing", ...).
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

using Edge = std::pair<int, int>;  // unordered vertex pair

// Vertices on a circle with a fixed circular order and chord edges.
// order[p] is the vertex id occupying circular position p.
struct CircularInstance {
    int n = 0;
    std::vector<int> order;
    std::vector<Edge> edges;

    CircularInstance() = default;
    CircularInstance(int n_, std::vector<int> order_, std::vector<Edge> edges_)
        : n(n_), order(std::move(order_)), edges(std::move(edges_)) {}

    static CircularInstance identity(int n, std::vector<Edge> edges);

    // position_of()[v] = circular position of vertex v.
    std::vector<int> position_of() const;
    int degree(int v) const;
    bool is_matching() const;

    // Checks the type invariants; throws std::invalid_argument on violation.
    void check() const;
};

// A matching in position space: base.order is the identity permutation and
// every slot is incident to at most one chord. Chords are stored with
// endpoints (a, b), a < b, in position coordinates. origin_map[slot] is the
// original vertex the slot was expanded from.
struct MatchingInstance {
    CircularInstance base;
    std::vector<int> origin_map;

    int slots() const { return base.n; }
    const std::vector<Edge>& chords() const { return base.edges; }
    void check() const;
};

// True iff the four endpoints of e1, e2 alternate around the circle.
// Throws error("adjacent edges") when the edges share an endpoint.
bool interleaves(const Edge& e1, const Edge& e2, const CircularInstance& inst);

// Interleaving test for normalized chords (a < b) in position space.
bool chords_interleave(const Edge& c1, const Edge& c2);

// Expands every vertex of degree d into max(1, d) consecutive slots and
// reattaches edges as a fan so that no two edges sharing an original vertex
// interleave. Output is in position space (identity order).
MatchingInstance to_matching(const CircularInstance& inst);

// Exactly the interleaving chord pairs, as sorted pairs of edge indices.
std::vector<std::pair<int, int>> forced_crossing_pairs(const MatchingInstance& m);

// Convenience constructor used throughout tests and tools: a matching
// instance directly from chords on n slots (identity order, identity origin).
MatchingInstance matching_from_chords(int n, std::vector<Edge> chords);

}  // namespace bcross
