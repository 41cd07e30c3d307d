#pragma once

#include <boost/rational.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bcross/instance.hpp"

namespace bcross {

using Rat = boost::rational<long long>;

struct RatPoint {
    Rat x, y;
    friend bool operator==(const RatPoint& a, const RatPoint& b) {
        return a.x == b.x && a.y == b.y;
    }
};
using Polyline = std::vector<RatPoint>;

// Canonical crossing identifier: the sorted pair of edge indices. Valid
// because simple drawings have at most one crossing per edge pair.
using CrossingId = std::pair<int, int>;

inline CrossingId crossing_id(int e, int f) {
    return e < f ? CrossingId{e, f} : CrossingId{f, e};
}

// Per-edge ordered crossing sequences plus optional polyline geometry.
// along_edge[e] lists e's crossings from its lower-positioned endpoint to
// the other one.
struct CombinatorialDrawing {
    MatchingInstance instance;
    std::set<CrossingId> crossings;
    std::vector<std::vector<CrossingId>> along_edge;
    std::optional<std::vector<Polyline>> geometry;
};

// A pair of disjoint edge bundles together with the full grid of their
// crossings.
struct BundledCrossing {
    std::vector<int> bundle1;  // edge indices, sorted
    std::vector<int> bundle2;
    std::set<CrossingId> member_crossings;
};

// A partition of all crossings of a drawing into bundled crossings.
struct BundlingPlan {
    std::vector<BundledCrossing> bundles;
    std::map<CrossingId, int> assignment;

    static BundlingPlan from_bundles(std::vector<BundledCrossing> bundles);
};

// Interior faces of the planarization counted by degree. The outer face
// (bounded by the full boundary cycle) is excluded.
struct FaceCensus {
    std::map<int, long long> f;

    long long count(int k) const {
        auto it = f.find(k);
        return it == f.end() ? 0 : it->second;
    }
    long long total() const;
    // f3 - 4 - sum_{k>=5} (k-4) f_k; zero on simplified drawings.
    long long census_identity_residual() const;
};

// Planarization of a drawing: crossings become degree-4 vertices and the
// boundary cycle of circle slots is added.
struct Planarization {
    int n_vertices = 0;  // slots first, then one vertex per crossing
    int n_edges = 0;
    // faces as dart cycles; darts are (vertex, vertex, edge-id) triples kept
    // internal -- only the per-face summaries are exposed.
    struct Face {
        int degree = 0;
        std::vector<int> vertices;  // visited vertices, in walk order
        bool outer = false;
    };
    std::vector<Face> faces;
    std::map<CrossingId, int> crossing_vertex;  // crossing -> H vertex id

    bool has_quad_face(int v1, int v2, int v3, int v4) const;
};

// Traces the faces of the drawing's rotation system. Throws
// error("non-planar drawing") when the system is not disk-realizable
// (Euler characteristic != 2 or no face bounded by the full boundary cycle).
Planarization trace_planarization(const CombinatorialDrawing& d);

// Census of the interior faces of the planarization.
FaceCensus planarize(const CombinatorialDrawing& d);

// Checks the drawing invariants (crossing set equals the forced pairs,
// sequences consistent, rotation system disk-realizable). Throws on failure.
void check_drawing(const CombinatorialDrawing& d);

struct Violation {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(std::string code, std::string detail) {
        ok = false;
        violations.push_back({std::move(code), std::move(detail)});
    }
};

// Validates a bundling plan against a drawing: partition, full-grid,
// consecutiveness, order coherence, and the pseudodisk separation check
// (interior grid cells must be quadrilateral faces of the planarization).
// Throws error("unknown crossing") on dangling crossing ids.
ValidationReport validate_bundling(const CombinatorialDrawing& d, const BundlingPlan& p);

}  // namespace bcross
