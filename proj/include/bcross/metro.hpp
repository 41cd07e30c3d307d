#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bcross/drawing.hpp"
#include "bcross/instance.hpp"

namespace bcross {

// Plane tree with metro lines between leaves. The rotation at each vertex is
// the clockwise order of its incident edges; lines satisfy the path terminal
// property (each ends at two distinct leaves, one line per leaf).
struct MetroInstance {
    int n = 0;
    std::vector<std::pair<int, int>> tree_edges;  // directed as listed (u, v)
    std::vector<std::vector<int>> rotation;       // vertex -> incident edge ids, clockwise
    std::vector<std::pair<int, int>> lines;       // leaf terminal pairs

    void check() const;
    bool is_leaf(int v) const { return rotation[v].size() == 1; }

    // Leaves in clockwise plane order, starting at the smallest leaf id.
    std::vector<int> clockwise_leaves() const;
    // Vertex sequence of each line's tree path, terminal to terminal.
    std::vector<std::vector<int>> line_paths() const;
    // Line ids passing through each edge.
    std::vector<std::vector<int>> lines_on_edges() const;
};

// Builds a MetroInstance with rotations taken from the edge listing order.
MetroInstance make_metro(int n, std::vector<std::pair<int, int>> edges,
                         std::vector<std::pair<int, int>> lines);

// Line orders along one directed edge: t+1 orderings connected by t block
// moves, each order read left to right when walking the edge tail to head.
struct EdgeLineOrders {
    std::vector<std::vector<int>> orders;
    std::vector<std::array<int, 3>> moves;  // (i, j, k), 1-based
};

struct LineOrders {
    std::vector<EdgeLineOrders> edges;  // parallel to MetroInstance.tree_edges

    long long total_block_crossings() const;
};

// Exchange of the consecutive blocks order[i..j] and order[j+1..k], 1-based.
// Throws error("bad block move") unless 1 <= i <= j < k <= length.
std::vector<int> apply_block_move(const std::vector<int>& order, int i, int j, int k);

struct MetroValidation {
    bool ok = true;
    std::vector<Violation> violations;
    long long total_block_crossings = 0;

    void add(std::string code, std::string detail) {
        ok = false;
        violations.push_back({std::move(code), std::move(detail)});
    }
};

// Checks that every edge carries orderings of exactly its lines, that
// consecutive orderings differ by the declared block move, and that the
// orders are consistent at every vertex (lines may cross on an edge but
// never in a node). Throws error("unknown line") / error("unknown edge")
// for out-of-range ids.
MetroValidation validate_line_orders(const MetroInstance& mi, const LineOrders& lo);

struct MetroRemoval {
    enum class Kind { CrossingFree, Parallel };
    Kind kind;
    int removed_line;
    int kept_line;  // -1 for CrossingFree
};

struct MetroSimplifyResult {
    MetroInstance reduced;
    std::vector<MetroRemoval> log;       // line ids refer to the input instance
    std::vector<int> surviving_lines;    // input line ids, in order
};

// Removes lines that run parallel to a kept line (both terminal pairs
// adjacent in the residual clockwise leaf order, no forced crossing) and
// lines forced to cross nothing, iterated to a fixpoint.
MetroSimplifyResult simplify_lines(const MetroInstance& mi);

// Interprets the metro lines as chords of the clockwise leaf circle.
// Throws error("non-leaf terminal") when a line ends at an inner vertex.
CircularInstance lines_to_chords(const MetroInstance& mi);

// ceil(surviving lines / 16).
long long bcm_lower_bound(const MetroInstance& mi);

// Validator-correct line ordering built by inserting lines one at a time;
// no approximation factor is claimed.
LineOrders order_lines_greedy(const MetroInstance& mi);

// Minimum total block crossings by iterative deepening over per-edge block
// move sequences; instances with more than three lines are rejected.
// Throws error("cap") when no feasible solution exists within the budget.
long long metro_oracle(const MetroInstance& mi, int cap = 8);

}  // namespace bcross
