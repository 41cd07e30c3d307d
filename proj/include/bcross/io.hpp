#pragma once

#include <string>
#include <utility>

#include "bcross/bounds.hpp"
#include "bcross/drawing.hpp"
#include "bcross/instance.hpp"
#include "bcross/metro.hpp"

namespace bcross {

// Instance text format: `# comment`, `n <int>` (once, before any edge),
// optional `order i0 i1 ...`, repeated `edge u v`. Parse failures throw
// error with the offending line number in the message.
CircularInstance parse_instance(const std::string& text);
std::string format_instance(const CircularInstance& inst);

// Metro text format: `tree`, `n <int>`, repeated `treeedge u v` (rotation =
// listing order per vertex), repeated `line a b`.
MetroInstance parse_metro(const std::string& text);

// Drawing interchange document with fields n, order, edges, along_edge,
// bundles. Crossing ids are the canonical sorted edge-index pairs.
std::string drawing_to_json(const CombinatorialDrawing& d, const BundlingPlan& p);
std::pair<CombinatorialDrawing, BundlingPlan> drawing_from_json(const std::string& text);

// Full report document: the BoundsReport fields plus bundles, algorithm and
// an optional witness drawing. Rationals serialize as integers when whole,
// "p/q" strings otherwise; absent values as null. Keys are alphabetical.
std::string report_to_json(const BoundsReport& report, const std::string& algorithm,
                           const BundlingPlan* bundles, const CombinatorialDrawing* witness,
                           const BundlingPlan* witness_plan);

// LineOrders document: edges: [{u, v, orders, moves}] plus summary counts.
std::string line_orders_to_json(const MetroInstance& mi, const LineOrders& lo,
                                long long lower_bound, long long surviving,
                                std::optional<long long> oracle_optimum);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bcross
