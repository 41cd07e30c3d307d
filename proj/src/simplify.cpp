#include "bcross/simplify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace bcross {

namespace {

// Circular adjacency within the residual endpoint sequence: endpoints of
// removed edges and slots that never carried an edge are both skipped.
struct Residual {
    std::vector<int> points;  // sorted endpoint positions of surviving edges

    bool adjacent(int x, int y) const {
        if (points.size() < 2) return false;
        auto ix = std::lower_bound(points.begin(), points.end(), x);
        auto iy = std::lower_bound(points.begin(), points.end(), y);
        const long long dx = ix - points.begin();
        const long long dy = iy - points.begin();
        const long long s = static_cast<long long>(points.size());
        return (dx + 1) % s == dy || (dy + 1) % s == dx;
    }
};

Residual residual_of(const std::vector<Edge>& survivors) {
    Residual r;
    for (const Edge& e : survivors) {
        r.points.push_back(e.first);
        r.points.push_back(e.second);
    }
    std::sort(r.points.begin(), r.points.end());
    return r;
}

bool parallel_pair(const Edge& a, const Edge& b, const Residual& res) {
    if (chords_interleave(a, b)) return false;
    const bool same_orientation = res.adjacent(a.first, b.first) && res.adjacent(a.second, b.second);
    const bool opposite = res.adjacent(a.first, b.second) && res.adjacent(a.second, b.first);
    return same_orientation || opposite;
}

bool crossing_free(std::size_t i, const std::vector<Edge>& edges,
                   const std::vector<bool>& alive) {
    for (std::size_t j = 0; j < edges.size(); ++j)
        if (j != i && alive[j] && chords_interleave(edges[i], edges[j])) return false;
    return true;
}

}  // namespace

SimplifyResult simplify(const MatchingInstance& m) {
    m.check();
    const std::vector<Edge>& edges = m.chords();
    std::vector<bool> alive(edges.size(), true);

    SimplifyResult out;
    out.log.original_n = m.slots();
    out.log.original_edges = edges;

    for (;;) {
        std::vector<Edge> survivors;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (alive[i]) survivors.push_back(edges[i]);
        const Residual res = residual_of(survivors);

        int removed = -1;
        RemovalRecord rec{};
        for (std::size_t i = 0; i < edges.size() && removed < 0; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                if (!alive[j]) continue;
                if (parallel_pair(edges[i], edges[j], res)) {
                    rec = {RemovalRecord::Kind::Parallel, edges[j], edges[i]};
                    removed = static_cast<int>(j);
                    break;
                }
            }
        }
        if (removed < 0) {
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (alive[i] && crossing_free(i, edges, alive)) {
                    rec = {RemovalRecord::Kind::CrossingFree, edges[i], Edge{-1, -1}};
                    removed = static_cast<int>(i);
                    break;
                }
            }
        }
        if (removed < 0) break;
        alive[removed] = false;
        out.log.records.push_back(rec);
    }

    // Compact surviving endpoints into consecutive slots.
    std::vector<int> used;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!alive[i]) continue;
        used.push_back(edges[i].first);
        used.push_back(edges[i].second);
    }
    std::sort(used.begin(), used.end());
    std::map<int, int> new_slot;
    for (std::size_t s = 0; s < used.size(); ++s) new_slot[used[s]] = static_cast<int>(s);

    out.log.slot_map = used;
    out.simplified.base.n = static_cast<int>(used.size());
    out.simplified.base.order.resize(used.size());
    std::iota(out.simplified.base.order.begin(), out.simplified.base.order.end(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (alive[i])
            out.simplified.base.edges.push_back(
                Edge{new_slot[edges[i].first], new_slot[edges[i].second]});
    for (int s : used) out.simplified.origin_map.push_back(m.origin_map[s]);
    out.simplified.check();
    return out;
}

MatchingInstance original_of(const RemovalLog& log) {
    MatchingInstance m;
    m.base = CircularInstance::identity(log.original_n, log.original_edges);
    m.origin_map.resize(log.original_n);
    std::iota(m.origin_map.begin(), m.origin_map.end(), 0);
    m.check();
    return m;
}

namespace {

// Surviving edges in original coordinates, in simplified index order.
std::vector<Edge> surviving_edges(const RemovalLog& log) {
    std::vector<Edge> survivors;
    std::multiset<Edge> removed_set;
    for (const RemovalRecord& r : log.records) removed_set.insert(r.removed);
    for (const Edge& e : log.original_edges) {
        auto it = removed_set.find(e);
        if (it != removed_set.end())
            removed_set.erase(it);
        else
            survivors.push_back(e);
    }
    return survivors;
}

int index_of_edge(const std::vector<Edge>& edges, const Edge& e) {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i] == e) return static_cast<int>(i);
    throw error("log mismatch");
}

}  // namespace

BundlingPlan reinsert(const BundlingPlan& p, const RemovalLog& log) {
    const std::vector<Edge> survivors = surviving_edges(log);

    // Translate simplified edge indices to original indices.
    std::vector<int> orig_index(survivors.size());
    for (std::size_t i = 0; i < survivors.size(); ++i)
        orig_index[i] = index_of_edge(log.original_edges, survivors[i]);

    std::vector<BundledCrossing> bundles;
    for (const BundledCrossing& b : p.bundles) {
        BundledCrossing nb;
        auto translate = [&](const std::vector<int>& side) {
            std::vector<int> t;
            for (int e : side) {
                if (e < 0 || e >= static_cast<int>(orig_index.size())) throw error("log mismatch");
                t.push_back(orig_index[e]);
            }
            std::sort(t.begin(), t.end());
            return t;
        };
        nb.bundle1 = translate(b.bundle1);
        nb.bundle2 = translate(b.bundle2);
        for (int e1 : nb.bundle1)
            for (int e2 : nb.bundle2) nb.member_crossings.insert(crossing_id(e1, e2));
        if (nb.member_crossings.size() != b.member_crossings.size()) throw error("log mismatch");
        bundles.push_back(std::move(nb));
    }

    // Newest removals first: each Parallel edge joins its partner's bundles.
    for (auto it = log.records.rbegin(); it != log.records.rend(); ++it) {
        if (it->kind != RemovalRecord::Kind::Parallel) continue;
        const int r = index_of_edge(log.original_edges, it->removed);
        const int k = index_of_edge(log.original_edges, it->kept);
        for (BundledCrossing& b : bundles) {
            const bool in1 = std::binary_search(b.bundle1.begin(), b.bundle1.end(), k);
            const bool in2 = std::binary_search(b.bundle2.begin(), b.bundle2.end(), k);
            if (!in1 && !in2) continue;
            std::vector<int>& side = in1 ? b.bundle1 : b.bundle2;
            const std::vector<int>& other = in1 ? b.bundle2 : b.bundle1;
            side.insert(std::upper_bound(side.begin(), side.end(), r), r);
            for (int e : other) b.member_crossings.insert(crossing_id(r, e));
        }
    }
    return BundlingPlan::from_bundles(std::move(bundles));
}

CombinatorialDrawing extend_drawing(const CombinatorialDrawing& simplified,
                                    const RemovalLog& log) {
    check_drawing(simplified);
    const std::vector<Edge> survivors = surviving_edges(log);
    if (simplified.instance.chords().size() != survivors.size()) throw error("log mismatch");
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        const Edge& c = simplified.instance.chords()[i];
        if (c.first >= static_cast<int>(log.slot_map.size()) ||
            c.second >= static_cast<int>(log.slot_map.size()))
            throw error("log mismatch");
        if (Edge{log.slot_map[c.first], log.slot_map[c.second]} != survivors[i])
            throw error("log mismatch");
    }

    CombinatorialDrawing d;
    d.instance = original_of(log);
    const std::vector<Edge>& edges = log.original_edges;
    d.along_edge.assign(edges.size(), {});

    std::vector<bool> active(edges.size(), false);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        const int oi = index_of_edge(edges, survivors[i]);
        active[oi] = true;
        for (const CrossingId& c : simplified.along_edge[i]) {
            const int a = index_of_edge(edges, survivors[c.first]);
            const int b = index_of_edge(edges, survivors[c.second]);
            d.along_edge[oi].push_back(crossing_id(a, b));
        }
    }
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        for (const CrossingId& c : d.along_edge[e])
            if (c.first == e) d.crossings.insert(c);  // insert once per crossing

    auto find_in = [&](std::vector<CrossingId>& seq, const CrossingId& c) {
        return std::find(seq.begin(), seq.end(), c);
    };

    for (auto it = log.records.rbegin(); it != log.records.rend(); ++it) {
        const int r = index_of_edge(edges, it->removed);
        if (it->kind == RemovalRecord::Kind::CrossingFree) {
            for (int e = 0; e < static_cast<int>(edges.size()); ++e)
                if (active[e] && chords_interleave(edges[r], edges[e]))
                    throw error("log mismatch");
            active[r] = true;
            continue;
        }

        const int k = index_of_edge(edges, it->kept);
        if (!active[k]) throw error("log mismatch");
        const Edge rc = edges[r];
        const Edge kc = edges[k];
        const bool nested_inside = kc.first < rc.first && rc.second < kc.second;
        const bool nested_outside = rc.first < kc.first && kc.second < rc.second;
        const bool sibling = !nested_inside && !nested_outside;

        // The removed edge runs alongside its partner: same partner order,
        // reversed when it occupies the complementary arc.
        std::vector<CrossingId> k_seq = d.along_edge[k];
        if (sibling) std::reverse(k_seq.begin(), k_seq.end());
        for (const CrossingId& c : k_seq) {
            const int g = c.first == k ? c.second : c.first;
            d.along_edge[r].push_back(crossing_id(r, g));
            d.crossings.insert(crossing_id(r, g));

            // Insert next to the partner's crossing on g, on the side the
            // copy is routed on.
            const int lower_g = edges[g].first;
            bool r_first;
            if (nested_inside)
                r_first = rc.first < lower_g && lower_g < rc.second;
            else
                r_first = !(kc.first < lower_g && lower_g < kc.second);
            auto pos = find_in(d.along_edge[g], crossing_id(g, k));
            if (pos == d.along_edge[g].end()) throw error("log mismatch");
            d.along_edge[g].insert(r_first ? pos : pos + 1, crossing_id(r, g));
        }
        active[r] = true;
    }
    check_drawing(d);
    return d;
}

}  // namespace bcross
