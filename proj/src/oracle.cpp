#include "bcross/oracle.hpp"

#include "bcross/bounds.hpp"

#include <algorithm>
#include <map>

namespace bcross {

namespace {

// Sub-drawing on the first `depth + 1` edges, with each assigned sequence
// filtered to the edges present. Used for incremental realizability pruning:
// removing curves keeps a drawing realizable, so an unrealizable prefix can
// never be completed.
CombinatorialDrawing prefix_drawing(const MatchingInstance& m,
                                    const std::vector<std::vector<int>>& assigned, int depth) {
    CombinatorialDrawing d;
    d.instance.base =
        CircularInstance::identity(m.slots(), std::vector<Edge>(m.chords().begin(),
                                                                m.chords().begin() + depth + 1));
    d.instance.origin_map = m.origin_map;
    d.along_edge.assign(depth + 1, {});
    for (int e = 0; e <= depth; ++e)
        for (int f : assigned[e])
            if (f <= depth) d.along_edge[e].push_back(crossing_id(e, f));
    for (const auto& pr : forced_crossing_pairs(d.instance)) d.crossings.insert(pr);
    return d;
}

bool realizable(const CombinatorialDrawing& d) {
    try {
        (void)trace_planarization(d);
        return true;
    } catch (const error&) {
        return false;
    }
}

}  // namespace

long long enumerate_embeddings(const MatchingInstance& m, int cap,
                               const std::function<void(const CombinatorialDrawing&)>& visit) {
    m.check();
    const int mm = static_cast<int>(m.chords().size());
    if (mm > cap) throw error("instance too large for oracle");

    std::vector<std::vector<int>> partners(mm);
    for (const auto& [e, f] : forced_crossing_pairs(m)) {
        partners[e].push_back(f);
        partners[f].push_back(e);
    }
    for (auto& p : partners) std::sort(p.begin(), p.end());

    std::vector<std::vector<int>> assigned(mm);
    long long count = 0;

    std::function<void(int)> dfs = [&](int depth) {
        if (depth == mm) {
            CombinatorialDrawing d;
            d.instance = m;
            d.along_edge.assign(mm, {});
            for (int e = 0; e < mm; ++e)
                for (int f : assigned[e]) d.along_edge[e].push_back(crossing_id(e, f));
            for (const auto& pr : forced_crossing_pairs(m)) d.crossings.insert(pr);
            ++count;
            visit(d);
            return;
        }
        std::vector<int> perm = partners[depth];
        std::sort(perm.begin(), perm.end());
        do {
            assigned[depth] = perm;
            if (realizable(prefix_drawing(m, assigned, depth))) dfs(depth + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    if (mm == 0) {
        CombinatorialDrawing d;
        d.instance = m;
        ++count;
        visit(d);
    } else {
        dfs(0);
    }
    return count;
}

std::vector<CombinatorialDrawing> enumerate_embeddings(const MatchingInstance& m, int cap) {
    std::vector<CombinatorialDrawing> out;
    enumerate_embeddings(m, cap, [&](const CombinatorialDrawing& d) { out.push_back(d); });
    return out;
}

namespace {

// Branch-and-bound partition search over one fixed drawing: crossings are
// taken in canonical order and placed into at most k grid-feasible groups,
// with monotone violations pruned as the groups grow.
struct PartitionSearch {
    const CombinatorialDrawing& d;
    long long k;
    std::vector<CrossingId> xs;            // canonical order
    std::map<CrossingId, int> assignment;  // crossing -> group
    std::map<CrossingId, int> required;    // grid-closure obligations
    struct Group {
        std::set<int> e1, e2;
        std::set<CrossingId> members;
    };
    std::vector<Group> groups;
    long long tested = 0;
    std::optional<BundlingPlan> found;

    PartitionSearch(const CombinatorialDrawing& drawing, long long budget)
        : d(drawing), k(budget) {
        xs.assign(d.crossings.begin(), d.crossings.end());
    }

    // No crossing assigned or required elsewhere may sit between two group
    // members along an edge; such a gap can never become consecutive.
    bool span_clean(const Group& g, int edge, int group_id) const {
        const auto& seq = d.along_edge[edge];
        int lo = -1, hi = -1;
        for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
            if (g.members.count(seq[i])) {
                if (lo < 0) lo = i;
                hi = i;
            }
        }
        for (int i = lo + 1; i < hi; ++i) {
            if (g.members.count(seq[i])) continue;
            auto it = assignment.find(seq[i]);
            if (it != assignment.end() && it->second != group_id) return false;
            auto rq = required.find(seq[i]);
            if (rq != required.end() && rq->second != group_id) return false;
        }
        return true;
    }

    // Attempts to place crossing c into group gi. Returns the requirements
    // newly forced by grid closure (for undo), or nullopt if infeasible.
    std::optional<std::vector<CrossingId>> try_add(int gi, const CrossingId& c) {
        Group& g = groups[gi];
        const int a = c.first, b = c.second;
        const int side_a = g.e1.count(a) ? 1 : g.e2.count(a) ? 2 : 0;
        const int side_b = g.e1.count(b) ? 1 : g.e2.count(b) ? 2 : 0;

        int put_a, put_b;
        if (g.members.empty()) {
            put_a = 1;
            put_b = 2;
        } else if (side_a == 0 && side_b == 0) {
            // In canonical order a completed grid always grows through a
            // shared edge; unconnected additions need not be explored.
            return std::nullopt;
        } else if (side_a != 0 && side_b != 0) {
            if (side_a == side_b) return std::nullopt;
            put_a = side_a;
            put_b = side_b;
        } else if (side_a != 0) {
            put_a = side_a;
            put_b = side_a == 1 ? 2 : 1;
        } else {
            put_b = side_b;
            put_a = side_b == 1 ? 2 : 1;
        }

        // Grid closure: a new edge must cross the whole opposite side and
        // none of those crossings may belong to another group.
        std::vector<CrossingId> forced;
        auto close_over = [&](int edge, int side) -> bool {
            const std::set<int>& opposite = side == 1 ? g.e2 : g.e1;
            for (int y : opposite) {
                if (edge == y) return false;
                const CrossingId need = crossing_id(edge, y);
                if (need == c) continue;
                if (!d.crossings.count(need)) return false;
                auto it = assignment.find(need);
                if (it != assignment.end()) {
                    if (it->second != gi) return false;
                    continue;
                }
                auto rq = required.find(need);
                if (rq != required.end()) {
                    if (rq->second != gi) return false;
                    continue;
                }
                forced.push_back(need);
            }
            return true;
        };
        const bool a_new = side_a == 0;
        const bool b_new = side_b == 0;
        if (a_new && !close_over(a, put_a)) return std::nullopt;
        if (b_new && !close_over(b, put_b)) return std::nullopt;

        (put_a == 1 ? g.e1 : g.e2).insert(a);
        (put_b == 1 ? g.e1 : g.e2).insert(b);
        g.members.insert(c);
        assignment[c] = gi;
        for (const CrossingId& f : forced) required[f] = gi;

        if (!span_clean(g, a, gi) || !span_clean(g, b, gi)) {
            undo_add(gi, c, forced);
            return std::nullopt;
        }
        return forced;
    }

    // Removes c and its forced requirements from group gi, dropping edges
    // that no longer participate in any member crossing.
    void undo_add(int gi, const CrossingId& c, const std::vector<CrossingId>& forced) {
        Group& g = groups[gi];
        g.members.erase(c);
        assignment.erase(c);
        for (const CrossingId& f : forced) required.erase(f);
        auto edge_used = [&](int e) {
            for (const CrossingId& mc : g.members)
                if (mc.first == e || mc.second == e) return true;
            return false;
        };
        if (!edge_used(c.first)) {
            g.e1.erase(c.first);
            g.e2.erase(c.first);
        }
        if (!edge_used(c.second)) {
            g.e1.erase(c.second);
            g.e2.erase(c.second);
        }
    }

    BundlingPlan to_plan() const {
        std::vector<BundledCrossing> bundles;
        for (const Group& g : groups) {
            BundledCrossing b;
            b.bundle1.assign(g.e1.begin(), g.e1.end());
            b.bundle2.assign(g.e2.begin(), g.e2.end());
            b.member_crossings = g.members;
            bundles.push_back(std::move(b));
        }
        return BundlingPlan::from_bundles(std::move(bundles));
    }

    bool search(std::size_t ci) {
        if (ci == xs.size()) {
            const BundlingPlan plan = to_plan();
            ++tested;
            if (validate_bundling(d, plan).ok) {
                found = plan;
                return true;
            }
            return false;
        }
        const CrossingId& c = xs[ci];
        auto rq = required.find(c);
        const int forced_group = rq == required.end() ? -1 : rq->second;

        for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
            if (forced_group >= 0 && gi != forced_group) continue;
            auto added = try_add(gi, c);
            if (added) {
                if (search(ci + 1)) return true;
                undo_add(gi, c, *added);
            }
        }
        if (forced_group < 0 && static_cast<long long>(groups.size()) < k) {
            groups.emplace_back();
            auto added = try_add(static_cast<int>(groups.size()) - 1, c);
            if (added) {
                if (search(ci + 1)) return true;
                undo_add(static_cast<int>(groups.size()) - 1, c, *added);
            }
            groups.pop_back();
        }
        return false;
    }
};

}  // namespace

namespace {

struct StopEnumeration {};

}  // namespace

DecideResult decide_bc(const MatchingInstance& m, long long k, int cap) {
    if (k < 0) throw error("negative budget");
    DecideResult result;
    // Kernel rule: a simplified instance with more than 16k edges cannot be
    // drawn with k bundled crossings.
    if (lower_bound_fixed(
            static_cast<long long>(simplify(m).simplified.chords().size())) > k)
        return result;
    try {
        enumerate_embeddings(m, cap, [&](const CombinatorialDrawing& d) {
            ++result.stats.embeddings_enumerated;
            PartitionSearch search(d, k);
            const bool ok = search.search(0);
            result.stats.partitions_tested += search.tested;
            if (ok) {
                result.feasible = true;
                result.witness = std::make_pair(d, *search.found);
                throw StopEnumeration{};
            }
        });
    } catch (const StopEnumeration&) {
    }
    return result;
}

OracleResult exact_bc(const MatchingInstance& m, int cap) {
    const SimplifyResult s = simplify(m);
    const long long max_k = static_cast<long long>(forced_crossing_pairs(s.simplified).size());

    // One enumeration pass serves every budget.
    OracleResult out;
    const std::vector<CombinatorialDrawing> drawings = enumerate_embeddings(s.simplified, cap);
    out.stats.embeddings_enumerated = static_cast<long long>(drawings.size());

    for (long long k = lower_bound_fixed(s.simplified.chords().size());; ++k) {
        for (const CombinatorialDrawing& d : drawings) {
            PartitionSearch search(d, k);
            const bool ok = search.search(0);
            out.stats.partitions_tested += search.tested;
            if (ok) {
                out.optimum = k;
                out.witness_drawing = extend_drawing(d, s.log);
                out.witness_plan = reinsert(*search.found, s.log);
                return out;
            }
        }
        if (k >= max_k) throw error("oracle search exhausted");  // one bundle per crossing works
    }
}

}  // namespace bcross
