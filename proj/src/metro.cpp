#include "bcross/metro.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "bcross/bounds.hpp"
#include "bcross/simplify.hpp"

namespace bcross {

MetroInstance make_metro(int n, std::vector<std::pair<int, int>> edges,
                         std::vector<std::pair<int, int>> lines) {
    MetroInstance mi;
    mi.n = n;
    mi.tree_edges = std::move(edges);
    mi.rotation.resize(n);
    for (int ei = 0; ei < static_cast<int>(mi.tree_edges.size()); ++ei) {
        const auto& [u, v] = mi.tree_edges[ei];
        if (u < 0 || u >= n || v < 0 || v >= n) throw error("unknown edge");
        mi.rotation[u].push_back(ei);
        mi.rotation[v].push_back(ei);
    }
    mi.lines = std::move(lines);
    return mi;
}

void MetroInstance::check() const {
    if (n <= 0) throw error("empty tree");
    if (static_cast<int>(tree_edges.size()) != n - 1) throw error("not a tree");
    if (static_cast<int>(rotation.size()) != n) throw error("rotation length differs from n");
    std::vector<int> seen_deg(n, 0);
    for (const auto& [u, v] : tree_edges) {
        if (u < 0 || u >= n || v < 0 || v >= n || u == v) throw error("not a tree");
        ++seen_deg[u];
        ++seen_deg[v];
    }
    for (int v = 0; v < n; ++v) {
        if (static_cast<int>(rotation[v].size()) != seen_deg[v])
            throw error("rotation inconsistent with edges");
        std::set<int> uniq(rotation[v].begin(), rotation[v].end());
        if (uniq.size() != rotation[v].size()) throw error("rotation inconsistent with edges");
        for (int ei : rotation[v]) {
            if (ei < 0 || ei >= static_cast<int>(tree_edges.size()))
                throw error("rotation inconsistent with edges");
            if (tree_edges[ei].first != v && tree_edges[ei].second != v)
                throw error("rotation inconsistent with edges");
        }
    }
    // Connectivity; with n-1 edges this certifies a tree.
    std::vector<bool> visited(n, false);
    std::queue<int> bfs;
    bfs.push(0);
    visited[0] = true;
    int reached = 1;
    while (!bfs.empty()) {
        const int v = bfs.front();
        bfs.pop();
        for (int ei : rotation[v]) {
            const int w = tree_edges[ei].first == v ? tree_edges[ei].second : tree_edges[ei].first;
            if (!visited[w]) {
                visited[w] = true;
                ++reached;
                bfs.push(w);
            }
        }
    }
    if (reached != n) throw error("not a tree");

    std::set<int> used_leaves;
    for (const auto& [a, b] : lines) {
        if (a < 0 || a >= n || b < 0 || b >= n) throw error("unknown line");
        if (a == b || !is_leaf(a) || !is_leaf(b)) throw error("non-leaf terminal");
        if (!used_leaves.insert(a).second || !used_leaves.insert(b).second)
            throw error("terminal shared by two lines");
    }
}

std::vector<int> MetroInstance::clockwise_leaves() const {
    std::vector<int> leaves;
    if (n == 1) return leaves;
    int start = -1;
    for (int v = 0; v < n; ++v)
        if (is_leaf(v)) {
            start = v;
            break;
        }
    if (start < 0) return leaves;

    leaves.push_back(start);
    int edge = rotation[start][0];
    int from = start;
    for (;;) {
        const int to = tree_edges[edge].first == from ? tree_edges[edge].second
                                                      : tree_edges[edge].first;
        if (to == start) break;
        if (is_leaf(to)) leaves.push_back(to);
        const auto& rot = rotation[to];
        const int idx = static_cast<int>(std::find(rot.begin(), rot.end(), edge) - rot.begin());
        edge = rot[(idx + 1) % rot.size()];
        from = to;
    }
    return leaves;
}

std::vector<std::vector<int>> MetroInstance::line_paths() const {
    std::vector<std::vector<int>> paths;
    for (const auto& [a, b] : lines) {
        // BFS from a to b.
        std::vector<int> prev(n, -1);
        std::queue<int> bfs;
        bfs.push(a);
        prev[a] = a;
        while (!bfs.empty()) {
            const int v = bfs.front();
            bfs.pop();
            if (v == b) break;
            for (int ei : rotation[v]) {
                const int w =
                    tree_edges[ei].first == v ? tree_edges[ei].second : tree_edges[ei].first;
                if (prev[w] < 0) {
                    prev[w] = v;
                    bfs.push(w);
                }
            }
        }
        std::vector<int> path;
        for (int v = b; v != a; v = prev[v]) path.push_back(v);
        path.push_back(a);
        std::reverse(path.begin(), path.end());
        paths.push_back(std::move(path));
    }
    return paths;
}

std::vector<std::vector<int>> MetroInstance::lines_on_edges() const {
    std::map<std::pair<int, int>, int> edge_id;
    for (int ei = 0; ei < static_cast<int>(tree_edges.size()); ++ei) {
        edge_id[tree_edges[ei]] = ei;
        edge_id[{tree_edges[ei].second, tree_edges[ei].first}] = ei;
    }
    std::vector<std::vector<int>> on(tree_edges.size());
    const auto paths = line_paths();
    for (int li = 0; li < static_cast<int>(paths.size()); ++li)
        for (std::size_t i = 0; i + 1 < paths[li].size(); ++i)
            on[edge_id.at({paths[li][i], paths[li][i + 1]})].push_back(li);
    return on;
}

std::vector<int> apply_block_move(const std::vector<int>& order, int i, int j, int k) {
    const int len = static_cast<int>(order.size());
    if (!(1 <= i && i <= j && j < k && k <= len)) throw error("bad block move");
    std::vector<int> out = order;
    std::rotate(out.begin() + (i - 1), out.begin() + j, out.begin() + k);
    return out;
}

long long LineOrders::total_block_crossings() const {
    long long total = 0;
    for (const EdgeLineOrders& e : edges) total += static_cast<long long>(e.moves.size());
    return total;
}

namespace {

// Line ends at the v side of edge ei, read clockwise around v. Orders are
// stored left-to-right walking tail to head, which reads clockwise at the
// tail and counterclockwise at the head.
std::vector<int> end_cw(const MetroInstance& mi, const EdgeLineOrders& eo, int ei, int v) {
    if (eo.orders.empty()) return {};
    if (mi.tree_edges[ei].first == v) return eo.orders.front();
    std::vector<int> rev = eo.orders.back();
    std::reverse(rev.begin(), rev.end());
    return rev;
}

// Interleaving test over the clockwise word of line ends around a vertex.
// Lines sharing an edge must not cross inside the node; lines meeting only
// at the vertex may pass through each other there (the edge crossings model
// counts nothing for them).
bool cyclic_pairs_cross(const std::vector<int>& word,
                        const std::function<bool(int, int)>& shares_edge) {
    std::map<int, std::vector<int>> occur;
    for (int i = 0; i < static_cast<int>(word.size()); ++i) occur[word[i]].push_back(i);
    std::vector<std::pair<int, std::pair<int, int>>> pairs;
    for (const auto& [line, at] : occur)
        if (at.size() == 2) pairs.push_back({line, {at[0], at[1]}});
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            if (!shares_edge(pairs[a].first, pairs[b].first)) continue;
            const auto& pa = pairs[a].second;
            const auto& pb = pairs[b].second;
            const bool in1 = pa.first < pb.first && pb.first < pa.second;
            const bool in2 = pa.first < pb.second && pb.second < pa.second;
            if (in1 != in2) return true;
        }
    return false;
}

// Pairwise shared-edge relation of the lines.
std::vector<std::vector<bool>> shared_edge_matrix(const MetroInstance& mi) {
    const auto on_edges = mi.lines_on_edges();
    std::vector<std::vector<bool>> shares(mi.lines.size(),
                                          std::vector<bool>(mi.lines.size(), false));
    for (const auto& lines : on_edges)
        for (std::size_t a = 0; a < lines.size(); ++a)
            for (std::size_t b = a + 1; b < lines.size(); ++b)
                shares[lines[a]][lines[b]] = shares[lines[b]][lines[a]] = true;
    return shares;
}

}  // namespace

MetroValidation validate_line_orders(const MetroInstance& mi, const LineOrders& lo) {
    mi.check();
    if (lo.edges.size() != mi.tree_edges.size()) throw error("unknown edge");
    const int n_lines = static_cast<int>(mi.lines.size());
    for (const EdgeLineOrders& eo : lo.edges)
        for (const auto& ord : eo.orders)
            for (int l : ord)
                if (l < 0 || l >= n_lines) throw error("unknown line");

    MetroValidation report;
    const auto on_edges = mi.lines_on_edges();

    for (int ei = 0; ei < static_cast<int>(mi.tree_edges.size()); ++ei) {
        const EdgeLineOrders& eo = lo.edges[ei];
        const std::string tag = "edge " + std::to_string(ei);
        if (eo.orders.empty()) {
            report.add("missing orders", tag);
            continue;
        }
        const std::set<int> expect(on_edges[ei].begin(), on_edges[ei].end());
        for (const auto& ord : eo.orders) {
            const std::set<int> got(ord.begin(), ord.end());
            if (got != expect || got.size() != ord.size()) {
                report.add("not a line permutation", tag);
                break;
            }
        }
        if (eo.moves.size() + 1 != eo.orders.size()) {
            report.add("bad move", tag + ": move count");
            continue;
        }
        for (std::size_t s = 0; s < eo.moves.size(); ++s) {
            try {
                const auto next =
                    apply_block_move(eo.orders[s], eo.moves[s][0], eo.moves[s][1], eo.moves[s][2]);
                if (next != eo.orders[s + 1]) report.add("bad move", tag);
            } catch (const error&) {
                report.add("bad move", tag);
            }
        }
        report.total_block_crossings += static_cast<long long>(eo.moves.size());
    }
    if (!report.ok) return report;

    // Vertex consistency: around every vertex the ends of edge-sharing lines,
    // read clockwise, must pair up without interleaving.
    const auto shares = shared_edge_matrix(mi);
    const auto shares_edge = [&](int a, int b) { return shares[a][b]; };
    for (int v = 0; v < mi.n; ++v) {
        if (mi.rotation[v].size() < 2) continue;
        std::vector<int> word;
        for (int ei : mi.rotation[v]) {
            const auto ends = end_cw(mi, lo.edges[ei], ei, v);
            word.insert(word.end(), ends.begin(), ends.end());
        }
        if (cyclic_pairs_cross(word, shares_edge))
            report.add("orders inconsistent", "vertex " + std::to_string(v));
    }
    return report;
}

CircularInstance lines_to_chords(const MetroInstance& mi) {
    mi.check();
    const std::vector<int> leaves = mi.clockwise_leaves();
    std::map<int, int> pos;
    for (int i = 0; i < static_cast<int>(leaves.size()); ++i) pos[leaves[i]] = i;
    std::vector<Edge> chords;
    for (const auto& [a, b] : mi.lines) {
        auto ia = pos.find(a), ib = pos.find(b);
        if (ia == pos.end() || ib == pos.end()) throw error("non-leaf terminal");
        chords.push_back({std::min(ia->second, ib->second), std::max(ia->second, ib->second)});
    }
    return CircularInstance::identity(static_cast<int>(leaves.size()), chords);
}

MetroSimplifyResult simplify_lines(const MetroInstance& mi) {
    const CircularInstance chords = lines_to_chords(mi);
    const MatchingInstance m = matching_from_chords(chords.n, chords.edges);
    const SimplifyResult s = simplify(m);

    // Chord i corresponds to line i; map removal records back to line ids.
    std::map<Edge, int> line_of_chord;
    for (int li = 0; li < static_cast<int>(chords.edges.size()); ++li)
        line_of_chord[m.chords()[li]] = li;

    MetroSimplifyResult out;
    for (const RemovalRecord& r : s.log.records) {
        MetroRemoval mr{};
        mr.kind = r.kind == RemovalRecord::Kind::Parallel ? MetroRemoval::Kind::Parallel
                                                          : MetroRemoval::Kind::CrossingFree;
        mr.removed_line = line_of_chord.at(r.removed);
        mr.kept_line = r.kind == RemovalRecord::Kind::Parallel ? line_of_chord.at(r.kept) : -1;
        out.log.push_back(mr);
    }
    std::set<int> removed;
    for (const MetroRemoval& r : out.log) removed.insert(r.removed_line);
    std::vector<std::pair<int, int>> kept_lines;
    for (int li = 0; li < static_cast<int>(mi.lines.size()); ++li)
        if (!removed.count(li)) {
            out.surviving_lines.push_back(li);
            kept_lines.push_back(mi.lines[li]);
        }
    out.reduced = make_metro(mi.n, mi.tree_edges, kept_lines);
    return out;
}

long long bcm_lower_bound(const MetroInstance& mi) {
    return lower_bound_fixed(static_cast<long long>(simplify_lines(mi).surviving_lines.size()));
}

namespace {

// Incremental greedy state: clockwise line-end readings at both ends of
// every edge, kept vertex-consistent after each insertion.
struct GreedyState {
    const MetroInstance& mi;
    std::vector<std::array<std::vector<int>, 2>> ends;  // [edge][0=tail,1=head]

    explicit GreedyState(const MetroInstance& m)
        : mi(m), ends(m.tree_edges.size()) {}

    int side(int ei, int v) const { return mi.tree_edges[ei].first == v ? 0 : 1; }

    std::vector<int> word_at(int v) const {
        std::vector<int> word;
        for (int ei : mi.rotation[v]) {
            const auto& seq = ends[ei][side(ei, v)];
            word.insert(word.end(), seq.begin(), seq.end());
        }
        return word;
    }

    // Crossings on edge ei: pairs ordered the same way in both clockwise
    // readings swap between the walked endpoints.
    long long crossings_on(int ei) const {
        const auto& a = ends[ei][0];
        const auto& b = ends[ei][1];
        std::map<int, int> rank;
        for (int i = 0; i < static_cast<int>(b.size()); ++i) rank[b[i]] = i;
        long long cnt = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (rank.at(a[i]) < rank.at(a[j])) ++cnt;
        return cnt;
    }
};

template <typename T>
std::vector<T> with_inserted(const std::vector<T>& v, std::size_t at, const T& value) {
    std::vector<T> out = v;
    out.insert(out.begin() + at, value);
    return out;
}

}  // namespace

LineOrders order_lines_greedy(const MetroInstance& mi) {
    mi.check();
    const auto paths = mi.line_paths();
    const std::vector<int> leaves = mi.clockwise_leaves();
    std::map<int, int> leaf_pos;
    for (int i = 0; i < static_cast<int>(leaves.size()); ++i) leaf_pos[leaves[i]] = i;
    std::map<std::pair<int, int>, int> edge_id;
    for (int ei = 0; ei < static_cast<int>(mi.tree_edges.size()); ++ei) {
        edge_id[mi.tree_edges[ei]] = ei;
        edge_id[{mi.tree_edges[ei].second, mi.tree_edges[ei].first}] = ei;
    }

    std::vector<int> insertion(mi.lines.size());
    std::iota(insertion.begin(), insertion.end(), 0);
    std::sort(insertion.begin(), insertion.end(), [&](int a, int b) {
        const auto ka = std::minmax(leaf_pos.at(mi.lines[a].first), leaf_pos.at(mi.lines[a].second));
        const auto kb = std::minmax(leaf_pos.at(mi.lines[b].first), leaf_pos.at(mi.lines[b].second));
        return ka < kb;
    });

    GreedyState st(mi);
    const auto shares = shared_edge_matrix(mi);
    const auto shares_edge = [&](int a, int b) { return shares[a][b]; };
    for (int l : insertion) {
        const std::vector<int>& path = paths[l];
        std::vector<int> path_edges;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            path_edges.push_back(edge_id.at({path[i], path[i + 1]}));

        // Leaf ends carry exactly this line.
        st.ends[path_edges.front()][st.side(path_edges.front(), path.front())] = {l};
        st.ends[path_edges.back()][st.side(path_edges.back(), path.back())] = {l};

        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            const int v = path[i];
            const int in_edge = path_edges[i - 1];
            const int out_edge = path_edges[i];
            const int in_side = st.side(in_edge, v);
            const int out_side = st.side(out_edge, v);
            const auto in_before = st.ends[in_edge][in_side];
            const auto out_before = st.ends[out_edge][out_side];

            long long best_score = -1;
            std::pair<std::size_t, std::size_t> best{0, 0};
            for (std::size_t si = 0; si <= in_before.size(); ++si) {
                st.ends[in_edge][in_side] = with_inserted(in_before, si, l);
                for (std::size_t so = 0; so <= out_before.size(); ++so) {
                    st.ends[out_edge][out_side] = with_inserted(out_before, so, l);
                    if (cyclic_pairs_cross(st.word_at(v), shares_edge)) continue;
                    const long long score = st.crossings_on(in_edge);
                    if (best_score < 0 || score < best_score) {
                        best_score = score;
                        best = {si, so};
                    }
                }
            }
            if (best_score < 0) throw error("greedy insertion failed");
            st.ends[in_edge][in_side] = with_inserted(in_before, best.first, l);
            st.ends[out_edge][out_side] = with_inserted(out_before, best.second, l);
        }
    }

    // Per-edge move sequences from the tail order to the head order: pull
    // the next wanted line to its place as one block exchange.
    LineOrders lo;
    lo.edges.resize(mi.tree_edges.size());
    for (int ei = 0; ei < static_cast<int>(mi.tree_edges.size()); ++ei) {
        std::vector<int> start = st.ends[ei][0];
        std::vector<int> goal = st.ends[ei][1];
        std::reverse(goal.begin(), goal.end());

        EdgeLineOrders eo;
        eo.orders.push_back(start);
        std::vector<int> cur = start;
        for (int p = 0; p < static_cast<int>(goal.size()); ++p) {
            const int q = static_cast<int>(std::find(cur.begin(), cur.end(), goal[p]) -
                                           cur.begin());
            if (q == p) continue;
            cur = apply_block_move(cur, p + 1, q, q + 1);
            eo.moves.push_back({p + 1, q, q + 1});
            eo.orders.push_back(cur);
        }
        lo.edges[ei] = std::move(eo);
    }
    return lo;
}

namespace {

std::vector<std::array<int, 3>> legal_moves(int len) {
    std::vector<std::array<int, 3>> moves;
    for (int i = 1; i <= len; ++i)
        for (int j = i; j < len; ++j)
            for (int k = j + 1; k <= len; ++k) moves.push_back({i, j, k});
    return moves;
}

}  // namespace

long long metro_oracle(const MetroInstance& mi, int cap) {
    mi.check();
    if (mi.lines.size() > 3) throw error("instance too large for oracle");
    const auto on_edges = mi.lines_on_edges();
    const int n_edges = static_cast<int>(mi.tree_edges.size());

    std::vector<int> multi;  // edges where moves are possible
    for (int ei = 0; ei < n_edges; ++ei)
        if (on_edges[ei].size() >= 2) multi.push_back(ei);

    LineOrders lo;
    lo.edges.resize(n_edges);
    for (int ei = 0; ei < n_edges; ++ei) {
        std::vector<int> base = on_edges[ei];
        std::sort(base.begin(), base.end());
        lo.edges[ei].orders = {base};
        lo.edges[ei].moves = {};
    }

    for (int budget = 0; budget <= cap; ++budget) {
        bool found = false;
        std::function<void(std::size_t, int)> assign = [&](std::size_t mi_idx, int remaining) {
            if (found) return;
            if (mi_idx == multi.size()) {
                if (remaining == 0 && validate_line_orders(mi, lo).ok) found = true;
                return;
            }
            const int ei = multi[mi_idx];
            std::vector<int> perm = on_edges[ei];
            std::sort(perm.begin(), perm.end());
            const auto moves = legal_moves(static_cast<int>(perm.size()));
            do {
                // Move sequences of every length up to the remaining budget,
                // skipping sequences that revisit an order.
                std::function<void(int)> extend = [&](int spent) {
                    if (found) return;
                    assign(mi_idx + 1, remaining - spent);
                    if (found || spent == remaining) return;
                    const std::vector<int> last = lo.edges[ei].orders.back();
                    for (const auto& mv : moves) {
                        const auto next = apply_block_move(last, mv[0], mv[1], mv[2]);
                        if (std::find(lo.edges[ei].orders.begin(), lo.edges[ei].orders.end(),
                                      next) != lo.edges[ei].orders.end())
                            continue;
                        lo.edges[ei].orders.push_back(next);
                        lo.edges[ei].moves.push_back(mv);
                        extend(spent + 1);
                        lo.edges[ei].orders.pop_back();
                        lo.edges[ei].moves.pop_back();
                        if (found) return;
                    }
                };
                lo.edges[ei].orders = {perm};
                lo.edges[ei].moves = {};
                extend(0);
            } while (!found && std::next_permutation(perm.begin(), perm.end()));
            if (!found) {
                std::vector<int> base = on_edges[ei];
                std::sort(base.begin(), base.end());
                lo.edges[ei].orders = {base};
                lo.edges[ei].moves = {};
            }
        };
        assign(0, budget);
        if (found) return budget;
    }
    throw error("cap");
}

}  // namespace bcross
