#include "bcross/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bcross {

CircularInstance CircularInstance::identity(int n, std::vector<Edge> edges) {
    CircularInstance inst;
    inst.n = n;
    inst.order.resize(n);
    std::iota(inst.order.begin(), inst.order.end(), 0);
    inst.edges = std::move(edges);
    return inst;
}

std::vector<int> CircularInstance::position_of() const {
    std::vector<int> pos(n, -1);
    for (int p = 0; p < n; ++p) {
        if (order[p] < 0 || order[p] >= n || pos[order[p]] != -1)
            throw std::invalid_argument("order is not a permutation");
        pos[order[p]] = p;
    }
    return pos;
}

int CircularInstance::degree(int v) const {
    int d = 0;
    for (const Edge& e : edges) d += (e.first == v) + (e.second == v);
    return d;
}

bool CircularInstance::is_matching() const {
    std::vector<int> deg(n, 0);
    for (const Edge& e : edges) {
        if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n) return false;
        ++deg[e.first];
        ++deg[e.second];
    }
    for (int d : deg)
        if (d > 1) return false;
    return true;
}

void CircularInstance::check() const {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("order length differs from n");
    (void)position_of();
    std::set<Edge> seen;
    for (const Edge& e : edges) {
        if (e.first == e.second) throw std::invalid_argument("self-loop");
        if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
            throw std::invalid_argument("vertex out of range");
        Edge key{std::min(e.first, e.second), std::max(e.first, e.second)};
        if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
    }
}

void MatchingInstance::check() const {
    base.check();
    for (int p = 0; p < base.n; ++p)
        if (base.order[p] != p) throw std::invalid_argument("matching not in position space");
    for (const Edge& e : base.edges)
        if (e.first >= e.second) throw std::invalid_argument("chord endpoints not normalized");
    if (!base.is_matching()) throw std::invalid_argument("slot of degree > 1");
    if (static_cast<int>(origin_map.size()) != base.n)
        throw std::invalid_argument("origin_map length differs from slot count");
}

bool chords_interleave(const Edge& c1, const Edge& c2) {
    // Normalized chords a<b alternate iff exactly one endpoint of c2 lies
    // strictly inside the interval (c1.first, c1.second).
    const bool in1 = c1.first < c2.first && c2.first < c1.second;
    const bool in2 = c1.first < c2.second && c2.second < c1.second;
    return in1 != in2;
}

bool interleaves(const Edge& e1, const Edge& e2, const CircularInstance& inst) {
    if (e1.first == e2.first || e1.first == e2.second || e1.second == e2.first ||
        e1.second == e2.second)
        throw error("adjacent edges");
    const std::vector<int> pos = inst.position_of();
    Edge c1{pos[e1.first], pos[e1.second]};
    Edge c2{pos[e2.first], pos[e2.second]};
    if (c1.first > c1.second) std::swap(c1.first, c1.second);
    if (c2.first > c2.second) std::swap(c2.first, c2.second);
    return chords_interleave(c1, c2);
}

MatchingInstance to_matching(const CircularInstance& inst) {
    inst.check();
    const std::vector<int> pos = inst.position_of();
    const int n = inst.n;

    std::vector<std::vector<int>> incident(n);  // vertex -> edge indices
    for (int ei = 0; ei < static_cast<int>(inst.edges.size()); ++ei) {
        incident[inst.edges[ei].first].push_back(ei);
        incident[inst.edges[ei].second].push_back(ei);
    }

    // Slot layout: walk positions in circular order, emitting max(1, deg)
    // consecutive slots per vertex.
    std::vector<int> slot_base(n, 0);
    MatchingInstance out;
    int next_slot = 0;
    for (int p = 0; p < n; ++p) {
        const int v = inst.order[p];
        slot_base[v] = next_slot;
        const int width = std::max<std::size_t>(1, incident[v].size());
        for (int s = 0; s < width; ++s) out.origin_map.push_back(v);
        next_slot += width;
    }
    out.base.n = next_slot;
    out.base.order.resize(next_slot);
    std::iota(out.base.order.begin(), out.base.order.end(), 0);

    // Fan order at v: the edge whose other endpoint is circularly farthest
    // (walking forward from v) takes the first slot of v's block; this is the
    // unique attachment with no interleaving among former-adjacent edges.
    std::vector<Edge> chords(inst.edges.size(), Edge{-1, -1});
    for (int v = 0; v < n; ++v) {
        std::vector<int> eis = incident[v];
        std::sort(eis.begin(), eis.end(), [&](int a, int b) {
            const Edge &ea = inst.edges[a], &eb = inst.edges[b];
            const int ua = ea.first == v ? ea.second : ea.first;
            const int ub = eb.first == v ? eb.second : eb.first;
            const int da = (pos[ua] - pos[v] + n) % n;
            const int db = (pos[ub] - pos[v] + n) % n;
            return da > db;
        });
        for (std::size_t s = 0; s < eis.size(); ++s) {
            const int slot = slot_base[v] + static_cast<int>(s);
            Edge& chord = chords[eis[s]];
            (chord.first < 0 ? chord.first : chord.second) = slot;
        }
    }
    for (Edge& c : chords)
        if (c.first > c.second) std::swap(c.first, c.second);
    out.base.edges = std::move(chords);
    out.check();
    return out;
}

std::vector<std::pair<int, int>> forced_crossing_pairs(const MatchingInstance& m) {
    std::vector<std::pair<int, int>> pairs;
    const auto& chords = m.chords();
    for (int i = 0; i < static_cast<int>(chords.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(chords.size()); ++j)
            if (chords_interleave(chords[i], chords[j])) pairs.emplace_back(i, j);
    return pairs;
}

MatchingInstance matching_from_chords(int n, std::vector<Edge> chords) {
    for (Edge& c : chords)
        if (c.first > c.second) std::swap(c.first, c.second);
    MatchingInstance m;
    m.base = CircularInstance::identity(n, std::move(chords));
    m.origin_map.resize(n);
    std::iota(m.origin_map.begin(), m.origin_map.end(), 0);
    m.check();
    return m;
}

}  // namespace bcross
