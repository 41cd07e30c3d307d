#include "bcross/drawing.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace bcross {

BundlingPlan BundlingPlan::from_bundles(std::vector<BundledCrossing> bundles) {
    BundlingPlan plan;
    plan.bundles = std::move(bundles);
    for (int b = 0; b < static_cast<int>(plan.bundles.size()); ++b)
        for (const CrossingId& c : plan.bundles[b].member_crossings)
            plan.assignment.emplace(c, b);
    return plan;
}

long long FaceCensus::total() const {
    long long t = 0;
    for (const auto& [k, cnt] : f) t += cnt;
    return t;
}

long long FaceCensus::census_identity_residual() const {
    long long lhs = count(3);
    long long rhs = 4;
    for (const auto& [k, cnt] : f)
        if (k >= 5) rhs += static_cast<long long>(k - 4) * cnt;
    // Bigons break the identity as stated; surface them in the residual.
    return lhs + 2 * count(2) - rhs;
}

namespace {

struct HalfEdgeGraph {
    // dart 2*e goes u->v, dart 2*e+1 goes v->u for H-edge e=(u,v)
    std::vector<std::pair<int, int>> hedges;
    std::vector<std::vector<int>> rotation;  // per vertex: darts leaving it, ccw

    int add_vertex() {
        rotation.emplace_back();
        return static_cast<int>(rotation.size()) - 1;
    }
    int add_hedge(int u, int v) {
        hedges.emplace_back(u, v);
        return static_cast<int>(hedges.size()) - 1;
    }
    int dart_from(int he, int tail, int head) {
        return hedges[he] == std::make_pair(tail, head) ? 2 * he : 2 * he + 1;
    }
    int tail(int d) const { return d % 2 == 0 ? hedges[d / 2].first : hedges[d / 2].second; }
    int head(int d) const { return d % 2 == 0 ? hedges[d / 2].second : hedges[d / 2].first; }
};

std::string fmt_crossing(const CrossingId& c) {
    std::ostringstream os;
    os << "(" << c.first << "," << c.second << ")";
    return os.str();
}

}  // namespace

void check_drawing(const CombinatorialDrawing& d) {
    d.instance.check();
    const auto& chords = d.instance.chords();
    const int m = static_cast<int>(chords.size());
    if (static_cast<int>(d.along_edge.size()) != m)
        throw error("along_edge length differs from edge count");

    const auto forced = forced_crossing_pairs(d.instance);
    std::set<CrossingId> forced_set(forced.begin(), forced.end());
    if (d.crossings != forced_set)
        throw error("crossing set differs from the forced (interleaving) pairs");

    std::set<CrossingId> seen;
    for (int e = 0; e < m; ++e) {
        for (const CrossingId& c : d.along_edge[e]) {
            if (c.first != e && c.second != e)
                throw error("crossing listed on a foreign edge");
            if (!d.crossings.count(c)) throw error("unknown crossing");
            if (!seen.insert(CrossingId{e, c.first == e ? c.second : c.first}).second)
                throw error("crossing repeated along an edge");
        }
    }
    for (const CrossingId& c : d.crossings) {
        if (!seen.count(CrossingId{c.first, c.second}) || !seen.count(CrossingId{c.second, c.first}))
            throw error("crossing missing from an edge sequence");
    }
    if (d.geometry && static_cast<int>(d.geometry->size()) != m)
        throw error("geometry length differs from edge count");

    (void)trace_planarization(d);
}

Planarization trace_planarization(const CombinatorialDrawing& d) {
    const int n_slots = d.instance.slots();
    const auto& chords = d.instance.chords();
    Planarization out;

    if (n_slots < 3) {
        // Boundary cycles of length one or two are degenerate; a drawing this
        // small cannot have crossings, so realizability is trivial.
        if (!d.crossings.empty()) throw error("non-planar drawing");
        return out;
    }

    HalfEdgeGraph h;
    for (int p = 0; p < n_slots; ++p) h.add_vertex();
    for (const CrossingId& c : d.crossings) out.crossing_vertex[c] = h.add_vertex();

    // Boundary cycle.
    std::vector<int> boundary_he(n_slots);
    for (int p = 0; p < n_slots; ++p) boundary_he[p] = h.add_hedge(p, (p + 1) % n_slots);

    // Chord segments; node_path[e] = vertex sequence from lower endpoint.
    std::vector<std::vector<int>> node_path(chords.size());
    std::vector<std::vector<int>> seg_he(chords.size());
    for (std::size_t e = 0; e < chords.size(); ++e) {
        node_path[e].push_back(chords[e].first);
        for (const CrossingId& c : d.along_edge[e]) node_path[e].push_back(out.crossing_vertex.at(c));
        node_path[e].push_back(chords[e].second);
        for (std::size_t s = 0; s + 1 < node_path[e].size(); ++s)
            seg_he[e].push_back(h.add_hedge(node_path[e][s], node_path[e][s + 1]));
    }

    // Rotations at slots (circle positions counterclockwise): next boundary
    // arc, then the chord pointing inside, then the previous arc.
    std::vector<int> chord_at(n_slots, -1);
    for (std::size_t e = 0; e < chords.size(); ++e) {
        chord_at[chords[e].first] = static_cast<int>(e);
        chord_at[chords[e].second] = static_cast<int>(e);
    }
    for (int p = 0; p < n_slots; ++p) {
        auto& rot = h.rotation[p];
        rot.push_back(h.dart_from(boundary_he[p], p, (p + 1) % n_slots));
        if (chord_at[p] >= 0) {
            const int e = chord_at[p];
            const int he = (chords[e].first == p) ? seg_he[e].front() : seg_he[e].back();
            const int other = (chords[e].first == p) ? node_path[e][1]
                                                     : node_path[e][node_path[e].size() - 2];
            rot.push_back(h.dart_from(he, p, other));
        }
        rot.push_back(h.dart_from(boundary_he[(p - 1 + n_slots) % n_slots], p,
                                  (p - 1 + n_slots) % n_slots));
    }

    // Rotations at crossings. With lower endpoints aP < aQ the four branches
    // leave counterclockwise as: toward aP, toward aQ, toward bP, toward bQ.
    for (const CrossingId& c : d.crossings) {
        int e = c.first, f = c.second;
        if (chords[e].first > chords[f].first) std::swap(e, f);
        const int x = out.crossing_vertex.at(c);
        auto index_on = [&](int edge) {
            const auto& seq = d.along_edge[edge];
            for (std::size_t i = 0; i < seq.size(); ++i)
                if (seq[i] == c) return static_cast<int>(i);
            throw error("unknown crossing");
        };
        const int ie = index_on(e), iff = index_on(f);
        auto& rot = h.rotation[x];
        rot.push_back(h.dart_from(seg_he[e][ie], x, node_path[e][ie]));
        rot.push_back(h.dart_from(seg_he[f][iff], x, node_path[f][iff]));
        rot.push_back(h.dart_from(seg_he[e][ie + 1], x, node_path[e][ie + 2]));
        rot.push_back(h.dart_from(seg_he[f][iff + 1], x, node_path[f][iff + 2]));
    }

    // Face tracing: successor of dart d is the dart before twin(d) in the
    // rotation at head(d).
    const int n_darts = 2 * static_cast<int>(h.hedges.size());
    std::vector<int> dart_pos(n_darts, -1);
    for (std::size_t v = 0; v < h.rotation.size(); ++v)
        for (std::size_t i = 0; i < h.rotation[v].size(); ++i)
            dart_pos[h.rotation[v][i]] = static_cast<int>(i);

    auto next_dart = [&](int dart) {
        const int v = h.head(dart);
        const int twin = dart ^ 1;
        const auto& rot = h.rotation[v];
        const int idx = dart_pos[twin];
        return rot[(idx - 1 + static_cast<int>(rot.size())) % rot.size()];
    };

    std::vector<int> face_of(n_darts, -1);
    std::vector<std::vector<int>> orbits;
    for (int start = 0; start < n_darts; ++start) {
        if (face_of[start] != -1) continue;
        std::vector<int> orbit;
        int dart = start;
        do {
            face_of[dart] = static_cast<int>(orbits.size());
            orbit.push_back(dart);
            dart = next_dart(dart);
        } while (dart != start);
        orbits.push_back(std::move(orbit));
    }

    out.n_vertices = static_cast<int>(h.rotation.size());
    out.n_edges = static_cast<int>(h.hedges.size());
    const long long euler = static_cast<long long>(out.n_vertices) - out.n_edges +
                            static_cast<long long>(orbits.size());
    if (euler != 2) throw error("non-planar drawing");

    // The outer face must consist of exactly the boundary darts, one per arc,
    // consistently oriented.
    int outer = -1;
    for (std::size_t fi = 0; fi < orbits.size(); ++fi) {
        if (static_cast<int>(orbits[fi].size()) != n_slots) continue;
        bool fwd = true, bwd = true;
        std::set<int> arcs;
        for (int dart : orbits[fi]) {
            const int he = dart / 2;
            if (he >= n_slots) {
                fwd = bwd = false;
                break;
            }
            arcs.insert(he);
            if (dart % 2 == 0) bwd = false;
            else fwd = false;
        }
        if ((fwd || bwd) && static_cast<int>(arcs.size()) == n_slots) {
            outer = static_cast<int>(fi);
            break;
        }
    }
    if (outer < 0) throw error("non-planar drawing");

    for (std::size_t fi = 0; fi < orbits.size(); ++fi) {
        Planarization::Face face;
        face.degree = static_cast<int>(orbits[fi].size());
        for (int dart : orbits[fi]) face.vertices.push_back(h.tail(dart));
        face.outer = static_cast<int>(fi) == outer;
        out.faces.push_back(std::move(face));
    }
    return out;
}

bool Planarization::has_quad_face(int v1, int v2, int v3, int v4) const {
    std::array<int, 4> want{v1, v2, v3, v4};
    std::sort(want.begin(), want.end());
    for (const Face& face : faces) {
        if (face.outer || face.degree != 4) continue;
        std::array<int, 4> got{face.vertices[0], face.vertices[1], face.vertices[2],
                               face.vertices[3]};
        std::sort(got.begin(), got.end());
        if (got == want) return true;
    }
    return false;
}

FaceCensus planarize(const CombinatorialDrawing& d) {
    check_drawing(d);
    if (d.instance.slots() > 0 && d.instance.slots() < 3 && !d.instance.chords().empty())
        throw error("degenerate boundary cycle");
    const Planarization pl = trace_planarization(d);
    FaceCensus census;
    for (const auto& face : pl.faces)
        if (!face.outer) ++census.f[face.degree];
    return census;
}

namespace {

// Positions (indices) of the bundle's crossings within along_edge[edge].
std::vector<int> member_positions(const CombinatorialDrawing& d, const BundledCrossing& b,
                                  int edge) {
    std::vector<int> idx;
    const auto& seq = d.along_edge[edge];
    for (int i = 0; i < static_cast<int>(seq.size()); ++i)
        if (b.member_crossings.count(seq[i])) idx.push_back(i);
    return idx;
}

// The other-edge sequence of the bundle's crossings along `edge`.
std::vector<int> partner_sequence(const CombinatorialDrawing& d, const BundledCrossing& b,
                                  int edge) {
    std::vector<int> partners;
    for (const CrossingId& c : d.along_edge[edge])
        if (b.member_crossings.count(c))
            partners.push_back(c.first == edge ? c.second : c.first);
    return partners;
}

}  // namespace

ValidationReport validate_bundling(const CombinatorialDrawing& d, const BundlingPlan& p) {
    check_drawing(d);
    const int m = static_cast<int>(d.instance.chords().size());

    for (const auto& [c, b] : p.assignment) {
        (void)b;
        if (!d.crossings.count(c)) throw error("unknown crossing");
    }
    for (const BundledCrossing& b : p.bundles) {
        for (const CrossingId& c : b.member_crossings)
            if (!d.crossings.count(c)) throw error("unknown crossing");
        for (int e : b.bundle1)
            if (e < 0 || e >= m) throw error("unknown crossing");
        for (int e : b.bundle2)
            if (e < 0 || e >= m) throw error("unknown crossing");
    }

    ValidationReport report;

    // (a) partition of all crossings.
    std::map<CrossingId, int> covered;
    for (int bi = 0; bi < static_cast<int>(p.bundles.size()); ++bi) {
        for (const CrossingId& c : p.bundles[bi].member_crossings) {
            auto [it, fresh] = covered.emplace(c, bi);
            if (!fresh)
                report.add("not a partition", "crossing " + fmt_crossing(c) +
                                                  " in bundles " + std::to_string(it->second) +
                                                  " and " + std::to_string(bi));
        }
    }
    for (const CrossingId& c : d.crossings)
        if (!covered.count(c))
            report.add("not a partition", "crossing " + fmt_crossing(c) + " uncovered");
    for (const auto& [c, bi] : covered) {
        auto it = p.assignment.find(c);
        if (it == p.assignment.end() || it->second != bi)
            report.add("assignment mismatch", "crossing " + fmt_crossing(c));
    }
    for (const auto& [c, bi] : p.assignment)
        if (!covered.count(c))
            report.add("assignment mismatch",
                       "assignment names unbundled crossing " + fmt_crossing(c));
        else
            (void)bi;

    const Planarization pl = trace_planarization(d);

    for (int bi = 0; bi < static_cast<int>(p.bundles.size()); ++bi) {
        const BundledCrossing& b = p.bundles[bi];
        const std::string tag = "bundle " + std::to_string(bi);
        bool structurally_ok = true;

        if (b.member_crossings.empty()) {
            report.add("empty bundle", tag);
            continue;
        }
        std::set<int> s1(b.bundle1.begin(), b.bundle1.end());
        std::set<int> s2(b.bundle2.begin(), b.bundle2.end());
        if (s1.size() != b.bundle1.size() || s2.size() != b.bundle2.size()) {
            report.add("not a full grid", tag + ": repeated edge in a bundle side");
            structurally_ok = false;
        }
        for (int e : s1)
            if (s2.count(e)) {
                report.add("bundles overlap", tag + ": edge " + std::to_string(e));
                structurally_ok = false;
            }

        // (b) exactly one crossing per pair, covering all pairs.
        std::set<CrossingId> grid;
        for (int e1 : s1)
            for (int e2 : s2) grid.insert(crossing_id(e1, e2));
        if (grid != b.member_crossings) {
            report.add("not a full grid", tag);
            structurally_ok = false;
        }
        if (!structurally_ok) continue;

        // (c) member crossings consecutive along every participating edge.
        std::vector<int> edges_of_bundle;
        edges_of_bundle.insert(edges_of_bundle.end(), s1.begin(), s1.end());
        edges_of_bundle.insert(edges_of_bundle.end(), s2.begin(), s2.end());
        bool consecutive = true;
        for (int e : edges_of_bundle) {
            const std::vector<int> idx = member_positions(d, b, e);
            for (std::size_t i = 1; i < idx.size(); ++i)
                if (idx[i] != idx[i - 1] + 1) {
                    report.add("not consecutive",
                               tag + ": along edge " + std::to_string(e));
                    consecutive = false;
                    break;
                }
        }
        if (!consecutive) continue;

        // (d) all strands of one side meet the other side in the same order
        // up to per-strand reversal.
        std::vector<int> e1_sorted(s1.begin(), s1.end());
        std::vector<int> e2_sorted(s2.begin(), s2.end());
        bool coherent = true;
        auto check_side = [&](const std::vector<int>& side) {
            const std::vector<int> ref = partner_sequence(d, b, side.front());
            std::vector<int> ref_rev(ref.rbegin(), ref.rend());
            for (int e : side) {
                const std::vector<int> seq = partner_sequence(d, b, e);
                if (seq != ref && seq != ref_rev) {
                    report.add("incoherent order", tag + ": along edge " + std::to_string(e));
                    coherent = false;
                }
            }
        };
        check_side(e1_sorted);
        check_side(e2_sorted);
        if (!coherent) continue;

        // (e) pseudodisk separation: every interior cell of the grid is a
        // quadrilateral face of the planarization.
        const std::vector<int> rows = partner_sequence(d, b, e2_sorted.front());  // E1 order
        const std::vector<int> cols = partner_sequence(d, b, e1_sorted.front());  // E2 order
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            for (std::size_t j = 0; j + 1 < cols.size(); ++j) {
                const int x11 = pl.crossing_vertex.at(crossing_id(rows[i], cols[j]));
                const int x12 = pl.crossing_vertex.at(crossing_id(rows[i], cols[j + 1]));
                const int x21 = pl.crossing_vertex.at(crossing_id(rows[i + 1], cols[j]));
                const int x22 = pl.crossing_vertex.at(crossing_id(rows[i + 1], cols[j + 1]));
                if (!pl.has_quad_face(x11, x12, x21, x22)) {
                    report.add("not separable",
                               tag + ": cell (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is not a quadrilateral face");
                }
            }
        }
    }
    return report;
}

}  // namespace bcross
