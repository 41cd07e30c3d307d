#include "bcross/layout.hpp"

#include <algorithm>
#include <set>

namespace bcross {

LayoutResult two_slope_layout(const MatchingInstance& m) {
    m.check();
    const std::vector<Edge>& chords = m.chords();
    const int mm = static_cast<int>(chords.size());

    LayoutResult out;
    out.drawing.instance = m;
    out.drawing.along_edge.assign(mm, {});

    for (const auto& pr : forced_crossing_pairs(m)) out.drawing.crossings.insert(pr);

    // Along edge e = (i, j): first the slant (crossed by verticals of edges
    // ending inside (i, j), in order of their right endpoint), then the
    // vertical (crossed by slants of edges starting inside, in order of
    // their left endpoint).
    for (int e = 0; e < mm; ++e) {
        const auto [i, j] = chords[e];
        std::vector<int> on_slant, on_vertical;
        for (int f = 0; f < mm; ++f) {
            if (f == e || !chords_interleave(chords[e], chords[f])) continue;
            if (chords[f].first < i)
                on_slant.push_back(f);
            else
                on_vertical.push_back(f);
        }
        std::sort(on_slant.begin(), on_slant.end(),
                  [&](int a, int b) { return chords[a].second < chords[b].second; });
        std::sort(on_vertical.begin(), on_vertical.end(),
                  [&](int a, int b) { return chords[a].first < chords[b].first; });
        for (int f : on_slant) out.drawing.along_edge[e].push_back(crossing_id(e, f));
        for (int f : on_vertical) out.drawing.along_edge[e].push_back(crossing_id(e, f));
    }

    std::vector<Polyline> geometry;
    for (const auto& [i, j] : chords)
        geometry.push_back({{Rat(i), Rat(0)}, {Rat(j), Rat(j - i)}, {Rat(j), Rat(0)}});
    out.drawing.geometry = std::move(geometry);

    std::vector<BundledCrossing> bundles;
    for (int e = 0; e < mm; ++e) {
        BundledCrossing b;
        b.bundle1 = {e};
        for (int f = 0; f < mm; ++f)
            if (f != e && chords[f].first > chords[e].first &&
                chords_interleave(chords[e], chords[f])) {
                b.bundle2.push_back(f);
                b.member_crossings.insert(crossing_id(e, f));
            }
        if (!b.bundle2.empty()) bundles.push_back(std::move(b));
    }
    out.plan = BundlingPlan::from_bundles(std::move(bundles));
    out.bundle_count = static_cast<long long>(out.plan.bundles.size());
    return out;
}

std::vector<int> greedy_outerplanar_subset(const MatchingInstance& m) {
    const std::vector<Edge>& chords = m.chords();
    std::vector<int> kept;
    for (int e = 0; e < static_cast<int>(chords.size()); ++e) {
        bool compatible = true;
        for (int k : kept)
            if (chords_interleave(chords[e], chords[k])) {
                compatible = false;
                break;
            }
        if (compatible) kept.push_back(e);
    }
    return kept;
}

namespace {

// One routed edge of the outerplanar construction in two-slope style. An
// estar edge has height 0 and no entry vertical; every other edge rises to
// height h at its left endpoint first. The slant has unit slope, so its
// height at x is x - intercept with intercept = left - h.
struct RoutedEdge {
    int left = 0, right = 0;
    Rat h;
    bool has_entry = false;

    Rat slant_height_at(int x) const { return Rat(x - left) + h; }
    Rat top_at_right() const { return Rat(right - left) + h; }
    Rat intercept() const { return Rat(left) - h; }
};

}  // namespace

LayoutResult outerplanar_layout(const MatchingInstance& m, const std::vector<int>& estar) {
    m.check();
    const std::vector<Edge>& chords = m.chords();
    const int mm = static_cast<int>(chords.size());

    std::vector<bool> in_estar(mm, false);
    for (int e : estar) {
        if (e < 0 || e >= mm) throw error("not outerplanar for this order");
        in_estar[e] = true;
    }
    for (std::size_t a = 0; a < estar.size(); ++a)
        for (std::size_t b = a + 1; b < estar.size(); ++b)
            if (chords_interleave(chords[estar[a]], chords[estar[b]]))
                throw error("not outerplanar for this order");

    std::vector<RoutedEdge> routed(mm);
    std::vector<int> placed;  // edges already routed, estar first
    std::set<Rat> intercepts;

    for (int e = 0; e < mm; ++e) {
        if (!in_estar[e]) continue;
        routed[e] = RoutedEdge{chords[e].first, chords[e].second, Rat(0), false};
        placed.push_back(e);
        intercepts.insert(routed[e].intercept());
    }

    std::vector<int> others;
    for (int e = 0; e < mm; ++e)
        if (!in_estar[e]) others.push_back(e);
    std::sort(others.begin(), others.end(),
              [&](int a, int b) { return chords[a].first < chords[b].first; });

    bool construction_ok = true;
    for (int e : others) {
        const auto [i, j] = chords[e];

        // Present edges at x = i, split below/above the topmost estar arc
        // that the entry vertical must cross.
        Rat h_low(0);
        bool have_low = false;
        for (int k : placed) {
            if (!in_estar[k]) continue;
            const auto [a, b] = chords[k];
            if (a < i && i < b && b < j) {
                const Rat hh = routed[k].slant_height_at(i);
                if (!have_low || hh > h_low) h_low = hh, have_low = true;
            }
        }
        Rat h_high = h_low + 2;
        bool have_high = false;
        for (int k : placed) {
            if (chords[k].first < i && i < chords[k].second) {
                const Rat hh = routed[k].slant_height_at(i);
                if (hh > h_low && (!have_high || hh < h_high)) h_high = hh, have_high = true;
            }
        }
        // Everything below the entry top must be forced to cross e.
        for (int k : placed) {
            if (chords[k].first < i && i < chords[k].second &&
                routed[k].slant_height_at(i) <= h_low &&
                !chords_interleave(chords[e], chords[k]))
                construction_ok = false;
        }

        // Midpoint height inside (h_low, h_high), dodging equal intercepts.
        Rat lo = h_low, hi = h_high;
        Rat h = (lo + hi) / 2;
        while (intercepts.count(Rat(i) - h)) h = (lo + h) / 2;
        routed[e] = RoutedEdge{i, j, h, true};
        placed.push_back(e);
        intercepts.insert(routed[e].intercept());
    }

    // Exact slant-vertical intersections give every crossing and its
    // position along both edges.
    struct Hit {
        int other;
        Rat x, y;      // crossing point
        int leg;       // 0 = entry vertical, 1 = slant, 2 = exit vertical
    };
    std::vector<std::vector<Hit>> hits(mm);

    auto record = [&](int on, int other, Rat x, Rat y, int leg) {
        hits[on].push_back({other, x, y, leg});
    };

    for (int e = 0; e < mm; ++e) {
        for (int f = 0; f < mm; ++f) {
            if (e == f) continue;
            // slant of f against the verticals of e
            const RoutedEdge& re = routed[e];
            const RoutedEdge& rf = routed[f];
            if (re.has_entry && rf.left < re.left && re.left < rf.right) {
                const Rat y = rf.slant_height_at(re.left);
                if (Rat(0) < y && y < re.h) {
                    record(e, f, Rat(re.left), y, 0);
                    record(f, e, Rat(re.left), y, 1);
                }
            }
            if (rf.left < re.right && re.right < rf.right) {
                const Rat y = rf.slant_height_at(re.right);
                if (Rat(0) < y && y < re.top_at_right()) {
                    record(e, f, Rat(re.right), y, 2);
                    record(f, e, Rat(re.right), y, 1);
                }
            }
        }
    }

    // Order each edge's crossings along its course: entry bottom-up, slant
    // left-to-right, exit top-down.
    CombinatorialDrawing drawing;
    drawing.instance = m;
    drawing.along_edge.assign(mm, {});
    std::map<int, std::vector<int>> entry_sets, exit_sets;
    bool crossings_ok = true;

    for (int e = 0; e < mm; ++e) {
        auto& hv = hits[e];
        std::sort(hv.begin(), hv.end(), [&](const Hit& p, const Hit& q) {
            if (p.leg != q.leg) return p.leg < q.leg;
            if (p.leg == 1) return p.x < q.x;
            if (p.leg == 0) return p.y < q.y;
            return p.y > q.y;
        });
        for (const Hit& hit : hv) {
            drawing.along_edge[e].push_back(crossing_id(e, hit.other));
            if (hit.leg == 0) entry_sets[e].push_back(hit.other);
            if (hit.leg == 2) exit_sets[e].push_back(hit.other);
        }
    }
    for (const auto& pr : forced_crossing_pairs(m)) drawing.crossings.insert(pr);
    for (int e = 0; e < mm; ++e) {
        std::set<int> partners;
        for (const Hit& hit : hits[e]) partners.insert(hit.other);
        std::set<int> forced;
        for (const CrossingId& c : drawing.crossings)
            if (c.first == e || c.second == e) forced.insert(c.first == e ? c.second : c.first);
        if (partners != forced || partners.size() != hits[e].size()) crossings_ok = false;
        if (in_estar[e] && !exit_sets[e].empty()) crossings_ok = false;
    }

    LayoutResult out;
    if (construction_ok && crossings_ok) {
        std::vector<Polyline> geometry;
        for (int e = 0; e < mm; ++e) {
            const RoutedEdge& re = routed[e];
            Polyline poly;
            poly.push_back({Rat(re.left), Rat(0)});
            if (re.has_entry) poly.push_back({Rat(re.left), re.h});
            poly.push_back({Rat(re.right), re.top_at_right()});
            poly.push_back({Rat(re.right), Rat(0)});
            geometry.push_back(std::move(poly));
        }
        drawing.geometry = std::move(geometry);

        std::vector<BundledCrossing> bundles;
        for (int e = 0; e < mm; ++e) {
            if (in_estar[e]) continue;
            for (const auto* side : {&entry_sets, &exit_sets}) {
                auto it = side->find(e);
                if (it == side->end() || it->second.empty()) continue;
                BundledCrossing b;
                b.bundle1 = {e};
                b.bundle2 = it->second;
                std::sort(b.bundle2.begin(), b.bundle2.end());
                for (int f : b.bundle2) b.member_crossings.insert(crossing_id(e, f));
                bundles.push_back(std::move(b));
            }
        }
        out.drawing = std::move(drawing);
        out.plan = BundlingPlan::from_bundles(std::move(bundles));
        out.bundle_count = static_cast<long long>(out.plan.bundles.size());

        try {
            const ValidationReport report = validate_bundling(out.drawing, out.plan);
            if (report.ok) return out;
        } catch (const error&) {
        }
    }

    out = two_slope_layout(m);
    out.used_fallback = true;
    return out;
}

}  // namespace bcross
