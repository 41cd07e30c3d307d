#include "bcross/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bcross {

namespace {

constexpr double kScale = 40.0;  // layout units per vertex slot
constexpr double kMargin = 24.0;

double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v + 0.0);  // normalize -0
    return buf;
}

// Exact intersection point of the polylines of the two edges of a crossing.
RatPoint crossing_point(const CombinatorialDrawing& d, const CrossingId& c) {
    const Polyline& pa = (*d.geometry)[c.first];
    const Polyline& pb = (*d.geometry)[c.second];
    for (std::size_t i = 0; i + 1 < pa.size(); ++i) {
        for (std::size_t j = 0; j + 1 < pb.size(); ++j) {
            const Rat x1 = pa[i].x, y1 = pa[i].y, x2 = pa[i + 1].x, y2 = pa[i + 1].y;
            const Rat x3 = pb[j].x, y3 = pb[j].y, x4 = pb[j + 1].x, y4 = pb[j + 1].y;
            const Rat den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4);
            if (den == Rat(0)) continue;
            const Rat t = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den;
            const Rat u = ((x1 - x3) * (y1 - y2) - (y1 - y3) * (x1 - x2)) / den;
            if (t <= Rat(0) || t >= Rat(1) || u <= Rat(0) || u >= Rat(1)) continue;
            return {x1 + t * (x2 - x1), y1 + t * (y2 - y1)};
        }
    }
    throw error("crossing point not found in geometry");
}

std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    auto cross = [](const auto& o, const auto& a, const auto& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

struct Mapper {
    SvgMode mode;
    int slots;
    double max_y;
    double width, height;

    std::pair<double, double> map(double x, double y) const {
        if (mode == SvgMode::Rectangle)
            return {kMargin + x * kScale, height - kMargin - y * kScale};
        const double cx = width / 2, cy = height / 2;
        const double r0 = std::max(3.0, static_cast<double>(slots)) * kScale / (2 * M_PI) + kScale;
        const double rscale = (r0 - 12.0) / std::max(1.0, max_y + 1.0);
        const double theta = 2 * M_PI * x / std::max(1, slots);
        const double r = r0 - rscale * y;
        return {cx + r * std::sin(theta), cy - r * std::cos(theta)};
    }
};

}  // namespace

std::string render_svg(const LayoutResult& lr, SvgMode mode) {
    const CombinatorialDrawing& d = lr.drawing;
    if (!d.geometry) throw error("missing geometry");
    const int slots = d.instance.slots();

    double max_y = 1.0;
    for (const Polyline& poly : *d.geometry)
        for (const RatPoint& p : poly) max_y = std::max(max_y, to_double(p.y));

    Mapper mp{mode, slots, max_y, 0, 0};
    if (mode == SvgMode::Rectangle) {
        mp.width = 2 * kMargin + std::max(1, slots - 1) * kScale;
        mp.height = 2 * kMargin + max_y * kScale;
    } else {
        const double r0 = std::max(3.0, static_cast<double>(slots)) * kScale / (2 * M_PI) + kScale;
        mp.width = mp.height = 2 * (r0 + kMargin);
    }

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(mp.width)
        << "\" height=\"" << num(mp.height) << "\" viewBox=\"0 0 " << num(mp.width) << " "
        << num(mp.height) << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Shaded bundle regions under the edges.
    for (std::size_t bi = 0; bi < lr.plan.bundles.size(); ++bi) {
        std::vector<std::pair<double, double>> pts;
        for (const CrossingId& c : lr.plan.bundles[bi].member_crossings) {
            const RatPoint p = crossing_point(d, c);
            pts.push_back(mp.map(to_double(p.x), to_double(p.y)));
        }
        if (pts.empty()) continue;
        if (pts.size() == 1) {
            out << "  <circle cx=\"" << num(pts[0].first) << "\" cy=\"" << num(pts[0].second)
                << "\" r=\"8.00\" fill=\"#f4a440\" fill-opacity=\"0.45\"/>\n";
        } else if (pts.size() == 2) {
            out << "  <line x1=\"" << num(pts[0].first) << "\" y1=\"" << num(pts[0].second)
                << "\" x2=\"" << num(pts[1].first) << "\" y2=\"" << num(pts[1].second)
                << "\" stroke=\"#f4a440\" stroke-opacity=\"0.45\" stroke-width=\"14.00\""
                << " stroke-linecap=\"round\"/>\n";
        } else {
            out << "  <polygon points=\"";
            bool first = true;
            for (const auto& [x, y] : convex_hull(pts)) {
                if (!first) out << " ";
                out << num(x) << "," << num(y);
                first = false;
            }
            out << "\" fill=\"#f4a440\" fill-opacity=\"0.45\" stroke=\"#d98a20\""
                << " stroke-width=\"1.00\"/>\n";
        }
    }

    // Edge polylines; disk mode bends each segment into an arc-like path.
    for (const Polyline& poly : *d.geometry) {
        out << "  <polyline fill=\"none\" stroke=\"#3060c0\" stroke-width=\"1.50\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i + 1 < poly.size() || (poly.size() == 1 && i == 0); ++i) {
            const double x1 = to_double(poly[i].x), y1 = to_double(poly[i].y);
            if (poly.size() == 1) {
                const auto [px, py] = mp.map(x1, y1);
                if (!first) out << " ";
                out << num(px) << "," << num(py);
                break;
            }
            const double x2 = to_double(poly[i + 1].x), y2 = to_double(poly[i + 1].y);
            const int steps = mode == SvgMode::Disk ? 16 : 1;
            for (int s = (i == 0 ? 0 : 1); s <= steps; ++s) {
                const double t = static_cast<double>(s) / steps;
                const auto [px, py] = mp.map(x1 + t * (x2 - x1), y1 + t * (y2 - y1));
                if (!first) out << " ";
                out << num(px) << "," << num(py);
                first = false;
            }
        }
        out << "\"/>\n";
    }

    // Vertex dots on the baseline / circle.
    for (int p = 0; p < slots; ++p) {
        const auto [px, py] = mp.map(p, 0.0);
        out << "  <circle cx=\"" << num(px) << "\" cy=\"" << num(py)
            << "\" r=\"3.00\" fill=\"#202020\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace bcross
