#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "flatcone/geodesic.hpp"

namespace flatcone {

namespace {

struct Grid {
    double min_x = 0, min_y = 0, cell_w = 1, cell_h = 1;
    int res = 1;
    std::vector<char> valid;
    std::vector<char> seen;
};

// Sutherland-Hodgman clip of a polygon against an axis-aligned box; returns the clipped area.
double clipped_area(const std::vector<PlanePoint>& poly, double x0, double y0, double x1, double y1) {
    std::vector<PlanePoint> cur = poly;
    auto clip = [&](auto inside, auto intersect) {
        std::vector<PlanePoint> out;
        const std::size_t n = cur.size();
        for (std::size_t i = 0; i < n; ++i) {
            const PlanePoint& a = cur[i];
            const PlanePoint& b = cur[(i + 1) % n];
            const bool ia = inside(a);
            const bool ib = inside(b);
            if (ia) out.push_back(a);
            if (ia != ib) out.push_back(intersect(a, b));
        }
        cur = std::move(out);
    };
    auto at_x = [](double x) {
        return [x](const PlanePoint& a, const PlanePoint& b) {
            const double t = (x - a.x) / (b.x - a.x);
            return PlanePoint{x, a.y + t * (b.y - a.y)};
        };
    };
    auto at_y = [](double y) {
        return [y](const PlanePoint& a, const PlanePoint& b) {
            const double t = (y - a.y) / (b.y - a.y);
            return PlanePoint{a.x + t * (b.x - a.x), y};
        };
    };
    clip([=](const PlanePoint& p) { return p.x >= x0; }, at_x(x0));
    if (cur.empty()) return 0.0;
    clip([=](const PlanePoint& p) { return p.x <= x1; }, at_x(x1));
    if (cur.empty()) return 0.0;
    clip([=](const PlanePoint& p) { return p.y >= y0; }, at_y(y0));
    if (cur.empty()) return 0.0;
    clip([=](const PlanePoint& p) { return p.y <= y1; }, at_y(y1));
    double a2 = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) a2 += cross(cur[i], cur[(i + 1) % cur.size()]);
    return 0.5 * a2;
}

Grid make_grid(const PolygonChart& chart, int res) {
    Grid g;
    g.res = res;
    double max_x = chart.vertices[0].x, max_y = chart.vertices[0].y;
    g.min_x = max_x;
    g.min_y = max_y;
    for (const auto& v : chart.vertices) {
        g.min_x = std::min(g.min_x, v.x);
        g.min_y = std::min(g.min_y, v.y);
        max_x = std::max(max_x, v.x);
        max_y = std::max(max_y, v.y);
    }
    g.cell_w = (max_x - g.min_x) / res;
    g.cell_h = (max_y - g.min_y) / res;
    g.valid.assign(static_cast<std::size_t>(res) * res, 0);
    g.seen.assign(g.valid.size(), 0);
    const double min_area = 1e-9 * g.cell_w * g.cell_h;
    for (int iy = 0; iy < res; ++iy) {
        for (int ix = 0; ix < res; ++ix) {
            const double x0 = g.min_x + ix * g.cell_w;
            const double y0 = g.min_y + iy * g.cell_h;
            if (clipped_area(chart.vertices, x0, y0, x0 + g.cell_w, y0 + g.cell_h) > min_area) {
                g.valid[static_cast<std::size_t>(iy) * res + ix] = 1;
            }
        }
    }
    return g;
}

// Amanatides-Woo traversal of the cells crossed by a segment.
void mark_segment(Grid& g, const PlanePoint& a, const PlanePoint& b) {
    const double fx = (a.x - g.min_x) / g.cell_w;
    const double fy = (a.y - g.min_y) / g.cell_h;
    const double gx = (b.x - g.min_x) / g.cell_w;
    const double gy = (b.y - g.min_y) / g.cell_h;
    const int last = g.res - 1;
    auto cell = [last](double f, double dir) {
        // a start exactly on a grid line belongs to the cell the segment moves into
        double fl = std::floor(f);
        if (f == fl && dir < 0) fl -= 1.0;
        return std::clamp(static_cast<int>(fl), 0, last);
    };
    const double dx = gx - fx;
    const double dy = gy - fy;
    int ix = cell(fx, dx);
    int iy = cell(fy, dy);
    const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
    const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
    const double inf = std::numeric_limits<double>::infinity();
    double t_max_x = step_x > 0 ? (ix + 1 - fx) / dx : (step_x < 0 ? (ix - fx) / dx : inf);
    double t_max_y = step_y > 0 ? (iy + 1 - fy) / dy : (step_y < 0 ? (iy - fy) / dy : inf);
    const double t_dx = step_x != 0 ? std::abs(1.0 / dx) : inf;
    const double t_dy = step_y != 0 ? std::abs(1.0 / dy) : inf;
    constexpr double kEnd = 1.0 - 1e-12;
    while (true) {
        g.seen[static_cast<std::size_t>(iy) * g.res + ix] = 1;
        if (t_max_x >= kEnd && t_max_y >= kEnd) break;
        if (t_max_x < t_max_y) {
            ix += step_x;
            t_max_x += t_dx;
        } else {
            iy += step_y;
            t_max_y += t_dy;
        }
        if (ix < 0 || ix > last || iy < 0 || iy > last) break;
    }
}

}  // namespace

double density_profile(const FlatConeSurface& surface, const DirectedPoint& start, double total_length,
                       int grid_resolution) {
    if (grid_resolution < 1) throw std::invalid_argument("grid resolution must be positive");
    std::vector<Grid> grids;
    grids.reserve(surface.chart_count());
    for (const auto& c : surface.charts()) grids.push_back(make_grid(c, grid_resolution));

    const GeodesicPath path = trace(surface, start, total_length);
    for (const auto& seg : path.segments) {
        if (seg.length <= 0.0) continue;
        mark_segment(grids[static_cast<std::size_t>(seg.chart)], seg.from, seg.to);
    }
    std::size_t total = 0, covered = 0;
    for (const auto& g : grids) {
        for (std::size_t i = 0; i < g.valid.size(); ++i) {
            if (!g.valid[i]) continue;
            ++total;
            if (g.seen[i]) ++covered;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(total);
}

}  // namespace flatcone
