#include "flatcone/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace flatcone {

namespace {

constexpr double kPi = std::numbers::pi;

struct Departure {
    Corner corner;
    double direction = 0.0;
};

Departure departure_corner(const FlatConeSurface& s, int vertex_class, double alpha) {
    const VertexClass& vc = s.vertex_classes().at(static_cast<std::size_t>(vertex_class));
    alpha = wrap(alpha, vc.angle_radians);
    std::size_t k = 0;
    while (k + 1 < vc.corners.size() && vc.corner_offsets[k + 1] <= alpha) ++k;
    const Corner corner = vc.corners[k];
    const double rel = std::clamp(alpha - vc.corner_offsets[k], 0.0, s.interior_angle(corner));
    return {corner, wrap(s.corner_start_direction(corner) + rel, kTwoPi)};
}

bool point_in_polygon(const std::vector<PlanePoint>& poly, const PlanePoint& p) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto& a = poly[i];
        const auto& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

struct State {
    int chart = 0;
    PlanePoint p;
    double angle = 0.0;
    int entry_edge = -1;
    int at_vertex = -1;
};

}  // namespace

double cone_coordinate(const FlatConeSurface& s, const Corner& corner, double chart_direction) {
    const VertexClass& vc = s.vertex_classes().at(static_cast<std::size_t>(s.class_of(corner)));
    const int pos = s.position_in_class(corner);
    double rel = wrap(chart_direction - s.corner_start_direction(corner), kTwoPi);
    const double interior = s.interior_angle(corner);
    if (rel > interior) {
        // just clockwise of the wedge start reads as a value near 2*pi
        rel = (kTwoPi - rel < rel - interior) ? 0.0 : interior;
    }
    return wrap(vc.corner_offsets[static_cast<std::size_t>(pos)] + rel, vc.angle_radians);
}

DirectedPoint departure_at(const FlatConeSurface& s, int vertex_class, double alpha) {
    const Departure d = departure_corner(s, vertex_class, alpha);
    return {d.corner.chart, s.vertex(d.corner), d.direction};
}

Departures departure_coordinates(const FlatConeSurface& s, int vertex_class, double back) {
    const double theta = s.vertex_classes().at(static_cast<std::size_t>(vertex_class)).angle_radians;
    return {wrap(back - kPi, theta), wrap(back + kPi, theta)};
}

DirectedPoint continue_at_cone_point(const FlatConeSurface& s, const ConePointHit& hit, Side side) {
    const double back = cone_coordinate(s, hit.corner, wrap(hit.arrival_direction + kPi, kTwoPi));
    const Departures d = departure_coordinates(s, hit.vertex_class, back);
    return departure_at(s, hit.vertex_class, side == Side::Left ? d.left : d.right);
}

bool is_admissible_limit_path(std::span<const Side> sides) {
    int switches = 0;
    for (std::size_t i = 1; i < sides.size(); ++i) {
        if (sides[i] != sides[i - 1]) ++switches;
    }
    return switches <= 1;
}

GeodesicPath trace(const FlatConeSurface& s, const DirectedPoint& start, double max_length) {
    if (!(max_length >= 0.0) || !std::isfinite(max_length)) {
        throw std::invalid_argument("max_length must be finite and non-negative");
    }
    if (start.chart < 0 || start.chart >= static_cast<int>(s.chart_count())) {
        throw std::invalid_argument("start chart out of range");
    }
    const double eps = s.options().eps_geom;

    GeodesicPath path;
    path.start = start;
    path.start.direction = wrap(start.direction, kTwoPi);

    State st{start.chart, start.position, path.start.direction, -1, -1};
    {
        const auto& verts = s.chart(st.chart).vertices;
        const int n = static_cast<int>(verts.size());
        for (int v = 0; v < n; ++v) {
            if (distance(verts[static_cast<std::size_t>(v)], st.p) <= eps) {
                const Corner c{st.chart, v};
                const double rel = wrap(st.angle - s.corner_start_direction(c), kTwoPi);
                if (rel > s.interior_angle(c) + kEpsAngle && rel < kTwoPi - kEpsAngle) {
                    throw std::invalid_argument("start direction points out of the chart at a vertex");
                }
                st.at_vertex = v;
                st.p = verts[static_cast<std::size_t>(v)];
                break;
            }
        }
        if (st.at_vertex < 0) {
            bool on_edge = false;
            for (int e = 0; e < n; ++e) {
                const Vec2 a = verts[static_cast<std::size_t>(e)];
                const Vec2 b = verts[static_cast<std::size_t>((e + 1) % n)];
                if (point_segment_distance(st.p, a, b) <= eps) {
                    on_edge = true;
                    const Vec2 outward{(b - a).y, -(b - a).x};
                    if (dot(outward, unit_vector(st.angle)) <= 0.0) st.entry_edge = e;
                    // pointing outward: the first step crosses this edge at distance ~0
                    break;
                }
            }
            if (!on_edge && !point_in_polygon(verts, st.p)) {
                throw std::invalid_argument("start position lies outside its chart");
            }
        }
    }

    path.end = {st.chart, st.p, st.angle};
    if (max_length == 0.0) return path;

    int stalled = 0;
    while (true) {
        const double remaining = max_length - path.length;
        const auto& verts = s.chart(st.chart).vertices;
        const int n = static_cast<int>(verts.size());
        const Vec2 u = unit_vector(st.angle);

        double best_t = std::numeric_limits<double>::infinity();
        int best_edge = -1;
        double best_s = 0.0;
        for (int e = 0; e < n; ++e) {
            if (e == st.entry_edge) continue;
            if (st.at_vertex >= 0 && (e == st.at_vertex || e == (st.at_vertex + n - 1) % n)) continue;
            const Vec2 a = verts[static_cast<std::size_t>(e)];
            const Vec2 d = verts[static_cast<std::size_t>((e + 1) % n)] - a;
            const double denom = cross(u, d);
            if (std::abs(denom) <= 1e-15 * norm(d)) continue;
            const double t = cross(a - st.p, d) / denom;
            const double sp = cross(a - st.p, u) / denom;
            if (t < -eps || sp < -1e-12 || sp > 1.0 + 1e-12) continue;
            if (t < best_t) {
                best_t = std::max(t, 0.0);
                best_edge = e;
                best_s = sp;
            }
        }

        int hit_vertex = -1;
        double hit_t = std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            if (v == st.at_vertex) continue;
            const Vec2 w = verts[static_cast<std::size_t>(v)] - st.p;
            const double t = dot(w, u);
            if (t <= eps) continue;
            if (std::abs(cross(u, w)) <= eps && t <= best_t + eps && t < hit_t) {
                hit_t = t;
                hit_vertex = v;
            }
        }
        if (hit_vertex < 0 && best_edge >= 0) {
            const Vec2 x = st.p + u * best_t;
            const int v0 = best_edge;
            const int v1 = (best_edge + 1) % n;
            if (distance(x, verts[static_cast<std::size_t>(v0)]) <= eps) {
                hit_vertex = v0;
                hit_t = best_t;
            } else if (distance(x, verts[static_cast<std::size_t>(v1)]) <= eps) {
                hit_vertex = v1;
                hit_t = best_t;
            }
        }
        (void)best_s;
        if (hit_vertex < 0 && best_edge < 0) {
            throw NumericalStall("ray found no exit from chart " + std::to_string(s.chart(st.chart).id));
        }

        const double step = hit_vertex >= 0 ? hit_t : best_t;
        if (step >= remaining) {
            const Vec2 q = st.p + u * remaining;
            path.segments.push_back({st.chart, st.p, q, remaining});
            path.length = max_length;
            path.end = {st.chart, q, st.angle};
            path.terminal = Terminal::LengthReached;
            return path;
        }
        if (step < eps * 1e-3) {
            if (++stalled > 16) throw NumericalStall("geodesic stopped making progress");
        } else {
            stalled = 0;
        }

        if (hit_vertex >= 0) {
            const Corner corner{st.chart, hit_vertex};
            const Vec2 q = verts[static_cast<std::size_t>(hit_vertex)];
            path.segments.push_back({st.chart, st.p, q, hit_t});
            path.length += hit_t;
            const int vclass = s.class_of(corner);
            const int cone = s.cone_of_class(vclass);
            if (cone >= 0) {
                path.terminal = Terminal::ConePointHit;
                path.hit = ConePointHit{cone, vclass, corner, st.angle};
                path.end = {st.chart, q, st.angle};
                return path;
            }
            // regular point: the straight continuation is at angle pi on both sides
            const double back = cone_coordinate(s, corner, wrap(st.angle + kPi, kTwoPi));
            const Departure d = departure_corner(s, vclass, back + kPi);
            st = State{d.corner.chart, s.vertex(d.corner), d.direction, -1, d.corner.vertex};
            continue;
        }

        const Vec2 x = st.p + u * best_t;
        const EdgeRef edge{st.chart, best_edge};
        const EdgeLink& link = s.link(edge);
        path.segments.push_back({st.chart, st.p, x, best_t});
        path.crossings.push_back({edge, x, link.gluing});
        path.length += best_t;
        st.chart = link.partner.chart;
        st.p = link.to_partner.apply(x);
        st.angle = wrap(st.angle + link.to_partner.rotation().radians(), kTwoPi);
        st.entry_edge = link.partner.edge;
        st.at_vertex = -1;
    }
}

}  // namespace flatcone
