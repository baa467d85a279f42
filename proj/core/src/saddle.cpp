#include "flatcone/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>
#include <tuple>

#include "flatcone/geodesic.hpp"

namespace flatcone {

namespace {

constexpr double kQuantum = 1e-8;

struct Wedge {
    Vec2 right;  // unit direction of the clockwise boundary
    Vec2 left;   // unit direction of the counterclockwise boundary
    double width = 0.0;
    bool right_open = false;
    bool left_open = false;
};

struct Corridor {
    int chart = 0;
    Isometry develop;  // chart coordinates -> developed plane
    int entry_edge = -1;
    Wedge wedge;
};

double angle_from(const Vec2& base, const Vec2& v) { return std::atan2(cross(base, v), dot(base, v)); }

Vec2 normalized(const Vec2& v) { return v * (1.0 / norm(v)); }

std::int64_t quantize(double alpha, double theta) {
    auto q = static_cast<std::int64_t>(std::llround(alpha / kQuantum));
    const auto top = static_cast<std::int64_t>(std::llround(theta / kQuantum));
    if (q >= top) q -= top;
    return q;
}

}  // namespace

std::vector<SaddleConnection> enumerate_saddle_connections(const FlatConeSurface& s, double bound,
                                                           const SaddleOptions& options) {
    if (!(bound > 0.0)) throw std::invalid_argument("length bound must be positive");
    if (s.cone_points().empty()) {
        throw std::invalid_argument("surface has no cone points; retain marked points to search it");
    }
    if (!s.all_charts_convex()) throw std::invalid_argument("saddle-connection search requires convex charts");

    const double eps = s.options().eps_geom;
    const double reach = bound + eps;
    std::size_t opened = 0;

    using Key = std::tuple<int, std::int64_t, int, std::int64_t>;
    std::map<Key, SaddleConnection> found;

    auto is_cone = [&](const Corner& c) { return s.cone_of_class(s.class_of(c)) >= 0; };

    for (const ConePoint& cone : s.cone_points()) {
        const VertexClass& vc = s.vertex_classes()[static_cast<std::size_t>(cone.vertex_class)];
        for (std::size_t k = 0; k < vc.corners.size(); ++k) {
            const Corner root = vc.corners[k];
            const int n_root = s.vertex_count(root.chart);
            const Vec2 apex = s.vertex(root);
            const Vec2 r0 = normalized(s.vertex({root.chart, (root.vertex + 1) % n_root}) - apex);
            const Vec2 l0 = normalized(s.vertex({root.chart, (root.vertex + n_root - 1) % n_root}) - apex);

            std::deque<Corridor> queue;
            queue.push_back({root.chart, Isometry(), -1, Wedge{r0, l0, s.interior_angle(root), false, false}});

            while (!queue.empty()) {
                if (++opened > options.corridor_cap) {
                    throw SaddleExplosion("more than " + std::to_string(options.corridor_cap) +
                                          " corridors opened; lower the length bound");
                }
                const Corridor cur = std::move(queue.front());
                queue.pop_front();
                const bool is_root = cur.entry_edge < 0;
                const auto& verts = s.chart(cur.chart).vertices;
                const int n = static_cast<int>(verts.size());
                std::vector<Vec2> dev(verts.size());
                for (std::size_t i = 0; i < verts.size(); ++i) dev[i] = cur.develop.apply(verts[i]);
                const Wedge& w = cur.wedge;

                auto skip_vertex = [&](int i) {
                    if (is_root) return i == root.vertex;
                    return i == cur.entry_edge || i == (cur.entry_edge + 1) % n;
                };

                for (int i = 0; i < n; ++i) {
                    if (skip_vertex(i)) continue;
                    const Vec2 d = dev[static_cast<std::size_t>(i)] - apex;
                    const double dist = norm(d);
                    if (dist > reach || dist <= eps) continue;
                    const double rel = angle_from(w.right, d);
                    const double tol = eps / dist;
                    if (rel < -tol || rel > w.width + tol) continue;
                    if (w.right_open && rel <= tol) continue;
                    if (w.left_open && rel >= w.width - tol) continue;
                    const Corner end{cur.chart, i};
                    if (!is_cone(end)) continue;

                    SaddleConnection sc;
                    sc.start_cone = cone.id;
                    sc.end_cone = s.cone_of_class(s.class_of(end));
                    sc.length = dist;
                    sc.departure_chart = root.chart;
                    sc.arrival_chart = cur.chart;
                    sc.displacement = d;
                    const double rel_root = std::clamp(angle_from(r0, d), 0.0, s.interior_angle(root));
                    sc.start_coordinate = wrap(vc.corner_offsets[k] + rel_root, vc.angle_radians);
                    const Isometry back = cur.develop.inverse();
                    sc.arrival_vector = back.apply_linear(d);
                    sc.corridor_rotation = back.rotation();
                    sc.end_coordinate = cone_coordinate(s, end, direction_angle(-sc.arrival_vector));

                    const double theta_s = vc.angle_radians;
                    const double theta_e =
                        s.cone_points()[static_cast<std::size_t>(sc.end_cone)].angle_radians;
                    const std::pair<int, std::int64_t> head{sc.start_cone, quantize(sc.start_coordinate, theta_s)};
                    const std::pair<int, std::int64_t> tail{sc.end_cone, quantize(sc.end_coordinate, theta_e)};
                    // keep only the discovery made in canonical orientation
                    if (tail < head) continue;
                    found.try_emplace(Key{head.first, head.second, tail.first, tail.second}, sc);
                }

                for (int e = 0; e < n; ++e) {
                    if (e == cur.entry_edge) continue;
                    if (is_root && (e == root.vertex || e == (root.vertex + n - 1) % n)) continue;
                    const Vec2 a = dev[static_cast<std::size_t>(e)];
                    const Vec2 b = dev[static_cast<std::size_t>((e + 1) % n)];
                    if (orient(a, b, apex) <= 0.0) continue;  // faces the apex
                    if (point_segment_distance(apex, a, b) > reach) continue;

                    const double ra = angle_from(w.right, a - apex);
                    const double rb = angle_from(w.right, b - apex);
                    const double tol_a = eps / std::max(norm(a - apex), eps);
                    const double tol_b = eps / std::max(norm(b - apex), eps);
                    const Corner ca{cur.chart, e};
                    const Corner cb{cur.chart, (e + 1) % n};

                    Wedge child;
                    double lo = 0.0, hi = w.width;
                    child.right = w.right;
                    child.left = w.left;
                    child.right_open = w.right_open;
                    child.left_open = w.left_open;
                    if (ra > tol_a) {
                        lo = ra;
                        child.right = normalized(a - apex);
                        child.right_open = is_cone(ca);
                    } else if (ra >= -tol_a) {
                        child.right_open = w.right_open || is_cone(ca);
                    }
                    if (rb < w.width - tol_b) {
                        hi = rb;
                        child.left = normalized(b - apex);
                        child.left_open = is_cone(cb);
                    } else if (rb <= w.width + tol_b) {
                        child.left_open = w.left_open || is_cone(cb);
                    }
                    if (hi - lo <= 1e-14) continue;
                    child.width = hi - lo;

                    const EdgeLink& link = s.link({cur.chart, e});
                    queue.push_back({link.partner.chart, cur.develop.compose(link.to_partner.inverse()),
                                     link.partner.edge, child});
                }
            }
        }
    }

    std::vector<SaddleConnection> out;
    out.reserve(found.size());
    for (auto& [key, sc] : found) out.push_back(sc);
    std::sort(out.begin(), out.end(), [](const SaddleConnection& x, const SaddleConnection& y) {
        if (x.length != y.length) return x.length < y.length;
        const double ax = direction_angle(x.displacement);
        const double ay = direction_angle(y.displacement);
        if (ax != ay) return ax < ay;
        return std::tie(x.start_cone, x.end_cone) < std::tie(y.start_cone, y.end_cone);
    });
    return out;
}

}  // namespace flatcone
