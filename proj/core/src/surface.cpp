#include "flatcone/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace flatcone {

const char* to_string(SurfaceErrc code) {
    switch (code) {
        case SurfaceErrc::InvalidChart: return "InvalidChart";
        case SurfaceErrc::InvalidGluing: return "InvalidGluing";
        case SurfaceErrc::EdgeLengthMismatch: return "EdgeLengthMismatch";
        case SurfaceErrc::OrientationError: return "OrientationError";
        case SurfaceErrc::Disconnected: return "Disconnected";
        case SurfaceErrc::NonClosed: return "NonClosed";
        case SurfaceErrc::GaussBonnetViolation: return "GaussBonnetViolation";
        case SurfaceErrc::PositiveCurvature: return "PositiveCurvature";
        case SurfaceErrc::Parse: return "Parse";
    }
    return "Unknown";
}

bool VertexClass::singular() const {
    if (exact) return angle != PiMultiple::integer(2);
    return std::abs(angle_radians - kTwoPi) > kEpsAngle;
}

namespace {

std::string edge_name(const std::vector<PolygonChart>& charts, const EdgeRef& e) {
    std::ostringstream os;
    os << "(chart " << charts[static_cast<std::size_t>(e.chart)].id << ", edge " << e.edge << ")";
    return os.str();
}

bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps) {
    const double d1 = orient(c, d, a);
    const double d2 = orient(c, d, b);
    const double d3 = orient(a, b, c);
    const double d4 = orient(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    return point_segment_distance(a, c, d) <= eps || point_segment_distance(b, c, d) <= eps ||
           point_segment_distance(c, a, b) <= eps || point_segment_distance(d, a, b) <= eps;
}

void validate_chart(const PolygonChart& chart, double eps) {
    const auto n = chart.vertices.size();
    auto fail = [&](const std::string& why) {
        throw SurfaceError(SurfaceErrc::InvalidChart, "chart " + std::to_string(chart.id) + ": " + why);
    };
    if (n < 3) fail("fewer than 3 vertices");
    for (const auto& v : chart.vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) fail("non-finite coordinate");
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) area2 += cross(chart.vertices[i], chart.vertices[(i + 1) % n]);
    if (!(area2 > 0.0)) fail("not counterclockwise or zero area");
    for (std::size_t i = 0; i < n; ++i) {
        if (distance(chart.vertices[i], chart.vertices[(i + 1) % n]) <= eps) fail("degenerate edge");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            const Vec2& a = chart.vertices[i];
            const Vec2& b = chart.vertices[(i + 1) % n];
            const Vec2& c = chart.vertices[j];
            const Vec2& d = chart.vertices[(j + 1) % n];
            if (segments_touch(a, b, c, d, eps)) fail("self-intersecting boundary");
        }
    }
}

}  // namespace

FlatConeSurface FlatConeSurface::build(std::vector<PolygonChart> charts, const std::vector<GluingSpec>& specs,
                                       const BuildOptions& options) {
    FlatConeSurface s;
    s.options_ = options;
    const double eps = options.eps_geom;

    if (charts.empty()) throw SurfaceError(SurfaceErrc::InvalidChart, "no polygons");
    {
        std::set<int> ids;
        for (const auto& c : charts) {
            validate_chart(c, eps);
            if (!ids.insert(c.id).second) {
                throw SurfaceError(SurfaceErrc::InvalidChart, "duplicate chart id " + std::to_string(c.id));
            }
        }
    }
    s.charts_ = std::move(charts);

    std::size_t slots = 0;
    for (const auto& c : s.charts_) {
        s.chart_offset_.push_back(slots);
        slots += c.vertices.size();
    }
    s.links_.assign(slots, EdgeLink{});

    // interior angles
    s.interior_.assign(slots, 0.0);
    s.interior_exact_.assign(slots, std::nullopt);
    for (int ci = 0; ci < static_cast<int>(s.charts_.size()); ++ci) {
        bool convex = true;
        const int n = s.vertex_count(ci);
        for (int v = 0; v < n; ++v) {
            const Corner corner{ci, v};
            const Vec2 p = s.vertex(corner);
            const Vec2 out = s.vertex({ci, (v + 1) % n}) - p;
            const Vec2 in = s.vertex({ci, (v + n - 1) % n}) - p;
            const double a = wrap(direction_angle(in) - direction_angle(out), kTwoPi);
            if (a <= options.eps_angle || a >= kTwoPi - options.eps_angle) {
                throw SurfaceError(SurfaceErrc::InvalidChart,
                                   "chart " + std::to_string(s.charts_[ci].id) + ": degenerate corner");
            }
            if (a > std::numbers::pi + options.eps_angle) convex = false;
            s.interior_[s.corner_slot(corner)] = a;
            s.interior_exact_[s.corner_slot(corner)] =
                recognize_pi_multiple(a, options.max_angle_denominator, options.eps_angle);
        }
        s.convex_.push_back(convex);
    }

    // gluings
    std::vector<bool> used(slots, false);
    for (const auto& spec : specs) {
        for (const EdgeRef& e : {spec.from, spec.to}) {
            if (e.chart < 0 || e.chart >= static_cast<int>(s.charts_.size()) || e.edge < 0 ||
                e.edge >= s.vertex_count(e.chart)) {
                throw SurfaceError(SurfaceErrc::InvalidGluing, "edge reference out of range");
            }
            const std::size_t slot = s.chart_offset_[static_cast<std::size_t>(e.chart)] + static_cast<std::size_t>(e.edge);
            if (used[slot]) {
                throw SurfaceError(SurfaceErrc::InvalidGluing, edge_name(s.charts_, e) + " glued more than once");
            }
            used[slot] = true;
        }

        const Vec2 a0 = s.edge_start(spec.from);
        const Vec2 a1 = s.edge_end(spec.from);
        const Vec2 b0 = s.edge_start(spec.to);
        const Vec2 b1 = s.edge_end(spec.to);
        const double la = distance(a0, a1);
        const double lb = distance(b0, b1);
        if (std::abs(la - lb) > eps) {
            std::ostringstream os;
            os << edge_name(s.charts_, spec.from) << " has length " << la << " but " << edge_name(s.charts_, spec.to)
               << " has length " << lb;
            throw SurfaceError(SurfaceErrc::EdgeLengthMismatch, os.str());
        }

        RotationClass rot;
        if (spec.rotation) {
            rot = *spec.rotation;
        } else {
            const double want = direction_angle(b0 - b1) - direction_angle(a1 - a0);
            auto r = recognize_pi_multiple(wrap(want, kTwoPi), options.max_angle_denominator, options.eps_angle);
            if (!r) {
                throw SurfaceError(SurfaceErrc::InvalidGluing,
                                   "rotation for " + edge_name(s.charts_, spec.from) + " is not a rational multiple of pi");
            }
            rot = RotationClass(*r);
        }
        const Vec2 turned = rotate(a1 - a0, rot);
        if (distance(turned, b0 - b1) > eps) {
            throw SurfaceError(SurfaceErrc::OrientationError,
                               "rotation " + rot.to_string() + "pi does not carry " + edge_name(s.charts_, spec.from) +
                                   " onto the reverse of " + edge_name(s.charts_, spec.to));
        }
        const Vec2 inferred = b1 - rotate(a0, rot);
        Vec2 translation = inferred;
        if (spec.translation) {
            if (distance(*spec.translation, inferred) > eps) {
                throw SurfaceError(SurfaceErrc::OrientationError,
                                   "translation does not carry " + edge_name(s.charts_, spec.from) + " onto " +
                                       edge_name(s.charts_, spec.to));
            }
            translation = *spec.translation;
        }

        const int gi = static_cast<int>(s.gluings_.size());
        s.gluings_.push_back({spec.from, spec.to, rot, translation});
        const Isometry fwd(rot, translation);
        s.links_[s.chart_offset_[static_cast<std::size_t>(spec.from.chart)] + static_cast<std::size_t>(spec.from.edge)] =
            EdgeLink{spec.to, fwd, gi};
        s.links_[s.chart_offset_[static_cast<std::size_t>(spec.to.chart)] + static_cast<std::size_t>(spec.to.edge)] =
            EdgeLink{spec.from, fwd.inverse(), gi};
    }
    for (int ci = 0; ci < static_cast<int>(s.charts_.size()); ++ci) {
        for (int e = 0; e < s.vertex_count(ci); ++e) {
            if (!used[s.chart_offset_[static_cast<std::size_t>(ci)] + static_cast<std::size_t>(e)]) {
                throw SurfaceError(SurfaceErrc::NonClosed, edge_name(s.charts_, {ci, e}) + " is not glued");
            }
        }
    }

    // connectivity of the chart adjacency graph
    {
        std::vector<bool> seen(s.charts_.size(), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const int c = stack.back();
            stack.pop_back();
            for (int e = 0; e < s.vertex_count(c); ++e) {
                const int d = s.link({c, e}).partner.chart;
                if (!seen[static_cast<std::size_t>(d)]) {
                    seen[static_cast<std::size_t>(d)] = true;
                    stack.push_back(d);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw SurfaceError(SurfaceErrc::Disconnected, "glued charts form more than one component");
        }
    }

    // vertex classes by corner chasing
    s.corner_class_.assign(slots, -1);
    s.corner_position_.assign(slots, -1);
    for (int ci = 0; ci < static_cast<int>(s.charts_.size()); ++ci) {
        for (int v = 0; v < s.vertex_count(ci); ++v) {
            const Corner start{ci, v};
            if (s.corner_class_[s.corner_slot(start)] >= 0) continue;
            VertexClass vc;
            vc.id = static_cast<int>(s.classes_.size());
            bool exact = true;
            PiMultiple exact_sum;
            double sum = 0.0;
            RotationClass turn;
            Corner cur = start;
            do {
                const std::size_t slot = s.corner_slot(cur);
                s.corner_class_[slot] = vc.id;
                s.corner_position_[slot] = static_cast<int>(vc.corners.size());
                vc.corners.push_back(cur);
                vc.corner_offsets.push_back(exact ? exact_sum.radians() : sum);
                sum += s.interior_[slot];
                if (exact && s.interior_exact_[slot]) {
                    exact_sum += *s.interior_exact_[slot];
                } else {
                    exact = false;
                }
                const int n = s.vertex_count(cur.chart);
                turn += s.link({cur.chart, (cur.vertex + n - 1) % n}).to_partner.rotation();
                cur = s.ccw_next(cur);
            } while (cur != start);
            vc.exact = exact;
            if (exact) {
                vc.angle = exact_sum;
                vc.angle_radians = exact_sum.radians();
                // going once around the point turns the frame by -theta
                if (!(turn + RotationClass(exact_sum)).is_identity()) {
                    throw SurfaceError(SurfaceErrc::GaussBonnetViolation,
                                       "corner angles at vertex class " + std::to_string(vc.id) +
                                           " disagree with the gluing rotations");
                }
            } else {
                vc.angle_radians = sum;
            }
            s.classes_.push_back(std::move(vc));
        }
    }

    const int V = static_cast<int>(s.classes_.size());
    const int E = static_cast<int>(s.gluings_.size());
    const int F = static_cast<int>(s.charts_.size());
    s.euler_ = V - E + F;

    // Gauss-Bonnet: sum (2pi - theta) = 2pi chi
    if (s.all_angles_exact()) {
        PiMultiple total;
        for (const auto& vc : s.classes_) total += PiMultiple::integer(2) - vc.angle;
        if (total != PiMultiple::integer(2 * s.euler_)) {
            throw SurfaceError(SurfaceErrc::GaussBonnetViolation,
                               "angle defects sum to " + total.to_string() + "pi, expected " +
                                   std::to_string(2 * s.euler_) + "pi");
        }
    } else {
        double total = 0.0;
        for (const auto& vc : s.classes_) total += kTwoPi - vc.angle_radians;
        if (std::abs(total - kTwoPi * s.euler_) > options.eps_angle * std::max(1, V) * 10.0) {
            throw SurfaceError(SurfaceErrc::GaussBonnetViolation, "angle defects disagree with Euler characteristic");
        }
    }
    if (s.euler_ % 2 != 0) {
        throw SurfaceError(SurfaceErrc::GaussBonnetViolation, "odd Euler characteristic for a closed oriented surface");
    }

    s.class_to_cone_.assign(s.classes_.size(), -1);
    for (const auto& vc : s.classes_) {
        const bool below = vc.exact ? vc.angle < PiMultiple::integer(2)
                                    : vc.angle_radians < kTwoPi - options.eps_angle;
        if (below && !options.allow_positive_curvature) {
            std::ostringstream os;
            os << "vertex class " << vc.id << " has cone angle "
               << (vc.exact ? vc.angle.to_string() + "pi" : std::to_string(vc.angle_radians)) << " < 2pi";
            throw SurfaceError(SurfaceErrc::PositiveCurvature, os.str());
        }
        const bool singular = vc.singular();
        if (!singular && !options.retain_marked_points) continue;
        ConePoint cp;
        cp.id = static_cast<int>(s.cone_points_.size());
        cp.vertex_class = vc.id;
        cp.angle = vc.angle;
        cp.angle_radians = vc.angle_radians;
        cp.exact = vc.exact;
        cp.marked = !singular;
        s.class_to_cone_[static_cast<std::size_t>(vc.id)] = cp.id;
        s.cone_points_.push_back(cp);
    }
    return s;
}

std::size_t FlatConeSurface::corner_slot(const Corner& c) const {
    return chart_offset_.at(static_cast<std::size_t>(c.chart)) + static_cast<std::size_t>(c.vertex);
}

int FlatConeSurface::chart_index(int id) const {
    for (std::size_t i = 0; i < charts_.size(); ++i) {
        if (charts_[i].id == id) return static_cast<int>(i);
    }
    throw std::out_of_range("no chart with id " + std::to_string(id));
}

bool FlatConeSurface::all_charts_convex() const {
    return std::all_of(convex_.begin(), convex_.end(), [](bool b) { return b; });
}

const PlanePoint& FlatConeSurface::vertex(const Corner& c) const {
    return chart(c.chart).vertices.at(static_cast<std::size_t>(c.vertex));
}

PlanePoint FlatConeSurface::edge_start(const EdgeRef& e) const { return vertex({e.chart, e.edge}); }

PlanePoint FlatConeSurface::edge_end(const EdgeRef& e) const {
    return vertex({e.chart, (e.edge + 1) % vertex_count(e.chart)});
}

const EdgeLink& FlatConeSurface::link(const EdgeRef& e) const {
    if (e.chart < 0 || e.chart >= static_cast<int>(charts_.size()) || e.edge < 0 || e.edge >= vertex_count(e.chart)) {
        throw std::out_of_range("edge reference out of range");
    }
    return links_[chart_offset_[static_cast<std::size_t>(e.chart)] + static_cast<std::size_t>(e.edge)];
}

double FlatConeSurface::interior_angle(const Corner& c) const { return interior_.at(corner_slot(c)); }

const std::optional<PiMultiple>& FlatConeSurface::interior_angle_exact(const Corner& c) const {
    return interior_exact_.at(corner_slot(c));
}

double FlatConeSurface::corner_start_direction(const Corner& c) const {
    const int n = vertex_count(c.chart);
    return direction_angle(vertex({c.chart, (c.vertex + 1) % n}) - vertex(c));
}

Corner FlatConeSurface::ccw_next(const Corner& c) const {
    const int n = vertex_count(c.chart);
    const EdgeRef p = link({c.chart, (c.vertex + n - 1) % n}).partner;
    return {p.chart, p.edge};
}

Corner FlatConeSurface::cw_next(const Corner& c) const {
    const EdgeRef p = link({c.chart, c.vertex}).partner;
    return {p.chart, (p.edge + 1) % vertex_count(p.chart)};
}

int FlatConeSurface::class_of(const Corner& c) const { return corner_class_.at(corner_slot(c)); }

int FlatConeSurface::position_in_class(const Corner& c) const { return corner_position_.at(corner_slot(c)); }

bool FlatConeSurface::all_angles_exact() const {
    return std::all_of(classes_.begin(), classes_.end(), [](const VertexClass& v) { return v.exact; });
}

std::vector<ConePoint> cone_angles(const FlatConeSurface& surface) {
    std::vector<ConePoint> out;
    for (const auto& cp : surface.cone_points()) {
        if (!cp.marked) out.push_back(cp);
    }
    return out;
}

AngleConditionResult angle_condition(const FlatConeSurface& surface) {
    AngleConditionResult r;
    for (const auto& cp : cone_angles(surface)) {
        bool ok = false;
        if (cp.exact) {
            ok = cp.angle.is_integer() && cp.angle.numerator() >= 3;
        } else {
            r.approximate = true;
            const double k = cp.angle_radians / std::numbers::pi;
            const double nearest = std::round(k);
            ok = std::abs(k - nearest) * std::numbers::pi <= surface.options().eps_angle && nearest >= 3.0;
        }
        if (!ok) {
            AngleWitness w{cp.id, cp.angle_radians, std::nullopt};
            if (cp.exact) w.angle = cp.angle;
            r.witnesses.push_back(w);
        }
    }
    r.holds = r.witnesses.empty();
    return r;
}

}  // namespace flatcone
