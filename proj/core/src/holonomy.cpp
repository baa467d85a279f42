#include "flatcone/holonomy.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace flatcone {

EdgeRef exit_edge(const FlatConeSurface& s, const Crossing& c) {
    if (c.edge.chart < 0 || c.edge.chart >= static_cast<int>(s.chart_count()) || c.edge.edge < 0 ||
        c.edge.edge >= s.vertex_count(c.edge.chart)) {
        throw std::out_of_range("crossing refers to a missing edge");
    }
    if (c.direction == 1) return c.edge;
    if (c.direction == -1) return s.link(c.edge).partner;
    throw std::invalid_argument("crossing direction must be +1 or -1");
}

Crossing as_exit(const FlatConeSurface& s, const Crossing& c) { return {exit_edge(s, c), 1}; }

DualGraphLoop inverse(const DualGraphLoop& loop) {
    DualGraphLoop out;
    out.crossings.reserve(loop.crossings.size());
    for (auto it = loop.crossings.rbegin(); it != loop.crossings.rend(); ++it) {
        out.crossings.push_back({it->edge, -it->direction});
    }
    return out;
}

DualGraphLoop concatenate(const DualGraphLoop& a, const DualGraphLoop& b) {
    DualGraphLoop out = a;
    out.crossings.insert(out.crossings.end(), b.crossings.begin(), b.crossings.end());
    return out;
}

RotationClass transport(const FlatConeSurface& s, const DualGraphLoop& loop) {
    RotationClass total;
    if (loop.crossings.empty()) return total;
    const int start = exit_edge(s, loop.crossings.front()).chart;
    int current = start;
    for (std::size_t i = 0; i < loop.crossings.size(); ++i) {
        const EdgeRef e = exit_edge(s, loop.crossings[i]);
        if (e.chart != current) {
            std::ostringstream os;
            os << "crossing " << i << " leaves chart " << s.chart(e.chart).id << " but the curve is in chart "
               << s.chart(current).id;
            throw OpenLoop(os.str());
        }
        const EdgeLink& link = s.link(e);
        total += link.to_partner.rotation();
        current = link.partner.chart;
    }
    if (current != start) {
        throw OpenLoop("curve ends in chart " + std::to_string(s.chart(current).id) + ", not in chart " +
                       std::to_string(s.chart(start).id));
    }
    return total;
}

DualGraphLoop cone_loop(const FlatConeSurface& s, int vertex_class) {
    const VertexClass& vc = s.vertex_classes().at(static_cast<std::size_t>(vertex_class));
    DualGraphLoop loop;
    Corner c = vc.corners.front();
    for (std::size_t i = 0; i < vc.corners.size(); ++i) {
        loop.crossings.push_back({{c.chart, c.vertex}, 1});
        c = s.cw_next(c);
    }
    return loop;
}

namespace {

struct Tree {
    std::vector<EdgeRef> parent_exit;  // exit edge in the parent chart leading here
    std::vector<bool> tree_gluing;
};

Tree spanning_tree(const FlatConeSurface& s) {
    const std::size_t n = s.chart_count();
    Tree t;
    t.parent_exit.assign(n, EdgeRef{-1, -1});
    t.tree_gluing.assign(s.gluings().size(), false);
    std::vector<bool> seen(n, false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        for (int e = 0; e < s.vertex_count(c); ++e) {
            const EdgeLink& link = s.link({c, e});
            const auto next = static_cast<std::size_t>(link.partner.chart);
            if (seen[next]) continue;
            seen[next] = true;
            t.parent_exit[next] = {c, e};
            t.tree_gluing[static_cast<std::size_t>(link.gluing)] = true;
            queue.push_back(link.partner.chart);
        }
    }
    return t;
}

// Crossings from the root down to chart c.
std::vector<Crossing> path_from_root(const Tree& t, int c) {
    std::vector<Crossing> out;
    while (c != 0) {
        const EdgeRef e = t.parent_exit[static_cast<std::size_t>(c)];
        out.push_back({e, 1});
        c = e.chart;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<DualGraphLoop> generating_loops(const FlatConeSurface& s) {
    std::vector<DualGraphLoop> loops;
    const Tree t = spanning_tree(s);
    for (std::size_t g = 0; g < s.gluings().size(); ++g) {
        if (t.tree_gluing[g]) continue;
        const EdgeGluing& gl = s.gluings()[g];
        DualGraphLoop loop;
        loop.crossings = path_from_root(t, gl.from.chart);
        loop.crossings.push_back({gl.from, 1});
        DualGraphLoop back;
        back.crossings = path_from_root(t, gl.to.chart);
        loops.push_back(concatenate(loop, inverse(back)));
    }
    for (const ConePoint& cp : s.cone_points()) loops.push_back(cone_loop(s, cp.vertex_class));
    return loops;
}

HolonomyReport holonomy_condition(const FlatConeSurface& s) {
    HolonomyReport r;
    const Tree t = spanning_tree(s);
    const std::vector<DualGraphLoop> loops = generating_loops(s);
    std::size_t next = 0;
    for (std::size_t g = 0; g < s.gluings().size(); ++g) {
        if (t.tree_gluing[g]) continue;
        const DualGraphLoop& loop = loops[next++];
        LoopRotation lr{loop, static_cast<int>(g), transport(s, loop)};
        if (!lr.rotation.is_plus_minus_identity()) {
            r.group_is_pm_identity = false;
            r.witnesses.push_back({"gluing_loop", lr.gluing, lr.rotation});
        }
        r.generator_rotations.push_back(std::move(lr));
    }
    for (const ConePoint& cp : s.cone_points()) {
        const ConeRotation cr{cp.id, transport(s, loops[next++])};
        if (!cr.rotation.is_plus_minus_identity()) {
            r.group_is_pm_identity = false;
            r.witnesses.push_back({"cone_loop", cp.id, cr.rotation});
        }
        r.cone_rotations.push_back(cr);
    }
    r.approximate = !s.all_angles_exact();
    return r;
}

QuadraticDifferentialDecision is_quadratic_differential_metric(const FlatConeSurface& s) {
    QuadraticDifferentialDecision d;
    d.angles = angle_condition(s);
    d.holonomy = holonomy_condition(s);
    d.approximate = d.angles.approximate || d.holonomy.approximate;
    for (const AngleWitness& w : d.angles.witnesses) {
        std::ostringstream os;
        os << "cone point " << w.cone_point << " has angle ";
        if (w.angle) {
            os << w.angle->to_string() << " pi";
        } else {
            os << w.angle_radians << " rad";
        }
        os << ", not an integer multiple of pi at least 3";
        d.reasons.push_back(os.str());
    }
    for (const HolonomyWitness& w : d.holonomy.witnesses) {
        std::ostringstream os;
        os << (w.kind == "cone_loop" ? "loop around cone point " : "loop through gluing ") << w.index
           << " rotates by " << w.rotation.to_string() << " pi";
        d.reasons.push_back(os.str());
    }
    d.yes = d.angles.holds && d.holonomy.group_is_pm_identity;
    return d;
}

}  // namespace flatcone
