#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "flatcone/surface.hpp"

namespace flatcone {

/// One step of a closed curve across a glued edge. With direction +1 the curve
/// leaves edge.chart through edge; with -1 it enters edge.chart through edge
/// (so the same gluing crossed the other way).
struct Crossing {
    EdgeRef edge;
    int direction = 1;
    friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// A closed curve presented by the cyclic sequence of its edge crossings.
struct DualGraphLoop {
    std::vector<Crossing> crossings;
};

/// Closed-curve homotopy classes use the same presentation.
using CurveWord = DualGraphLoop;

class OpenLoop : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The edge through which a crossing leaves its chart.
EdgeRef exit_edge(const FlatConeSurface& surface, const Crossing& c);

/// The same crossing written as leaving a chart (direction +1).
Crossing as_exit(const FlatConeSurface& surface, const Crossing& c);

/// Reversed curve: crossings in reverse order with opposite directions.
DualGraphLoop inverse(const DualGraphLoop& loop);

/// Concatenation a then b.
DualGraphLoop concatenate(const DualGraphLoop& a, const DualGraphLoop& b);

/// Composed rotation picked up by a tangent vector carried once around the loop.
/// Throws OpenLoop when consecutive crossings do not share a chart or the
/// sequence does not return to its first chart, std::out_of_range on bad edges.
RotationClass transport(const FlatConeSurface& surface, const DualGraphLoop& loop);

/// Small clockwise loop around the point of a vertex class, starting in the
/// chart of its first corner. Its transport equals the total angle mod 2*pi.
DualGraphLoop cone_loop(const FlatConeSurface& surface, int vertex_class);

/// Generators of the holonomy: one loop per gluing outside a breadth-first
/// spanning tree of the chart adjacency graph (rooted at chart 0), followed by
/// one cone_loop per cone point.
std::vector<DualGraphLoop> generating_loops(const FlatConeSurface& surface);

struct LoopRotation {
    DualGraphLoop loop;
    int gluing = -1;  // the non-tree gluing the loop closes through
    RotationClass rotation;
};

struct ConeRotation {
    int cone_point = 0;
    RotationClass rotation;  // theta(p) mod 2*pi
};

struct HolonomyWitness {
    std::string kind;  // "gluing_loop" or "cone_loop"
    int index = 0;     // gluing index or cone point id
    RotationClass rotation;
};

struct HolonomyReport {
    std::vector<LoopRotation> generator_rotations;
    std::vector<ConeRotation> cone_rotations;
    bool group_is_pm_identity = true;
    /// Some cone angle is only known approximately.
    bool approximate = false;
    std::vector<HolonomyWitness> witnesses;
};

/// Decides whether every holonomy rotation lies in {0, pi}.
HolonomyReport holonomy_condition(const FlatConeSurface& surface);

struct QuadraticDifferentialDecision {
    bool yes = false;
    bool approximate = false;
    AngleConditionResult angles;
    HolonomyReport holonomy;
    std::vector<std::string> reasons;
};

/// The metric comes from a holomorphic quadratic differential exactly when
/// every cone angle is k*pi with k >= 3 and the holonomy lies in {+Id, -Id}.
QuadraticDifferentialDecision is_quadratic_differential_metric(const FlatConeSurface& surface);

}  // namespace flatcone
