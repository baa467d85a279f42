#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "flatcone/surface.hpp"

namespace flatcone {

/// A point with a unit tangent direction, in the coordinates of one chart.
struct DirectedPoint {
    int chart = 0;
    PlanePoint position;
    double direction = 0.0;  // radians in [0, 2*pi)
};

struct PathSegment {
    int chart = 0;
    PlanePoint from;
    PlanePoint to;
    double length = 0.0;
};

struct CrossingEvent {
    EdgeRef edge;
    PlanePoint exit_point;
    int gluing = -1;
};

struct ConePointHit {
    int cone_point = -1;
    int vertex_class = -1;
    Corner corner;                  // corner of the arrival chart at the hit vertex
    double arrival_direction = 0.0;  // direction of travel, arrival chart coordinates
};

enum class Terminal { LengthReached, ConePointHit };

struct GeodesicPath {
    DirectedPoint start;
    std::vector<PathSegment> segments;
    std::vector<CrossingEvent> crossings;
    double length = 0.0;
    Terminal terminal = Terminal::LengthReached;
    std::optional<ConePointHit> hit;
    /// Where the path stopped, with its direction of travel there.
    DirectedPoint end;
};

class NumericalStall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Follows the straight line from start for max_length, applying gluing
/// isometries at edge crossings. Stops early on arrival (within eps_geom) at
/// a cone point or retained marked point; regular vertices are passed straight
/// through. Throws NumericalStall when steps stop making progress.
GeodesicPath trace(const FlatConeSurface& surface, const DirectedPoint& start, double max_length);

enum class Side { Left, Right };

/// Angular coordinate in [0, theta) of a chart direction leaving the vertex of
/// `corner`, measured counterclockwise from the first corner of its class.
double cone_coordinate(const FlatConeSurface& surface, const Corner& corner, double chart_direction);

/// Chart position and direction leaving the point of vertex_class at angular coordinate alpha.
DirectedPoint departure_at(const FlatConeSurface& surface, int vertex_class, double alpha);

/// Cone coordinates of the Left and Right departures for an arrival whose
/// backward direction has coordinate back. Left leaves angle pi on the
/// traveller's left, Right leaves angle pi on the right.
struct Departures {
    double left = 0.0;
    double right = 0.0;
};
Departures departure_coordinates(const FlatConeSurface& surface, int vertex_class, double back);

/// Continuation of a path through a cone point turning angle pi on the chosen side.
DirectedPoint continue_at_cone_point(const FlatConeSurface& surface, const ConePointHit& hit, Side side);

/// Members of the closure of nonsingular geodesics turn angle pi on one side
/// at each cone point and switch that side at most once.
bool is_admissible_limit_path(std::span<const Side> sides);

/// Fraction in [0, 1] of grid cells entered by the traced path. Each chart's
/// bounding box is split into resolution x resolution cells; only cells that
/// meet the chart's interior count.
double density_profile(const FlatConeSurface& surface, const DirectedPoint& start, double total_length,
                       int grid_resolution);

}  // namespace flatcone
