#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatcone/geometry.hpp"
#include "flatcone/rational.hpp"

namespace flatcone {

/// A Euclidean polygon given counterclockwise in its own chart coordinates.
struct PolygonChart {
    int id = 0;
    std::vector<PlanePoint> vertices;
};

/// Edge `edge` of the chart at position `chart` runs from vertex edge to vertex edge+1.
struct EdgeRef {
    int chart = 0;
    int edge = 0;
    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

/// The corner of a chart at one of its vertices.
struct Corner {
    int chart = 0;
    int vertex = 0;
    friend bool operator==(const Corner&, const Corner&) = default;
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

/// Gluing as read from input. Missing rotation or translation is inferred
/// from the edge endpoints.
struct GluingSpec {
    EdgeRef from;
    EdgeRef to;
    std::optional<RotationClass> rotation;
    std::optional<PlanePoint> translation;
};

/// A resolved gluing: z -> R(rotation) z + translation maps the from-edge onto
/// the to-edge with reversed orientation.
struct EdgeGluing {
    EdgeRef from;
    EdgeRef to;
    RotationClass rotation;
    PlanePoint translation;
};

/// Crossing data for one side of a gluing, stored per edge.
struct EdgeLink {
    EdgeRef partner;
    Isometry to_partner;  // chart coordinates of edge.chart -> partner.chart
    int gluing = -1;
};

/// One point of the glued surface arising from polygon vertices.
struct VertexClass {
    int id = 0;
    std::vector<Corner> corners;          // counterclockwise around the point
    std::vector<double> corner_offsets;   // angle at which each corner's wedge starts
    PiMultiple angle;                     // meaningful when exact
    double angle_radians = 0.0;
    bool exact = false;

    /// Total angle differs from 2*pi.
    bool singular() const;
};

struct ConePoint {
    int id = 0;
    int vertex_class = 0;
    PiMultiple angle;
    double angle_radians = 0.0;
    bool exact = false;
    bool marked = false;  // a retained point of angle 2*pi
};

struct BuildOptions {
    double eps_geom = kEpsGeom;
    double eps_angle = kEpsAngle;
    /// Keep angle-2*pi vertex classes as marked points (saddle-connection endpoints).
    bool retain_marked_points = false;
    /// Accept cone angles below 2*pi.
    bool allow_positive_curvature = false;
    /// Largest denominator tried when recognising interior angles as rational multiples of pi.
    std::int64_t max_angle_denominator = 1000;
};

enum class SurfaceErrc {
    InvalidChart,
    InvalidGluing,
    EdgeLengthMismatch,
    OrientationError,
    Disconnected,
    NonClosed,
    GaussBonnetViolation,
    PositiveCurvature,
    Parse,
};

const char* to_string(SurfaceErrc code);

class SurfaceError : public std::runtime_error {
public:
    SurfaceError(SurfaceErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    SurfaceErrc code() const { return code_; }

private:
    SurfaceErrc code_;
};

/// Polygons with edge gluings, validated into a closed oriented flat cone
/// surface. Immutable once built.
class FlatConeSurface {
public:
    static FlatConeSurface build(std::vector<PolygonChart> charts, const std::vector<GluingSpec>& gluings,
                                 const BuildOptions& options = {});

    const BuildOptions& options() const { return options_; }

    const std::vector<PolygonChart>& charts() const { return charts_; }
    std::size_t chart_count() const { return charts_.size(); }
    const PolygonChart& chart(int index) const { return charts_.at(static_cast<std::size_t>(index)); }
    int vertex_count(int chart) const { return static_cast<int>(this->chart(chart).vertices.size()); }
    /// Position of the chart with the given id. Throws std::out_of_range.
    int chart_index(int id) const;
    bool chart_is_convex(int chart) const { return convex_.at(static_cast<std::size_t>(chart)); }
    bool all_charts_convex() const;

    const PlanePoint& vertex(const Corner& c) const;
    PlanePoint edge_start(const EdgeRef& e) const;
    PlanePoint edge_end(const EdgeRef& e) const;

    const std::vector<EdgeGluing>& gluings() const { return gluings_; }
    const EdgeLink& link(const EdgeRef& e) const;

    /// Interior angle of a corner in radians, and its exact value when recognised.
    double interior_angle(const Corner& c) const;
    const std::optional<PiMultiple>& interior_angle_exact(const Corner& c) const;
    /// Chart direction of the edge leaving the corner's vertex counterclockwise-first.
    double corner_start_direction(const Corner& c) const;

    /// Next corner counterclockwise around the same point (crosses edge vertex-1).
    Corner ccw_next(const Corner& c) const;
    /// Next corner clockwise around the same point (crosses edge vertex).
    Corner cw_next(const Corner& c) const;

    const std::vector<VertexClass>& vertex_classes() const { return classes_; }
    int class_of(const Corner& c) const;
    /// Index of the corner within its class's counterclockwise corner list.
    int position_in_class(const Corner& c) const;

    /// Cone points: classes with angle != 2*pi, plus retained marked points.
    const std::vector<ConePoint>& cone_points() const { return cone_points_; }
    /// Cone point id for a vertex class, or -1 when it is a regular point.
    int cone_of_class(int vertex_class) const { return class_to_cone_.at(static_cast<std::size_t>(vertex_class)); }

    int euler_characteristic() const { return euler_; }
    int genus() const { return (2 - euler_) / 2; }
    bool all_angles_exact() const;

private:
    FlatConeSurface() = default;

    std::size_t corner_slot(const Corner& c) const;

    BuildOptions options_;
    std::vector<PolygonChart> charts_;
    std::vector<bool> convex_;
    std::vector<std::size_t> chart_offset_;  // first corner/edge slot per chart
    std::vector<EdgeGluing> gluings_;
    std::vector<EdgeLink> links_;             // per edge slot
    std::vector<double> interior_;            // per corner slot
    std::vector<std::optional<PiMultiple>> interior_exact_;
    std::vector<int> corner_class_;
    std::vector<int> corner_position_;
    std::vector<VertexClass> classes_;
    std::vector<ConePoint> cone_points_;
    std::vector<int> class_to_cone_;
    int euler_ = 0;
};

/// Cone points with angle != 2*pi (marked points excluded).
std::vector<ConePoint> cone_angles(const FlatConeSurface& surface);

struct AngleWitness {
    int cone_point = 0;
    double angle_radians = 0.0;
    std::optional<PiMultiple> angle;
};

struct AngleConditionResult {
    bool holds = true;
    /// Some cone angle had no exact representation; tolerance eps_angle was used.
    bool approximate = false;
    std::vector<AngleWitness> witnesses;
};

/// Every cone angle equals k*pi for an integer k >= 3.
AngleConditionResult angle_condition(const FlatConeSurface& surface);

}  // namespace flatcone
