#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "flatcone/surface.hpp"

namespace flatcone {

/// A straight segment between cone points with no cone point in its interior.
struct SaddleConnection {
    int start_cone = 0;
    int end_cone = 0;
    /// Developed vector from start to end, in the coordinates of departure_chart.
    PlanePoint displacement;
    double length = 0.0;
    int departure_chart = 0;
    int arrival_chart = 0;
    /// Angular coordinates at the two ends (see cone_coordinate); the end
    /// coordinate points back along the connection.
    double start_coordinate = 0.0;
    double end_coordinate = 0.0;
    /// Rotation carrying departure-chart vectors to arrival-chart vectors
    /// along the unfolded corridor.
    RotationClass corridor_rotation;
    /// Direction of travel at arrival times length, arrival-chart coordinates.
    PlanePoint arrival_vector;
};

struct SaddleOptions {
    std::size_t corridor_cap = 1'000'000;
};

class SaddleExplosion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every saddle connection of length <= length_bound, once up to reversal,
/// sorted by (length, direction angle). Unfolds corridors breadth-first from
/// each corner of each cone point; requires convex charts and at least one
/// cone point (retain marked points to search a surface without singularities).
/// Throws SaddleExplosion when more than options.corridor_cap corridors are opened.
std::vector<SaddleConnection> enumerate_saddle_connections(const FlatConeSurface& surface, double length_bound,
                                                           const SaddleOptions& options = {});

}  // namespace flatcone
