#pragma once

#include <span>
#include <vector>

#include "flatcone/geometry.hpp"

namespace flatcone {

/// A segment the path must cross, named as seen by a traveller crossing it.
struct Portal {
    PlanePoint left;
    PlanePoint right;
};

struct FunnelBend {
    int portal = 0;  // index into the portal list
    bool left = false;
    PlanePoint point;
};

struct FunnelPath {
    std::vector<PlanePoint> points;  // start, bends..., end
    std::vector<FunnelBend> bends;
    double length = 0.0;
};

/// Shortest path from start to end through the portals in order (simple
/// stupid funnel). The portals must bound a simply connected corridor.
FunnelPath string_pull(const PlanePoint& start, const PlanePoint& end, std::span<const Portal> portals);

}  // namespace flatcone
