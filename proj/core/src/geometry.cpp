#include "flatcone/geometry.hpp"

#include <algorithm>

namespace flatcone {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

Isometry Isometry::inverse() const {
    const RotationClass inv = rotation_.inverse();
    const Vec2 t = rotate(translation_, inv.cos(), inv.sin());
    return Isometry(inv, -t);
}

Isometry Isometry::compose(const Isometry& other) const {
    return Isometry(rotation_ + other.rotation_, apply(other.translation_));
}

}  // namespace flatcone
