#pragma once

#include <cmath>
#include <numbers>

#include "flatcone/rational.hpp"

namespace flatcone {

/// Geometric tolerance for edge matching and point-on-edge tests (length units).
inline constexpr double kEpsGeom = 1e-9;
/// Angular tolerance for inexact angle comparisons (radians).
inline constexpr double kEpsAngle = 1e-9;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;

    PlanePoint operator+(const PlanePoint& o) const { return {x + o.x, y + o.y}; }
    PlanePoint operator-(const PlanePoint& o) const { return {x - o.x, y - o.y}; }
    PlanePoint operator-() const { return {-x, -y}; }
    PlanePoint operator*(double s) const { return {x * s, y * s}; }
    PlanePoint& operator+=(const PlanePoint& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

using Vec2 = PlanePoint;

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
/// Twice the signed area of (a, b, c); positive when c lies left of a->b.
inline double orient(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a); }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(b - a); }
inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Angle of v in [0, 2*pi).
inline double direction_angle(const Vec2& v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

/// x reduced into [0, period).
inline double wrap(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

inline Vec2 rotate(const Vec2& v, double c, double s) { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
inline Vec2 rotate(const Vec2& v, const RotationClass& r) { return rotate(v, r.cos(), r.sin()); }

/// Distance from p to the segment [a, b].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Orientation-preserving isometry z -> R(rotation) z + translation with an exact rotation.
class Isometry {
public:
    Isometry() = default;
    Isometry(RotationClass rotation, Vec2 translation)
        : rotation_(rotation), c_(rotation.cos()), s_(rotation.sin()), translation_(translation) {}

    const RotationClass& rotation() const { return rotation_; }
    const Vec2& translation() const { return translation_; }

    Vec2 apply(const Vec2& p) const { return rotate(p, c_, s_) + translation_; }
    Vec2 apply_linear(const Vec2& v) const { return rotate(v, c_, s_); }

    Isometry inverse() const;
    /// (*this) after other: p -> this(other(p)).
    Isometry compose(const Isometry& other) const;

private:
    RotationClass rotation_;
    double c_ = 1.0;
    double s_ = 0.0;
    Vec2 translation_;
};

}  // namespace flatcone
