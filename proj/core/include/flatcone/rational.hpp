#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>

namespace flatcone {

/// An exact rational multiple of pi, kept in lowest terms with a positive
/// denominator. Used for interior angles and total cone angles, which can
/// exceed 2*pi.
class PiMultiple {
public:
    constexpr PiMultiple() = default;
    PiMultiple(std::int64_t numerator, std::int64_t denominator);
    static PiMultiple integer(std::int64_t k) { return {k, 1}; }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    double radians() const {
        return std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    }
    /// The value divided by pi, as a double.
    double ratio() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    PiMultiple operator-() const { return {-num_, den_}; }
    friend PiMultiple operator+(const PiMultiple& a, const PiMultiple& b);
    friend PiMultiple operator-(const PiMultiple& a, const PiMultiple& b) { return a + (-b); }
    friend PiMultiple operator*(std::int64_t k, const PiMultiple& a);
    PiMultiple& operator+=(const PiMultiple& o) { return *this = *this + o; }
    PiMultiple& operator-=(const PiMultiple& o) { return *this = *this - o; }

    friend bool operator==(const PiMultiple&, const PiMultiple&) = default;
    friend std::strong_ordering operator<=>(const PiMultiple& a, const PiMultiple& b);

    /// "p/q" or "p" when the denominator is 1; the unit pi is implied.
    std::string to_string() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const PiMultiple& v);

/// A rotation angle reduced modulo 2*pi, stored as an exact multiple of pi in [0, 2).
class RotationClass {
public:
    constexpr RotationClass() = default;
    explicit RotationClass(const PiMultiple& angle);
    RotationClass(std::int64_t numerator, std::int64_t denominator)
        : RotationClass(PiMultiple(numerator, denominator)) {}

    static RotationClass identity() { return {}; }
    static RotationClass half_turn() { return RotationClass(1, 1); }

    const PiMultiple& angle() const { return angle_; }
    std::int64_t numerator() const { return angle_.numerator(); }
    std::int64_t denominator() const { return angle_.denominator(); }
    double radians() const { return angle_.radians(); }

    bool is_identity() const { return angle_.is_zero(); }
    bool is_half_turn() const { return angle_ == PiMultiple(1, 1); }
    /// Rotation by 0 or pi, i.e. an element of {+Id, -Id}.
    bool is_plus_minus_identity() const { return is_identity() || is_half_turn(); }

    /// cos and sin of the rotation angle, exact for multiples of pi/2.
    double cos() const;
    double sin() const;

    RotationClass inverse() const { return RotationClass(-angle_); }
    friend RotationClass operator+(const RotationClass& a, const RotationClass& b) {
        return RotationClass(a.angle_ + b.angle_);
    }
    friend RotationClass operator-(const RotationClass& a, const RotationClass& b) {
        return RotationClass(a.angle_ - b.angle_);
    }
    RotationClass& operator+=(const RotationClass& o) { return *this = *this + o; }

    friend bool operator==(const RotationClass&, const RotationClass&) = default;
    friend auto operator<=>(const RotationClass& a, const RotationClass& b) {
        return a.angle_ <=> b.angle_;
    }

    std::string to_string() const { return angle_.to_string(); }

private:
    PiMultiple angle_;
};

std::ostream& operator<<(std::ostream& os, const RotationClass& r);

/// Best rational approximation p/q of radians/pi with q <= max_denominator,
/// accepted only if it reproduces the angle within tolerance radians.
std::optional<PiMultiple> recognize_pi_multiple(double radians, std::int64_t max_denominator = 1000,
                                                double tolerance = 1e-9);

/// Parses "p/q" or "p" into a PiMultiple. Throws std::invalid_argument.
PiMultiple parse_pi_multiple(const std::string& text);

}  // namespace flatcone
