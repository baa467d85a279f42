#include "flatcone/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace flatcone {

namespace {

__extension__ typedef __int128 i128;

std::int64_t narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("PiMultiple arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

PiMultiple make_reduced(i128 num, i128 den) {
    if (den == 0) throw std::invalid_argument("PiMultiple: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return PiMultiple(narrow(num), narrow(den));
}

}  // namespace

PiMultiple::PiMultiple(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw std::invalid_argument("PiMultiple: zero denominator");
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = g > 1 ? numerator / g : numerator;
    den_ = g > 1 ? denominator / g : denominator;
}

PiMultiple operator+(const PiMultiple& a, const PiMultiple& b) {
    const i128 num = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
    const i128 den = static_cast<i128>(a.den_) * b.den_;
    return make_reduced(num, den);
}

PiMultiple operator*(std::int64_t k, const PiMultiple& a) {
    return make_reduced(static_cast<i128>(k) * a.num_, a.den_);
}

std::strong_ordering operator<=>(const PiMultiple& a, const PiMultiple& b) {
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string PiMultiple::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const PiMultiple& v) { return os << v.to_string() << "pi"; }

RotationClass::RotationClass(const PiMultiple& angle) {
    // reduce into [0, 2)
    const std::int64_t period = 2 * angle.denominator();
    std::int64_t n = angle.numerator() % period;
    if (n < 0) n += period;
    angle_ = PiMultiple(n, angle.denominator());
}

double RotationClass::cos() const {
    const auto d = angle_.denominator();
    const auto n = angle_.numerator();
    if (d == 1) return n == 0 ? 1.0 : -1.0;
    if (d == 2) return 0.0;
    if (d == 3) return (n == 1 || n == 5) ? 0.5 : -0.5;
    return std::cos(angle_.radians());
}

double RotationClass::sin() const {
    const auto d = angle_.denominator();
    const auto n = angle_.numerator();
    if (d == 1) return 0.0;
    if (d == 2) return n == 1 ? 1.0 : -1.0;
    if (d == 6) return (n == 1 || n == 5) ? 0.5 : -0.5;
    return std::sin(angle_.radians());
}

std::ostream& operator<<(std::ostream& os, const RotationClass& r) { return os << r.angle(); }

std::optional<PiMultiple> recognize_pi_multiple(double radians, std::int64_t max_denominator,
                                                double tolerance) {
    if (!std::isfinite(radians)) return std::nullopt;
    const double x = radians / std::numbers::pi;
    const double whole = std::floor(x);
    double frac = x - whole;

    // continued-fraction convergents of the fractional part
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rest = frac;
    std::optional<PiMultiple> best;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_d = std::floor(rest);
        if (a_d > 1e12) break;
        const auto a = static_cast<std::int64_t>(a_d);
        const std::int64_t p2 = a * p1 + p0;
        const std::int64_t q2 = a * q1 + q0;
        if (q2 > max_denominator) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - frac) * std::numbers::pi <= tolerance) {
            best = PiMultiple(static_cast<std::int64_t>(whole) * q1 + p1, q1);
            break;
        }
        const double r = rest - a_d;
        if (r < 1e-15) break;
        rest = 1.0 / r;
    }
    return best;
}

PiMultiple parse_pi_multiple(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const long long n = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return PiMultiple(n, 1);
        }
        const std::string a = text.substr(0, slash);
        const std::string b = text.substr(slash + 1);
        const long long n = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(text);
        const long long d = std::stoll(b, &used);
        if (used != b.size()) throw std::invalid_argument(text);
        return PiMultiple(n, d);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a rational multiple of pi: '" + text + "'");
    }
}

}  // namespace flatcone
