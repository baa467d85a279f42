#include "flatcone/chains.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace flatcone {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    // b > 0
    std::int64_t q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, r = a % m;
    while (r != 0) {
        const std::int64_t q = g / r;
        std::tie(g, r) = std::make_tuple(r, g - q * r);
        std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
    }
    if (g != 1) throw std::logic_error("no modular inverse");
    return ((x % m) + m) % m;
}

}  // namespace

Chain::Chain(double theta, std::optional<PiMultiple> exact, double phi0)
    : theta_(theta), exact_(exact), phi0_(wrap(phi0, theta)) {
    if (!(theta_ >= kTwoPi - kEpsAngle) || !std::isfinite(theta_)) {
        throw std::invalid_argument("chain cone angle must be finite and at least 2*pi");
    }
}

Chain Chain::exact(const PiMultiple& theta, double phi0) {
    if (theta < PiMultiple::integer(2)) throw std::invalid_argument("chain cone angle must be at least 2*pi");
    return Chain(theta.radians(), theta, phi0);
}

Chain Chain::real(double theta_radians, double phi0) {
    return Chain(theta_radians, std::nullopt, phi0);
}

double Chain::direction(std::int64_t i) const {
    const long double v = static_cast<long double>(phi0_) + static_cast<long double>(i) * kPiL;
    return static_cast<double>(std::fmod(v, static_cast<long double>(theta_)));
}

std::int64_t sweep_count(const Chain& chain, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("sweep count needs n >= 1");
    if (chain.theta_exact()) {
        const PiMultiple& t = *chain.theta_exact();
        return ceil_div(n * t.numerator(), t.denominator());
    }
    const long double target = static_cast<long double>(n) * static_cast<long double>(chain.theta());
    auto m = static_cast<std::int64_t>(std::ceil(target / kPiL));
    while (m > 1 && static_cast<long double>(m - 1) * kPiL >= target) --m;
    while (static_cast<long double>(m) * kPiL < target) ++m;
    return m;
}

std::vector<std::int64_t> sweep_counts(const Chain& chain, std::int64_t n_max) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 1; n <= n_max; ++n) out.push_back(sweep_count(chain, n));
    return out;
}

AngleInterval cone_angle_bounds(std::int64_t sweep, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("bounds need n >= 1");
    AngleInterval iv;
    iv.n = n;
    iv.sweep = sweep;
    iv.lo_pi = PiMultiple(sweep - 1, n);
    iv.hi_pi = PiMultiple(sweep, n);
    iv.lo = iv.lo_pi.radians();
    iv.hi = iv.hi_pi.radians();
    return iv;
}

ChainInvariants chain_invariants(const Chain& chain) {
    ChainInvariants inv;
    if (!chain.theta_exact()) return inv;
    const PiMultiple& t = *chain.theta_exact();
    inv.periodic = true;
    inv.k = t.numerator();
    inv.n = mod_inverse(t.denominator() % inv.k, inv.k);
    if (inv.n == 0) inv.n = inv.k;  // unreachable for theta >= 2*pi
    return inv;
}

InterlaceResult perfectly_interlaced(const Chain& a, const Chain& b, const InterlaceOptions& options) {
    const bool pa = a.theta_exact().has_value();
    const bool pb = b.theta_exact().has_value();
    if (pa != pb) return {false, false};
    if (pa) {
        const ChainInvariants ia = chain_invariants(a);
        const ChainInvariants ib = chain_invariants(b);
        return {ia.k == ib.k && ia.n == ib.n, false};
    }
    if (std::abs(a.theta() - b.theta()) > kEpsAngle) return {false, true};

    const double theta = a.theta();
    auto terms = [&](const Chain& c) {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(options.window));
        for (std::int64_t i = 0; i < options.window; ++i) v.push_back(c.direction(i));
        return v;
    };
    auto covered = [&](const std::vector<double>& pts, std::vector<double> ref) {
        std::sort(ref.begin(), ref.end());
        for (double p : pts) {
            auto it = std::lower_bound(ref.begin(), ref.end(), p);
            const double above = it == ref.end() ? ref.front() + theta : *it;
            const double below = it == ref.begin() ? ref.back() - theta : *std::prev(it);
            if (std::min(above - p, p - below) > options.delta) return false;
        }
        return true;
    };
    const auto ta = terms(a);
    const auto tb = terms(b);
    return {covered(ta, tb) && covered(tb, ta), true};
}

std::vector<AngleInterval> estimate_cone_angle_from_surface(const FlatConeSurface& surface, int cone_point,
                                                            std::int64_t n_max, double phi0) {
    const ConePoint& cp = surface.cone_points().at(static_cast<std::size_t>(cone_point));
    const Chain chain = cp.exact ? Chain::exact(cp.angle, phi0) : Chain::real(cp.angle_radians, phi0);
    std::vector<AngleInterval> out;
    for (std::int64_t n = 1; n <= n_max; ++n) out.push_back(cone_angle_bounds(sweep_count(chain, n), n));
    return out;
}

}  // namespace flatcone
