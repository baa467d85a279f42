#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flatcone/surface.hpp"

namespace flatcone {

/// Directions phi_i = phi0 + i*pi at a cone point of angle theta, read mod theta.
class Chain {
public:
    /// Cone angle known exactly as a rational multiple of pi.
    static Chain exact(const PiMultiple& theta, double phi0 = 0.0);
    /// Cone angle in radians with no exact form; the chain is treated as aperiodic.
    static Chain real(double theta_radians, double phi0 = 0.0);

    double theta() const { return theta_; }
    const std::optional<PiMultiple>& theta_exact() const { return exact_; }
    double phi0() const { return phi0_; }
    /// phi_i in [0, theta).
    double direction(std::int64_t i) const;

private:
    Chain(double theta, std::optional<PiMultiple> exact, double phi0);
    double theta_ = 0.0;
    std::optional<PiMultiple> exact_;
    double phi0_ = 0.0;
};

/// Index of the first chain element met after the direction has passed
/// phi0 n times going counterclockwise: the least m with m*pi >= n*theta.
std::int64_t sweep_count(const Chain& chain, std::int64_t n);

/// R(1..n_max).
std::vector<std::int64_t> sweep_counts(const Chain& chain, std::int64_t n_max);

struct AngleInterval {
    std::int64_t n = 0;
    std::int64_t sweep = 0;  // R(n)
    double lo = 0.0;          // (R(n) - 1) * pi / n
    double hi = 0.0;          // R(n) * pi / n
    /// The bounds as exact multiples of pi.
    PiMultiple lo_pi;
    PiMultiple hi_pi;
};

/// [R(n)*pi/n - pi/n, R(n)*pi/n]; contains theta and has width pi/n.
AngleInterval cone_angle_bounds(std::int64_t sweep, std::int64_t n);

struct ChainInvariants {
    bool periodic = false;
    std::int64_t k = 0;  // number of distinct directions
    std::int64_t n = 0;  // index of the nearest counterclockwise neighbour of phi0
};

ChainInvariants chain_invariants(const Chain& chain);

struct InterlaceResult {
    bool value = false;
    /// Decided from finitely many terms (aperiodic chains).
    bool approximate = false;
};

struct InterlaceOptions {
    double delta = 1e-3;        // radians
    std::int64_t window = 10'000;
};

/// Periodic chains: equal k and n. Aperiodic chains at the same angle: each
/// of the first `window` terms of either chain lies within delta of a term of
/// the other. One periodic and one aperiodic: false.
InterlaceResult perfectly_interlaced(const Chain& a, const Chain& b, const InterlaceOptions& options = {});

/// Bounds for n = 1..n_max from the chain at the cone point's angle.
std::vector<AngleInterval> estimate_cone_angle_from_surface(const FlatConeSurface& surface, int cone_point,
                                                            std::int64_t n_max, double phi0 = 0.5);

}  // namespace flatcone
