#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "flatcone/chains.hpp"
#include "oracles.hpp"

using namespace flatcone;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("chains") {

TEST_CASE("5pi/2: R(n) is 5n/2 for even n and (5n+1)/2 for odd n") {
    const Chain c = Chain::exact(PiMultiple(5, 2));
    for (std::int64_t n = 1; n <= 200; ++n) {
        CAPTURE(n);
        const std::int64_t want = n % 2 == 0 ? 5 * n / 2 : (5 * n + 1) / 2;
        CHECK(sweep_count(c, n) == want);
    }
    const auto inv = chain_invariants(c);
    CHECK(inv.periodic);
    CHECK(inv.k == 5);
    CHECK(inv.n == 3);
}

TEST_CASE("2pi: R(n) = 2n") {
    const Chain c = Chain::exact(PiMultiple::integer(2));
    const auto r = sweep_counts(c, 50);
    REQUIRE(r.size() == 50);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == 2 * static_cast<std::int64_t>(i + 1));
}

TEST_CASE("3pi has three directions, neighbour at step 1") {
    const auto inv = chain_invariants(Chain::exact(PiMultiple(3, 1)));
    CHECK(inv.periodic);
    CHECK(inv.k == 3);
    CHECK(inv.n == 1);
    CHECK_FALSE(chain_invariants(Chain::real(2.0 * kPi * std::sqrt(2.0))).periodic);
}

TEST_CASE("exact sweeps match the walking oracle") {
    for (std::int64_t num = 2; num <= 40; ++num) {
        for (std::int64_t den = 1; den <= 7; ++den) {
            if (std::gcd(num, den) != 1 || num < 2 * den) continue;
            const Chain c = Chain::exact(PiMultiple(num, den));
            for (std::int64_t n = 1; n <= 30; ++n) CHECK(sweep_count(c, n) == oracle::sweep_by_walking(num, den, n));
        }
    }
}

TEST_CASE("irrational sweeps match the walking oracle") {
    const double theta = 2.0 * kPi * std::sqrt(2.0);
    const Chain c = Chain::real(theta);
    for (std::int64_t n = 1; n <= 20; ++n) CHECK(sweep_count(c, n) == oracle::sweep_by_walking(theta, n));
}

TEST_CASE("random angles in [2pi, 10pi] match the walking oracle") {
    // random draws avoid rational multiples of pi, where the two methods may break ties differently
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(2.0 * kPi, 10.0 * kPi);
    for (int i = 0; i < 10'000; ++i) {
        const double theta = u(rng);
        const Chain c = Chain::real(theta);
        const auto r = sweep_counts(c, 50);
        for (std::int64_t n = 1; n <= 50; n += 7) {
            REQUIRE(r[static_cast<std::size_t>(n - 1)] == oracle::sweep_by_walking(theta, n));
        }
    }
}

TEST_CASE("periodic invariants match the direct orbit") {
    for (std::int64_t num = 2; num <= 50; ++num) {
        for (std::int64_t den = 1; den <= 6; ++den) {
            if (std::gcd(num, den) != 1 || num < 2 * den) continue;
            CAPTURE(num);
            CAPTURE(den);
            const auto inv = chain_invariants(Chain::exact(PiMultiple(num, den)));
            const auto o = oracle::orbit(num, den);
            CHECK(inv.k == o.distinct);
            CHECK(inv.n == o.ccw_step);
        }
    }
}

TEST_CASE("bounds contain theta and have width pi/n") {
    const auto b = cone_angle_bounds(sweep_count(Chain::exact(PiMultiple(5, 2)), 100), 100);
    CHECK(b.lo_pi == PiMultiple(249, 100));
    CHECK(b.hi_pi == PiMultiple(250, 100));
    const double t = 3.5 * kPi;
    const auto c = cone_angle_bounds(sweep_count(Chain::exact(PiMultiple(7, 2)), 1000), 1000);
    CHECK(c.lo <= t);
    CHECK(t <= c.hi);
    CHECK(c.hi_pi - c.lo_pi == PiMultiple(1, 1000));
    for (std::int64_t n = 1; n <= 60; ++n) {
        const auto two = cone_angle_bounds(sweep_count(Chain::exact(PiMultiple::integer(2)), n), n);
        CHECK(two.hi_pi == PiMultiple::integer(2));
        CHECK(two.lo_pi == PiMultiple::integer(2) - PiMultiple(1, n));
    }
}

TEST_CASE("interlacing of periodic chains is equality of invariants") {
    for (std::int64_t a = 4; a <= 14; ++a) {
        for (std::int64_t b = 4; b <= 14; ++b) {
            const Chain x = Chain::exact(PiMultiple(a, 2), 0.1);
            const Chain y = Chain::exact(PiMultiple(b, 2), 0.7);
            const auto ix = chain_invariants(x);
            const auto iy = chain_invariants(y);
            const auto r = perfectly_interlaced(x, y);
            CHECK(r.value == (ix.k == iy.k && ix.n == iy.n));
            CHECK_FALSE(r.approximate);
        }
    }
    CHECK(perfectly_interlaced(Chain::exact(PiMultiple(5, 2), 0.0), Chain::exact(PiMultiple(5, 2), 1.0)).value);
    CHECK_FALSE(perfectly_interlaced(Chain::exact(PiMultiple(3, 1)), Chain::exact(PiMultiple(5, 2))).value);
}

TEST_CASE("aperiodic chains at the same angle interlace") {
    const double theta = 2.0 * kPi * std::sqrt(2.0);
    const auto r = perfectly_interlaced(Chain::real(theta, 0.0), Chain::real(theta, 1.0));
    CHECK(r.value);
    CHECK(r.approximate);
    CHECK_FALSE(perfectly_interlaced(Chain::real(theta), Chain::exact(PiMultiple(5, 2))).value);
}

TEST_CASE("cone-angle estimates from a surface") {
    const auto s = oracle::load("octagon.json");
    const auto iv = estimate_cone_angle_from_surface(s, 0, 10);
    REQUIRE(iv.size() == 10);
    for (const auto& b : iv) {
        CHECK(b.lo_pi <= PiMultiple::integer(6));
        CHECK(PiMultiple::integer(6) <= b.hi_pi);
        CHECK(b.hi - b.lo == doctest::Approx(kPi / static_cast<double>(b.n)));
    }
    CHECK(estimate_cone_angle_from_surface(s, 0, 1)[0].hi - estimate_cone_angle_from_surface(s, 0, 1)[0].lo ==
          doctest::Approx(kPi));
    CHECK_THROWS(estimate_cone_angle_from_surface(s, 3, 10));
}

}
