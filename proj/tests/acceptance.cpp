// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "flatcone/chains.hpp"
#include "flatcone/geodesic.hpp"
#include "flatcone/holonomy.hpp"
#include "flatcone/saddle.hpp"
#include "flatcone/spectrum.hpp"
#include "flatcone/surface_io.hpp"
#include "oracles.hpp"

using namespace flatcone;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelTol = 1e-9;

const char* const kAllFixtures[] = {"torus.json",  "torus_2x1.json", "octagon.json",   "octagon_scaled.json",
                                    "l_shape.json", "halftrans.json", "cone52.json", "badangle.json",
                                    "double_octagon.json"};

struct Check {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

bool rel_close(double got, double want) { return std::abs(got - want) <= kRelTol * std::abs(want); }

Check chain_example() {
    Check c;
    const Chain chain = Chain::exact(PiMultiple(5, 2));
    for (std::int64_t n = 1; n <= 200; ++n) {
        const std::int64_t want = n % 2 == 0 ? 5 * n / 2 : (5 * n + 1) / 2;
        if (sweep_count(chain, n) != want) c.fail("R(" + std::to_string(n) + ") differs");
    }
    const auto inv = chain_invariants(chain);
    if (!inv.periodic || inv.k != 5 || inv.n != 3) {
        c.fail("invariants k=" + std::to_string(inv.k) + " n=" + std::to_string(inv.n));
    }
    return c;
}

Check bound_convergence() {
    Check c;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pick(2.0 * kPi, 10.0 * kPi);
    const long double pi = std::numbers::pi_v<long double>;
    for (int i = 0; i < 1000; ++i) {
        const double theta = pick(rng);
        const Chain chain = Chain::real(theta);
        const auto r = sweep_counts(chain, 100);
        for (std::int64_t n = 1; n <= 100; ++n) {
            const AngleInterval iv = cone_angle_bounds(r[static_cast<std::size_t>(n - 1)], n);
            const long double lo = static_cast<long double>(iv.sweep - 1) * pi / n;
            const long double hi = static_cast<long double>(iv.sweep) * pi / n;
            if (!(lo <= theta && theta <= hi)) c.fail("theta=" + std::to_string(theta) + " n=" + std::to_string(n));
            if (iv.hi_pi - iv.lo_pi != PiMultiple(1, n)) c.fail("width at n=" + std::to_string(n));
        }
    }
    return c;
}

Check gauss_bonnet() {
    Check c;
    const auto oct = oracle::load("octagon.json");
    if (oct.cone_points().size() != 1 || oct.cone_points()[0].angle != PiMultiple::integer(6)) {
        c.fail("octagon cone point");
    }
    if (oct.euler_characteristic() != -2) c.fail("octagon chi");
    PiMultiple defect;
    for (const auto& cp : oct.cone_points()) defect += PiMultiple::integer(2) - cp.angle;
    if (defect != PiMultiple::integer(2 * oct.euler_characteristic())) c.fail("octagon defect sum");
    const auto torus = oracle::load("torus.json");
    if (!torus.cone_points().empty() || torus.euler_characteristic() != 0) c.fail("torus");
    return c;
}

std::string decision_key(const FlatConeSurface& s) {
    const auto d = is_quadratic_differential_metric(s);
    return std::string(d.yes ? "yes" : "no") + (d.angles.holds ? "A" : "a") +
           (d.holonomy.group_is_pm_identity ? "H" : "h");
}

Check characterization() {
    Check c;
    if (!is_quadratic_differential_metric(oracle::load("octagon.json")).yes) c.fail("octagon");
    if (!is_quadratic_differential_metric(oracle::load("halftrans.json")).yes) c.fail("halftrans");
    const auto bad = is_quadratic_differential_metric(oracle::load("badangle.json"));
    if (bad.yes) c.fail("badangle decided yes");
    if (bad.angles.witnesses.empty()) c.fail("badangle angle witness");
    if (bad.holonomy.witnesses.empty()) c.fail("badangle holonomy witness");
    std::mt19937 rng(99);
    for (const std::string name : {"octagon.json", "halftrans.json", "badangle.json"}) {
        const std::string text = oracle::read_text(oracle::fixture(name));
        const std::string base = decision_key(parse_surface(text));
        for (int t = 0; t < 5; ++t) {
            if (decision_key(parse_surface(oracle::relabelled(text, rng))) != base) {
                c.fail(std::string(name) + " relabelled");
            }
        }
    }
    return c;
}

Check saddle_oracle() {
    Check c;
    BuildOptions o;
    o.retain_marked_points = true;
    const auto s = oracle::load("torus.json", o);
    const auto found = enumerate_saddle_connections(s, 10.0);
    const auto want = oracle::primitive_lattice_vectors(10.0);
    if (found.size() != want.size()) {
        c.fail("count " + std::to_string(found.size()) + " vs " + std::to_string(want.size()));
        return c;
    }
    std::multiset<long long> got_len, want_len;
    for (const auto& sc : found) got_len.insert(std::llround(sc.length * sc.length));
    for (const auto& [p, q] : want) want_len.insert(static_cast<long long>(p) * p + static_cast<long long>(q) * q);
    if (got_len != want_len) c.fail("length multiset");
    for (const auto& sc : found) {
        const double sq = static_cast<double>(std::llround(sc.length * sc.length));
        if (std::abs(sc.length - std::sqrt(sq)) > 1e-9) c.fail("non-lattice length");
    }
    return c;
}

CurveWord torus_word(int p, int q) {
    CurveWord w;
    for (int i = 0; i < std::abs(p); ++i) w.crossings.push_back({{0, p > 0 ? 1 : 3}, 1});
    for (int i = 0; i < std::abs(q); ++i) w.crossings.push_back({{0, q > 0 ? 2 : 0}, 1});
    return w;
}

Check spectrum_oracle() {
    Check c;
    const auto torus = oracle::load("torus.json");
    for (int p = -5; p <= 5; ++p) {
        for (int q = -5; q <= 5; ++q) {
            if (p == 0 && q == 0) continue;
            const double got = geodesic_length(torus, torus_word(p, q)).length;
            if (!rel_close(got, std::hypot(p, q))) {
                c.fail("(" + std::to_string(p) + "," + std::to_string(q) + ") -> " + std::to_string(got));
            }
        }
    }
    const auto a = oracle::load("octagon.json");
    const auto b = scaled(a, 1.5);
    std::mt19937 rng(7);
    std::vector<CurveWord> words;
    for (int e = 0; e < 8; ++e) words.push_back(CurveWord{{Crossing{{0, e}, 1}}});
    for (int i = 0; i < 200; ++i) {
        CurveWord w;
        const int len = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < len; ++k) w.crossings.push_back({{0, static_cast<int>(rng() % 8)}, 1});
        words.push_back(w);
    }
    const auto ra = marked_spectrum(a, words);
    const auto rb = marked_spectrum(b, words);
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (ra[i].entry.has_value() != rb[i].entry.has_value()) c.fail("word " + std::to_string(i) + " status");
        if (ra[i].entry && !rel_close(rb[i].entry->length, 1.5 * ra[i].entry->length)) {
            c.fail("word " + std::to_string(i) + " ratio");
        }
        if (!ra[i].entry && ra[i].error.rfind("NullHomotopic", 0) != 0) {
            c.fail("word " + std::to_string(i) + ": " + ra[i].error);
        }
    }
    return c;
}

Check reversibility() {
    Check c;
    const auto s = oracle::load("octagon.json");
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto& v = s.chart(0).vertices;
    int done = 0;
    int attempts = 0;
    while (done < 1000 && attempts < 2000) {
        ++attempts;
        // uniform point in a random fan triangle of the octagon
        const std::size_t t = 1 + rng() % (v.size() - 2);
        double x = unit(rng), y = unit(rng);
        if (x + y > 1.0) {
            x = 1.0 - x;
            y = 1.0 - y;
        }
        const PlanePoint p0 = v[0] + (v[t] - v[0]) * x + (v[t + 1] - v[0]) * y;
        const DirectedPoint start{0, p0, unit(rng) * kTwoPi};
        const double len = 1.0 + 29.0 * unit(rng);
        const GeodesicPath fwd = trace(s, start, len);
        if (fwd.terminal != Terminal::LengthReached) continue;
        const DirectedPoint rev{fwd.end.chart, fwd.end.position, wrap(fwd.end.direction + kPi, kTwoPi)};
        const GeodesicPath back = trace(s, rev, fwd.length);
        const double dd = wrap(back.end.direction - start.direction - kPi, kTwoPi);
        const double angle_err = std::min(dd, kTwoPi - dd);
        if (back.terminal != Terminal::LengthReached || back.end.chart != 0 ||
            distance(back.end.position, p0) > 10 * kEpsGeom || angle_err > 10 * kEpsGeom) {
            c.fail("trace " + std::to_string(done));
        }
        ++done;
    }
    if (done < 1000) c.fail("only " + std::to_string(done) + " traces avoided cone points");
    return c;
}

Check density() {
    Check c;
    const auto s = oracle::load("torus.json");
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double full = density_profile(s, {0, {0.1, 0.2}, std::atan(golden)}, 1e4, 32);
    if (full != 1.0) c.fail("golden coverage " + std::to_string(full));
    const double row = density_profile(s, {0, {0.0, 0.3}, 0.0}, 1e4, 32);
    if (row != 1.0 / 32.0) c.fail("slope-0 coverage " + std::to_string(row));
    return c;
}

Check holonomy_algebra() {
    Check c;
    for (const std::string name : kAllFixtures) {
        const auto s = oracle::load(name);
        for (const auto& l : generating_loops(s)) {
            if (!transport(s, concatenate(l, inverse(l))).is_identity()) c.fail(std::string(name) + " loop*inverse");
        }
        for (const auto& cp : s.cone_points()) {
            const RotationClass want(cp.angle.numerator(), cp.angle.denominator());
            if (transport(s, cone_loop(s, cp.vertex_class)) != want) c.fail(std::string(name) + " cone loop");
        }
    }
    return c;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Check()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "chain example 5pi/2: R(n) formula n<=200, k=5, n=3", 1.0, chain_example},
        {2, "cone-angle bounds contain theta, width pi/n (1000 thetas, n<=100)", 5.0, bound_convergence},
        {3, "Gauss-Bonnet on octagon and torus", 1.0, gauss_bonnet},
        {4, "quadratic-differential decisions and relabelling stability", 1.0, characterization},
        {5, "marked-torus saddle connections vs lattice oracle, bound 10", 10.0, saddle_oracle},
        {6, "torus spectrum sqrt(p^2+q^2), octagon scaling 1.5, rel 1e-9", 10.0, spectrum_oracle},
        {7, "1000 seeded octagon traces reverse to start", 10.0, reversibility},
        {8, "torus density: golden ratio full, slope 0 one row", 5.0, density},
        {9, "holonomy: loop*inverse trivial, cone loops give theta mod 2pi", 1.0, holonomy_algebra},
    };
    int failures = 0;
    for (const Criterion& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception& e) {
            result.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > cr.limit_seconds) result.fail("took " + std::to_string(secs) + " s");
        std::printf("%s %d %s (%.3f s, limit %.0f s)%s%s\n", result.ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                    cr.limit_seconds, result.ok ? "" : ": ", result.detail.c_str());
        if (!result.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
