#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "flatcone/geodesic.hpp"
#include "flatcone/holonomy.hpp"
#include "flatcone/spectrum.hpp"
#include "flatcone/surface_io.hpp"
#include "oracles.hpp"

using namespace flatcone;

namespace {

/// a^p b^q on the square torus: |p| horizontal then |q| vertical crossings.
CurveWord torus_word(int p, int q) {
    CurveWord w;
    for (int i = 0; i < std::abs(p); ++i) w.crossings.push_back({{0, p > 0 ? 1 : 3}, 1});
    for (int i = 0; i < std::abs(q); ++i) w.crossings.push_back({{0, q > 0 ? 2 : 0}, 1});
    return w;
}

CurveWord single_chart_word(std::initializer_list<int> edges) {
    CurveWord w;
    for (int e : edges) w.crossings.push_back({{0, e}, 1});
    return w;
}

CurveWord random_octagon_word(std::mt19937& rng) {
    CurveWord w;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) w.crossings.push_back({{0, static_cast<int>(rng() % 8)}, 1});
    return w;
}

bool close_rel(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

/// Outward unit normal of edge e of a convex chart.
PlanePoint outward_normal(const FlatConeSurface& s, const EdgeRef& e) {
    const PlanePoint d = s.edge_end(e) - s.edge_start(e);
    return PlanePoint{d.y, -d.x} * (1.0 / norm(d));
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("torus lengths are lattice lengths") {
    const auto s = oracle::load("torus.json");
    int pivoted = 0;
    for (int p = -5; p <= 5; ++p) {
        for (int q = -5; q <= 5; ++q) {
            if (p == 0 && q == 0) continue;
            CAPTURE(p);
            CAPTURE(q);
            const auto e = geodesic_length(s, torus_word(p, q));
            CHECK(close_rel(e.length, std::hypot(p, q)));
            CHECK(e.flat_strip_flag);
            if (e.tightening_iterations > 0) ++pivoted;
        }
    }
    // staircase words start off the straight corridor, so this also covers pivots at regular vertices
    CHECK(pivoted > 0);
}

TEST_CASE("torus generators and their product") {
    const auto s = oracle::load("torus.json");
    const auto recs = marked_spectrum(s, {torus_word(1, 0), torus_word(0, 1), torus_word(1, 1)});
    REQUIRE(recs.size() == 3);
    for (const auto& r : recs) REQUIRE(r.entry.has_value());
    CHECK(recs[0].entry->length == doctest::Approx(1.0));
    CHECK(recs[0].entry->flat_strip_flag);
    CHECK(recs[1].entry->length == doctest::Approx(1.0));
    CHECK(recs[2].entry->length == doctest::Approx(std::sqrt(2.0)));
    CHECK(marked_spectrum(s, {}).empty());
}

TEST_CASE("octagon side pairings have the width of the octagon") {
    const auto s = oracle::load("octagon.json");
    const double width = 2.0 * std::cos(std::numbers::pi / 8.0);
    for (int k = 0; k < 8; ++k) {
        CAPTURE(k);
        CHECK(geodesic_length(s, single_chart_word({k})).length == doctest::Approx(width).epsilon(1e-12));
    }
}

TEST_CASE("two adjacent side pairings close up along a strip") {
    const auto s = oracle::load("octagon.json");
    const auto e = geodesic_length(s, single_chart_word({0, 1}));
    // develop by hand: each crossing moves the octagon by twice the apothem along the edge normal
    const double apothem = std::cos(std::numbers::pi / 8.0);
    const PlanePoint t = (outward_normal(s, {0, 0}) + outward_normal(s, {0, 1})) * (2.0 * apothem);
    CHECK(e.length == doctest::Approx(norm(t)).epsilon(1e-12));
    // parallel lines off the centre close after |t|
    const PlanePoint side{-t.y / norm(t), t.x / norm(t)};
    int closed = 0;
    for (double off : {-0.2, -0.05, 0.05, 0.2}) {
        const DirectedPoint start{0, side * off, direction_angle(t)};
        const GeodesicPath p = trace(s, start, norm(t));
        if (p.terminal != Terminal::LengthReached) continue;
        CHECK(p.end.chart == 0);
        CHECK(distance(p.end.position, start.position) < 1e-9);
        // edges 0 and 1, in one of the two cyclic orders depending on the starting side
        REQUIRE(p.crossings.size() == 2);
        CHECK(p.crossings[0].edge.edge + p.crossings[1].edge.edge == 1);
        ++closed;
    }
    CHECK(closed == 4);
}

TEST_CASE("scaling the octagon scales every length") {
    const auto a = oracle::load("octagon.json");
    const auto b = oracle::load("octagon_scaled.json");
    const auto c = scaled(a, 1.5);
    std::mt19937 rng(17);
    int compared = 0;
    for (int i = 0; i < 200; ++i) {
        const CurveWord w = random_octagon_word(rng);
        double la = 0.0;
        try {
            la = geodesic_length(a, w).length;
        } catch (const NullHomotopic&) {
            CHECK_THROWS_AS(geodesic_length(b, w), NullHomotopic);
            continue;
        }
        CHECK(close_rel(geodesic_length(b, w).length, 1.5 * la));
        CHECK(close_rel(geodesic_length(c, w).length, 1.5 * la));
        ++compared;
    }
    CHECK(compared > 150);
}

TEST_CASE("length is invariant under cyclic rotation and reversal") {
    const auto s = oracle::load("octagon.json");
    std::mt19937 rng(23);
    for (int i = 0; i < 60; ++i) {
        const CurveWord w = random_octagon_word(rng);
        double base = 0.0;
        try {
            base = geodesic_length(s, w).length;
        } catch (const NullHomotopic&) {
            continue;
        }
        CurveWord r = w;
        std::rotate(r.crossings.begin(), r.crossings.begin() + 1, r.crossings.end());
        CHECK(close_rel(geodesic_length(s, r).length, base));
        CHECK(close_rel(geodesic_length(s, inverse(w)).length, base));
    }
}

TEST_CASE("inserting a cancelling pair changes nothing") {
    const auto s = oracle::load("octagon.json");
    std::mt19937 rng(29);
    for (int i = 0; i < 60; ++i) {
        const CurveWord w = random_octagon_word(rng);
        double base = 0.0;
        try {
            base = geodesic_length(s, w).length;
        } catch (const NullHomotopic&) {
            continue;
        }
        CurveWord x = w;
        const int e = static_cast<int>(rng() % 8);
        const auto at = x.crossings.begin() + static_cast<long>(rng() % (x.crossings.size() + 1));
        x.crossings.insert(at, {Crossing{{0, e}, 1}, Crossing{{0, e}, -1}});
        CHECK(close_rel(geodesic_length(s, x).length, base));
    }
}

TEST_CASE("pivots never lengthen the path") {
    for (const std::string name : {"octagon.json", "l_shape.json", "double_octagon.json", "halftrans.json"}) {
        CAPTURE(name);
        const auto s = oracle::load(name);
        std::mt19937 rng(31);
        int pivoted = 0;
        for (int i = 0; i < 80; ++i) {
            CurveWord w;
            int chart = static_cast<int>(rng() % s.chart_count());
            const int start = chart;
            // random walk in the dual graph, kept only if it returns to its first chart
            for (int step = 0; step < 12; ++step) {
                const int e = static_cast<int>(rng() % static_cast<unsigned>(s.vertex_count(chart)));
                w.crossings.push_back({{chart, e}, 1});
                chart = s.link({chart, e}).partner.chart;
                if (chart == start && step >= 2) break;
            }
            if (chart != start) continue;
            try {
                const auto e = geodesic_length(s, w);
                REQUIRE_FALSE(e.pivot_lengths.empty());
                CHECK(e.pivot_lengths.back() == doctest::Approx(e.length));
                for (std::size_t k = 1; k < e.pivot_lengths.size(); ++k) {
                    CHECK(e.pivot_lengths[k] <= e.pivot_lengths[k - 1] + 1e-9);
                }
                if (e.pivot_lengths.size() > 1) ++pivoted;
            } catch (const NullHomotopic&) {
            }
        }
        MESSAGE(name << ": " << pivoted << " words needed pivots");
    }
}

TEST_CASE("words that start around a cone point stay between the developed bounds") {
    // a partial turn around the cone point followed by a random walk home often needs a pivot
    int pivoted = 0;
    for (const std::string name : {"octagon.json", "l_shape.json", "double_octagon.json", "halftrans.json"}) {
        CAPTURE(name);
        const auto s = oracle::load(name);
        const DualGraphLoop around = cone_loop(s, s.cone_points()[0].vertex_class);
        const int n = static_cast<int>(around.crossings.size());
        std::mt19937 rng(37);
        for (int trial = 0; trial < 400; ++trial) {
            CurveWord w;
            const int first = static_cast<int>(rng() % static_cast<unsigned>(n));
            const int turn = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
            for (int i = 0; i < turn; ++i) w.crossings.push_back(as_exit(s, around.crossings[static_cast<std::size_t>((first + i) % n)]));
            const int home = w.crossings.front().edge.chart;
            int chart = s.link(w.crossings.back().edge).partner.chart;
            for (int step = 0; step < 30 && chart != home; ++step) {
                const int e = static_cast<int>(rng() % static_cast<unsigned>(s.vertex_count(chart)));
                w.crossings.push_back({{chart, e}, 1});
                chart = s.link({chart, e}).partner.chart;
            }
            if (chart != home) continue;
            SpectrumEntry e;
            try {
                e = geodesic_length(s, w);
            } catch (const NullHomotopic&) {
                continue;
            }
            if (e.tightening_iterations > 0) ++pivoted;
            // upper bound: the polyline through the midpoints of the crossed edges
            Isometry d;
            const PlanePoint p0 = (s.edge_start(w.crossings[0].edge) + s.edge_end(w.crossings[0].edge)) * 0.5;
            PlanePoint prev = p0;
            double upper = 0.0;
            for (std::size_t i = 1; i < w.crossings.size(); ++i) {
                d = d.compose(s.link(w.crossings[i - 1].edge).to_partner.inverse());
                const EdgeRef& x = w.crossings[i].edge;
                const PlanePoint mid = d.apply((s.edge_start(x) + s.edge_end(x)) * 0.5);
                upper += distance(prev, mid);
                prev = mid;
            }
            d = d.compose(s.link(w.crossings.back().edge).to_partner.inverse());
            upper += distance(prev, d.apply(p0));
            CHECK(e.length <= upper + 1e-9);
            // lower bound: with every cone angle a multiple of 2pi the development is defined on the
            // universal cover, so a translation deck moves every point by at least its length
            if (name != "halftrans.json" && d.rotation().is_identity()) {
                CHECK(e.length >= norm(d.translation()) - 1e-9);
            }
        }
    }
    CHECK(pivoted > 0);
}

TEST_CASE("null-homotopic words are rejected") {
    const auto s = oracle::load("octagon.json");
    const CurveWord w{{Crossing{{0, 2}, 1}, Crossing{{0, 2}, -1}}};
    CHECK_THROWS_AS(geodesic_length(s, w), NullHomotopic);
    // the boundary of the octagon goes once around the cone point
    CHECK_THROWS_AS(geodesic_length(s, cone_loop(s, 0)), NullHomotopic);
    const auto recs = marked_spectrum(s, {w, single_chart_word({1})});
    REQUIRE(recs.size() == 2);
    CHECK_FALSE(recs[0].entry.has_value());
    CHECK_FALSE(recs[0].error.empty());
    CHECK(recs[1].entry.has_value());
}

TEST_CASE("reduction cancels inverse pairs cyclically") {
    const auto s = oracle::load("octagon.json");
    const CurveWord w{{Crossing{{0, 7}, -1}, Crossing{{0, 1}, 1}, Crossing{{0, 5}, 1}, Crossing{{0, 5}, -1},
                       Crossing{{0, 7}, 1}}};
    const CurveWord r = reduce_word(s, w);
    // the last crossing undoes the first around the cycle
    REQUIRE(r.crossings.size() == 1);
    CHECK(r.crossings[0] == Crossing{{0, 1}, 1});
}

TEST_CASE("comparing spectra") {
    const auto t1 = oracle::load("torus.json");
    const auto t2 = oracle::load("torus_2x1.json");
    const auto same = compare_spectra(t1, t1, {torus_word(1, 0), torus_word(1, 1)});
    CHECK(same.max_relative_difference == 0.0);
    const auto cmp = compare_spectra(t1, t2, {torus_word(1, 0)});
    REQUIRE(cmp.pairs.size() == 1);
    CHECK(*cmp.pairs[0].length_a == doctest::Approx(1.0));
    CHECK(*cmp.pairs[0].length_b == doctest::Approx(2.0));
    CHECK(cmp.max_relative_difference == doctest::Approx(1.0));

    const auto oct = oracle::load("octagon.json");
    const auto big = oracle::load("octagon_scaled.json");
    const auto r = compare_spectra(oct, big, {single_chart_word({0}), single_chart_word({0, 1}), single_chart_word({0, 3, 5})});
    for (const auto& p : r.pairs) CHECK(close_rel(*p.length_b / *p.length_a, 1.5));

    CHECK_THROWS_AS(compare_spectra(oct, t1, {single_chart_word({5})}), WordInvalidOnB);
}

}
