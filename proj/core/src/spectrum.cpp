#include "flatcone/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "flatcone/funnel.hpp"
#include "flatcone/geodesic.hpp"

namespace flatcone {

namespace {

constexpr int kCopies = 4;
constexpr double kPi = std::numbers::pi;

std::vector<EdgeRef> reduce_exits(const FlatConeSurface& s, std::vector<EdgeRef> in) {
    std::vector<EdgeRef> st;
    auto cancels = [&](const EdgeRef& a, const EdgeRef& b) { return s.link(a).partner == b; };
    for (const EdgeRef& e : in) {
        if (!st.empty() && cancels(st.back(), e)) {
            st.pop_back();
        } else {
            st.push_back(e);
        }
    }
    std::size_t lo = 0, hi = st.size();
    while (hi - lo >= 2 && cancels(st[hi - 1], st[lo])) {
        ++lo;
        --hi;
    }
    return {st.begin() + static_cast<std::ptrdiff_t>(lo), st.begin() + static_cast<std::ptrdiff_t>(hi)};
}

std::vector<EdgeRef> canonical_rotation(std::vector<EdgeRef> w) {
    std::vector<EdgeRef> best = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(w.begin(), w.begin() + 1, w.end());
        if (w < best) best = w;
    }
    return best;
}

CurveWord to_word(const std::vector<EdgeRef>& exits) {
    CurveWord w;
    for (const EdgeRef& e : exits) w.crossings.push_back({e, 1});
    return w;
}

struct Sleeve {
    int period = 0;
    std::vector<EdgeRef> exits;  // per portal
    std::vector<Isometry> develop;  // chart k coordinates -> plane, size total+1
    std::vector<Portal> portals;
    std::vector<int> left_run_start, left_run_end, right_run_start, right_run_end;
    Isometry deck;
};

Sleeve build_sleeve(const FlatConeSurface& s, const std::vector<EdgeRef>& word) {
    Sleeve sl;
    sl.period = static_cast<int>(word.size());
    const int total = kCopies * sl.period;
    sl.develop.push_back(Isometry());
    for (int k = 0; k < total; ++k) {
        const EdgeRef e = word[static_cast<std::size_t>(k % sl.period)];
        sl.exits.push_back(e);
        const Isometry& m = sl.develop.back();
        Portal p{m.apply(s.edge_end(e)), m.apply(s.edge_start(e))};
        if (k > 0) {
            // shared corridor vertices keep identical coordinates
            const EdgeRef prev_partner = s.link(sl.exits[static_cast<std::size_t>(k - 1)]).partner;
            const int n = s.vertex_count(e.chart);
            if (prev_partner.edge == (e.edge + 1) % n) p.left = sl.portals.back().left;
            if ((prev_partner.edge + 1) % n == e.edge) p.right = sl.portals.back().right;
        }
        sl.portals.push_back(p);
        sl.develop.push_back(m.compose(s.link(e).to_partner.inverse()));
    }
    sl.deck = sl.develop[static_cast<std::size_t>(sl.period)];

    auto runs = [&](bool left, std::vector<int>& start, std::vector<int>& end) {
        start.assign(static_cast<std::size_t>(total), 0);
        end.assign(static_cast<std::size_t>(total), 0);
        int k = 0;
        while (k < total) {
            int j = k;
            while (j + 1 < total) {
                const Portal& a = sl.portals[static_cast<std::size_t>(j)];
                const Portal& b = sl.portals[static_cast<std::size_t>(j + 1)];
                if (left ? !(a.left == b.left) : !(a.right == b.right)) break;
                ++j;
            }
            for (int i = k; i <= j; ++i) {
                start[static_cast<std::size_t>(i)] = k;
                end[static_cast<std::size_t>(i)] = j;
            }
            k = j + 1;
        }
    };
    runs(true, sl.left_run_start, sl.left_run_end);
    runs(false, sl.right_run_start, sl.right_run_end);
    return sl;
}

struct Straight {
    bool ok = false;
    double length = 0.0;
    bool flat_strip = false;
};

Straight straight_closure(const Sleeve& sl, double eps) {
    Straight out;
    if (!sl.deck.rotation().is_identity()) return out;
    const Vec2 c = sl.deck.translation();
    const double len = norm(c);
    if (len <= eps) return out;
    const Vec2 u = c * (1.0 / len);
    const Vec2 nrm{-u.y, u.x};
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int k = 0; k < sl.period; ++k) {
        const Portal& p = sl.portals[static_cast<std::size_t>(k)];
        if (cross(u, p.left - p.right) <= 0.0) return out;
        lo = std::max(lo, dot(nrm, p.right));
        hi = std::min(hi, dot(nrm, p.left));
    }
    // a closure touching vertices is left to the vertex path, which decides about the strip
    const double width = hi - lo;
    if (width <= eps) return out;
    const double o = 0.5 * (lo + hi);
    double prev = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= sl.period; ++k) {
        const Portal& p = sl.portals[static_cast<std::size_t>(k)];
        const double a = dot(nrm, p.right);
        const double b = dot(nrm, p.left);
        const double t = b - a > 0.0 ? std::clamp((o - a) / (b - a), 0.0, 1.0) : 0.5;
        const double along = dot(u, p.right + (p.left - p.right) * t);
        if (along < prev - eps) return out;
        prev = along;
    }
    out.ok = true;
    out.length = len;
    out.flat_strip = true;
    return out;
}

struct Bend {
    bool left = false;
    int run_start = 0;
    int run_end = 0;
    int arrival_chart_index = 0;  // sleeve chart index of the arrival
    Vec2 in;
    Vec2 out;
    // bends at one developed point (a pinch, where a left run meets a right run) share the
    // angle measured from the first arrival to the last departure
    int group_first = 0;
    int group_last = 0;
};

struct VertexPath {
    double length = std::numeric_limits<double>::infinity();
    std::vector<Bend> bends;  // the base vertex first
};

// Bend j sits between segments j-1 and j of the closed path (bend 0 is the base
// vertex). Zero-length segments come from pinches and are skipped.
void attach_segments(VertexPath& vp, const std::vector<PlanePoint>& points, double eps) {
    const int n = static_cast<int>(vp.bends.size());
    std::vector<Vec2> seg;
    for (std::size_t k = 1; k < points.size(); ++k) seg.push_back(points[k] - points[k - 1]);
    auto degenerate = [&](int k) { return norm(seg[static_cast<std::size_t>((k % n + n) % n)]) <= eps; };
    auto at = [&](int k) { return seg[static_cast<std::size_t>((k % n + n) % n)]; };
    for (int j = 0; j < n; ++j) {
        Bend& b = vp.bends[static_cast<std::size_t>(j)];
        int back = j - 1, fwd = j, first = j, last = j;
        for (int c = 0; c < n && degenerate(back); ++c, --back) first = (first - 1 + n) % n;
        for (int c = 0; c < n && degenerate(fwd); ++c, ++fwd) last = (last + 1) % n;
        b.in = at(back);
        b.out = at(fwd);
        b.group_first = first;
        b.group_last = last;
    }
}

VertexPath shortest_vertex_path(const Sleeve& sl, double eps) {
    VertexPath best;
    const int L = sl.period;
    for (int side = 0; side < 2; ++side) {
        const bool left = side == 0;
        const auto& rs = left ? sl.left_run_start : sl.right_run_start;
        const auto& re = left ? sl.left_run_end : sl.right_run_end;
        for (int k = L; k < 2 * L; ++k) {
            if (rs[static_cast<std::size_t>(k)] != k) continue;
            const int s = k;
            const int e = re[static_cast<std::size_t>(k)];
            if (e - s + 1 >= L) throw NullHomotopic("curve winds around a single point");
            const Portal& p0 = sl.portals[static_cast<std::size_t>(s)];
            const Portal& p1 = sl.portals[static_cast<std::size_t>(s + L)];
            const PlanePoint P = left ? p0.left : p0.right;
            const PlanePoint gP = left ? p1.left : p1.right;
            const std::span<const Portal> mid(sl.portals.data() + e + 1, static_cast<std::size_t>(s + L - 1 - e));
            const FunnelPath fp = string_pull(P, gP, mid);
            if (!(fp.length < best.length)) continue;

            VertexPath vp;
            vp.length = fp.length;
            vp.bends.push_back({left, s, e, s + L, {}, {}, 0, 0});
            for (const FunnelBend& fb : fp.bends) {
                const int q = fb.portal + e + 1;
                const int bs = fb.left ? sl.left_run_start[static_cast<std::size_t>(q)]
                                       : sl.right_run_start[static_cast<std::size_t>(q)];
                const int be = fb.left ? sl.left_run_end[static_cast<std::size_t>(q)]
                                       : sl.right_run_end[static_cast<std::size_t>(q)];
                vp.bends.push_back({fb.left, bs, be, bs, {}, {}, 0, 0});
            }
            attach_segments(vp, fp.points, eps);
            best = std::move(vp);
        }
    }
    return best;
}

struct BendAngles {
    Corner arrival;
    Corner departure;
    int vertex_class = 0;
    double outer = 0.0;  // angle on the side away from the corridor
    double left_angle = 0.0;
    double theta = 0.0;
    int run = 0;
};

Corner arrival_corner(const FlatConeSurface& s, const Sleeve& sl, const Bend& b) {
    const EdgeRef in_edge = sl.exits[static_cast<std::size_t>(b.arrival_chart_index)];
    const int n = s.vertex_count(in_edge.chart);
    return b.left ? Corner{in_edge.chart, (in_edge.edge + 1) % n} : Corner{in_edge.chart, in_edge.edge};
}

Corner departure_corner(const FlatConeSurface& s, const Sleeve& sl, const Bend& b) {
    const EdgeRef out_partner = s.link(sl.exits[static_cast<std::size_t>(b.run_end)]).partner;
    const int n = s.vertex_count(out_partner.chart);
    return b.left ? Corner{out_partner.chart, out_partner.edge} : Corner{out_partner.chart, (out_partner.edge + 1) % n};
}

BendAngles bend_angles(const FlatConeSurface& s, const Sleeve& sl, const VertexPath& vp, std::size_t i) {
    const Bend& b = vp.bends[i];
    const Bend& first = vp.bends[static_cast<std::size_t>(b.group_first)];
    const Bend& last = vp.bends[static_cast<std::size_t>(b.group_last)];
    BendAngles a;
    a.run = b.run_end - b.run_start + 1;
    a.arrival = arrival_corner(s, sl, b);
    a.departure = departure_corner(s, sl, b);
    a.vertex_class = s.class_of(a.arrival);
    const Isometry to_in = sl.develop[static_cast<std::size_t>(first.arrival_chart_index)].inverse();
    const Isometry to_out = sl.develop[static_cast<std::size_t>(last.run_end + 1)].inverse();
    const double back =
        cone_coordinate(s, arrival_corner(s, sl, first), direction_angle(to_in.apply_linear(-b.in)));
    const double out = cone_coordinate(s, departure_corner(s, sl, last), direction_angle(to_out.apply_linear(b.out)));
    const double theta = s.vertex_classes()[static_cast<std::size_t>(a.vertex_class)].angle_radians;
    const double left_angle = wrap(back - out, theta);
    a.outer = b.left ? left_angle : theta - left_angle;
    a.left_angle = left_angle;
    a.theta = theta;
    return a;
}

// Replaces the run of crossings around a vertex by the crossings going around
// its other side (or by the same side with full turns removed).
std::vector<EdgeRef> pivot(const FlatConeSurface& s, const std::vector<EdgeRef>& word, const Bend& b,
                           const BendAngles& a, bool unwind_only) {
    const int L = static_cast<int>(word.size());
    const int N = static_cast<int>(s.vertex_classes()[static_cast<std::size_t>(a.vertex_class)].corners.size());
    const int r = a.run;
    std::vector<EdgeRef> replacement;
    Corner c = a.arrival;
    // left-vertex runs turn counterclockwise around the vertex, right-vertex runs clockwise
    const bool go_ccw = unwind_only ? b.left : !b.left;
    const int steps = unwind_only ? r % N : N - r;
    for (int i = 0; i < steps; ++i) {
        const int n = s.vertex_count(c.chart);
        if (go_ccw) {
            replacement.push_back({c.chart, (c.vertex + n - 1) % n});
            c = s.ccw_next(c);
        } else {
            replacement.push_back({c.chart, c.vertex});
            c = s.cw_next(c);
        }
    }
    if (c != a.departure) throw std::logic_error("pivot did not reach the departure corner");
    std::vector<EdgeRef> out = replacement;
    const int first = b.run_start % L;
    for (int i = r; i < L; ++i) out.push_back(word[static_cast<std::size_t>((first + i) % L)]);
    return out;
}

}  // namespace

CurveWord reduce_word(const FlatConeSurface& s, const CurveWord& word) {
    std::vector<EdgeRef> exits;
    for (const Crossing& c : word.crossings) exits.push_back(exit_edge(s, c));
    return to_word(reduce_exits(s, std::move(exits)));
}

SpectrumEntry geodesic_length(const FlatConeSurface& s, const CurveWord& word, const SpectrumOptions& options) {
    if (!s.all_charts_convex()) throw std::invalid_argument("geodesic length requires convex charts");
    if (word.crossings.empty()) throw NullHomotopic("empty word");
    transport(s, word);  // checks closure

    const double eps = s.options().eps_geom;
    SpectrumEntry entry;
    entry.word = word;
    std::vector<EdgeRef> exits;
    for (const Crossing& c : word.crossings) exits.push_back(exit_edge(s, c));
    exits = reduce_exits(s, std::move(exits));
    std::set<std::vector<EdgeRef>> seen;

    while (true) {
        if (exits.empty()) throw NullHomotopic("word reduces to the empty curve");
        if (!seen.insert(canonical_rotation(exits)).second) {
            throw NonConvergent("corridor pivots revisit an earlier corridor");
        }
        const Sleeve sl = build_sleeve(s, exits);
        const Straight st = straight_closure(sl, eps);
        if (st.ok) {
            entry.length = st.length;
            entry.flat_strip_flag = st.flat_strip;
            entry.pivot_lengths.push_back(st.length);
            entry.taut_word = to_word(exits);
            return entry;
        }
        const VertexPath vp = shortest_vertex_path(sl, eps);
        if (!(vp.length > eps)) throw NullHomotopic("geodesic length vanishes");
        entry.pivot_lengths.push_back(vp.length);

        int worst = -1;
        double worst_outer = kPi - kEpsAngle;
        bool unwind = false;
        BendAngles worst_angles;
        bool straight_left = true, straight_right = true;
        for (std::size_t i = 0; i < vp.bends.size(); ++i) {
            const BendAngles a = bend_angles(s, sl, vp, i);
            straight_left = straight_left && std::abs(a.left_angle - kPi) <= kEpsAngle;
            straight_right = straight_right && std::abs(a.theta - a.left_angle - kPi) <= kEpsAngle;
            const int N = static_cast<int>(s.vertex_classes()[static_cast<std::size_t>(a.vertex_class)].corners.size());
            if (a.run >= N) {
                worst = static_cast<int>(i);
                worst_angles = a;
                unwind = true;
                break;
            }
            if (a.outer < worst_outer) {
                worst_outer = a.outer;
                worst = static_cast<int>(i);
                worst_angles = a;
            }
        }
        if (worst < 0) {
            // a translation whose geodesic runs straight through vertices, all with angle pi
            // on the same side, can be pushed off them into a strip
            const double c = norm(sl.deck.translation());
            entry.flat_strip_flag = sl.deck.rotation().is_identity() &&
                                    std::abs(vp.length - c) <= eps * std::max(1.0, c) &&
                                    (straight_left || straight_right);
            entry.length = vp.length;
            entry.taut_word = to_word(exits);
            return entry;
        }
        if (entry.tightening_iterations >= options.max_pivots) {
            throw NonConvergent("no taut corridor after " + std::to_string(options.max_pivots) + " pivots");
        }
        ++entry.tightening_iterations;
        exits = reduce_exits(s, pivot(s, exits, vp.bends[static_cast<std::size_t>(worst)], worst_angles, unwind));
    }
}

std::vector<SpectrumRecord> marked_spectrum(const FlatConeSurface& s, const std::vector<CurveWord>& words,
                                            const SpectrumOptions& options) {
    std::vector<SpectrumRecord> out;
    out.reserve(words.size());
    for (const CurveWord& w : words) {
        SpectrumRecord rec;
        try {
            rec.entry = geodesic_length(s, w, options);
        } catch (const NullHomotopic& e) {
            rec.error = std::string("NullHomotopic: ") + e.what();
        } catch (const NonConvergent& e) {
            rec.error = std::string("NonConvergent: ") + e.what();
        } catch (const OpenLoop& e) {
            rec.error = std::string("OpenLoop: ") + e.what();
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        out.push_back(std::move(rec));
    }
    return out;
}

SpectrumComparison compare_spectra(const FlatConeSurface& a, const FlatConeSurface& b,
                                   const std::vector<CurveWord>& words, const SpectrumOptions& options) {
    for (std::size_t i = 0; i < words.size(); ++i) {
        try {
            transport(b, words[i]);
        } catch (const std::exception& e) {
            throw WordInvalidOnB("word " + std::to_string(i) + " is not a closed curve on the second surface: " +
                                 e.what());
        }
    }
    const auto ra = marked_spectrum(a, words, options);
    const auto rb = marked_spectrum(b, words, options);
    SpectrumComparison cmp;
    for (std::size_t i = 0; i < words.size(); ++i) {
        SpectrumPair p;
        p.word_id = i;
        if (ra[i].entry) p.length_a = ra[i].entry->length;
        if (rb[i].entry) p.length_b = rb[i].entry->length;
        if (!ra[i].error.empty()) p.error = "a: " + ra[i].error;
        if (!rb[i].error.empty()) p.error += (p.error.empty() ? "b: " : "; b: ") + rb[i].error;
        if (p.length_a && p.length_b) {
            p.relative_difference = std::abs(*p.length_b - *p.length_a) / *p.length_a;
            cmp.max_relative_difference = std::max(cmp.max_relative_difference, *p.relative_difference);
        }
        cmp.pairs.push_back(std::move(p));
    }
    return cmp;
}

}  // namespace flatcone
