#include "flatcone/funnel.hpp"

namespace flatcone {

FunnelPath string_pull(const PlanePoint& start, const PlanePoint& end, std::span<const Portal> portals) {
    // index 0 is the start, index n+1 the end, both as degenerate portals
    const int n = static_cast<int>(portals.size());
    auto left_at = [&](int i) { return i == 0 ? start : (i > n ? end : portals[static_cast<std::size_t>(i - 1)].left); };
    auto right_at = [&](int i) {
        return i == 0 ? start : (i > n ? end : portals[static_cast<std::size_t>(i - 1)].right);
    };

    FunnelPath out;
    out.points.push_back(start);
    PlanePoint apex = start, left = start, right = start;
    int apex_i = 0, left_i = 0, right_i = 0;

    for (int i = 1; i <= n + 1; ++i) {
        const PlanePoint l = left_at(i);
        const PlanePoint r = right_at(i);

        if (orient(apex, right, r) >= 0.0) {
            if (apex == right || r == left || orient(apex, left, r) < 0.0) {
                right = r;
                right_i = i;
            } else {
                out.points.push_back(left);
                out.bends.push_back({left_i - 1, true, left});
                apex = left;
                apex_i = left_i;
                right = left = apex;
                right_i = left_i = apex_i;
                i = apex_i;
                continue;
            }
        }

        if (orient(apex, left, l) <= 0.0) {
            if (apex == left || l == right || orient(apex, right, l) > 0.0) {
                left = l;
                left_i = i;
            } else {
                out.points.push_back(right);
                out.bends.push_back({right_i - 1, false, right});
                apex = right;
                apex_i = right_i;
                right = left = apex;
                right_i = left_i = apex_i;
                i = apex_i;
                continue;
            }
        }
    }
    out.points.push_back(end);
    for (std::size_t k = 1; k < out.points.size(); ++k) out.length += distance(out.points[k - 1], out.points[k]);
    return out;
}

}  // namespace flatcone
