#pragma once

// Brute-force reference computations, independent of the library algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flatcone/surface_io.hpp"

namespace oracle {

inline std::string fixture(const std::string& name) { return std::string(FLATCONE_DATA_DIR) + "/" + name; }

inline flatcone::FlatConeSurface load(const std::string& name, const flatcone::BuildOptions& o = {}) {
    return flatcone::load_surface(fixture(name), o);
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Primitive integer vectors of length <= bound, one of each +-pair.
inline std::vector<std::pair<int, int>> primitive_lattice_vectors(double bound) {
    std::vector<std::pair<int, int>> out;
    const int r = static_cast<int>(std::floor(bound)) + 1;
    for (int p = -r; p <= r; ++p) {
        for (int q = 0; q <= r; ++q) {
            if (q == 0 && p <= 0) continue;
            if (std::gcd(std::abs(p), q) != 1) continue;
            if (std::hypot(p, q) <= bound + 1e-12) out.emplace_back(p, q);
        }
    }
    return out;
}

/// R(n) by moving a point around the cone in steps of pi and counting its
/// passes through the starting direction. The angle is measured in units of
/// pi/den so the walk is exact for theta = (num/den)*pi.
inline std::int64_t sweep_by_walking(std::int64_t num, std::int64_t den, std::int64_t n) {
    std::int64_t travelled = 0, passes = 0, steps = 0;
    while (true) {
        ++steps;
        travelled += den;
        while (travelled >= (passes + 1) * num) ++passes;
        if (passes >= n) return steps;
    }
}

/// Same walk in floating point for an arbitrary theta.
inline std::int64_t sweep_by_walking(double theta, std::int64_t n) {
    long double travelled = 0, next_pass = theta;
    std::int64_t passes = 0, steps = 0;
    while (true) {
        ++steps;
        travelled += std::numbers::pi_v<long double>;
        while (travelled >= next_pass) {
            ++passes;
            next_pass = static_cast<long double>(passes + 1) * theta;
        }
        if (passes >= n) return steps;
    }
}

struct Orbit {
    std::int64_t distinct = 0;
    std::int64_t ccw_step = 0;
};

/// Direct orbit of i*pi mod (num/den)*pi: number of distinct points and the
/// first index landing on the nearest point counterclockwise of the start.
inline Orbit orbit(std::int64_t num, std::int64_t den) {
    std::set<std::int64_t> seen;
    std::vector<std::int64_t> seq;
    for (std::int64_t i = 0;; ++i) {
        const std::int64_t x = (i * den) % num;  // units of pi/den
        if (!seen.insert(x).second) break;
        seq.push_back(x);
    }
    std::int64_t nearest = num;
    for (std::int64_t x : seq) {
        if (x > 0) nearest = std::min(nearest, x);
    }
    Orbit o;
    o.distinct = static_cast<std::int64_t>(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] == nearest) {
            o.ccw_step = static_cast<std::int64_t>(i);
            break;
        }
    }
    return o;
}

/// The same surface with charts renumbered and listed in another order, and
/// each polygon's vertex list started at a different vertex.
inline std::string relabelled(const std::string& text, std::mt19937& rng) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto& polys = j["polygons"];
    const std::size_t n = polys.size();
    std::vector<int> new_id(n);
    std::iota(new_id.begin(), new_id.end(), 100);
    std::shuffle(new_id.begin(), new_id.end(), rng);
    std::map<int, std::pair<int, int>> remap;  // old id -> (new id, vertex shift)
    for (std::size_t k = 0; k < n; ++k) {
        auto& p = polys[k];
        const int old = p["id"].get<int>();
        auto verts = p["vertices"];
        const int m = static_cast<int>(verts.size());
        const int shift = static_cast<int>(rng() % static_cast<unsigned>(m));
        nlohmann::json rotated = nlohmann::json::array();
        for (int i = 0; i < m; ++i) rotated.push_back(verts[static_cast<std::size_t>((i + shift) % m)]);
        p["vertices"] = rotated;
        const int fresh = new_id[k];
        p["id"] = fresh;
        remap[old] = {fresh, shift};
    }
    std::shuffle(polys.begin(), polys.end(), rng);
    auto fix = [&](nlohmann::json& ref) {
        const auto [id, shift] = remap.at(ref[0].get<int>());
        int m = 0;
        for (const auto& p : polys) {
            if (p["id"].get<int>() == id) m = static_cast<int>(p["vertices"].size());
        }
        ref[0] = id;
        ref[1] = ((ref[1].get<int>() - shift) % m + m) % m;
    };
    for (auto& g : j["gluings"]) {
        fix(g["from"]);
        fix(g["to"]);
    }
    std::shuffle(j["gluings"].begin(), j["gluings"].end(), rng);
    return j.dump();
}

}  // namespace oracle
