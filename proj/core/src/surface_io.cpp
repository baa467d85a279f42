#include "flatcone/surface_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace flatcone {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw SurfaceError(SurfaceErrc::Parse, what); }

PlanePoint read_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        parse_fail(std::string(what) + " must be [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

EdgeRef read_edge(const json& j, const std::map<int, int>& index_of) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        parse_fail("edge reference must be [chart, edge]");
    }
    const int id = j[0].get<int>();
    auto it = index_of.find(id);
    if (it == index_of.end()) parse_fail("gluing references unknown chart " + std::to_string(id));
    return {it->second, j[1].get<int>()};
}

}  // namespace

FlatConeSurface parse_surface(std::string_view json_text, const BuildOptions& options) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        parse_fail(e.what());
    }
    if (!doc.is_object() || !doc.contains("polygons") || !doc.contains("gluings")) {
        parse_fail("expected an object with \"polygons\" and \"gluings\"");
    }
    const json& polys = doc["polygons"];
    const json& glues = doc["gluings"];
    if (!polys.is_array() || !glues.is_array()) parse_fail("\"polygons\" and \"gluings\" must be arrays");

    std::vector<PolygonChart> charts;
    std::map<int, int> index_of;
    for (const auto& p : polys) {
        if (!p.is_object() || !p.contains("id") || !p["id"].is_number_integer() || !p.contains("vertices") ||
            !p["vertices"].is_array()) {
            parse_fail("polygon entries need an integer \"id\" and a \"vertices\" array");
        }
        PolygonChart c;
        c.id = p["id"].get<int>();
        for (const auto& v : p["vertices"]) c.vertices.push_back(read_point(v, "vertex"));
        if (!index_of.emplace(c.id, static_cast<int>(charts.size())).second) {
            parse_fail("duplicate polygon id " + std::to_string(c.id));
        }
        charts.push_back(std::move(c));
    }

    std::vector<GluingSpec> specs;
    for (const auto& g : glues) {
        if (!g.is_object() || !g.contains("from") || !g.contains("to")) {
            parse_fail("gluing entries need \"from\" and \"to\"");
        }
        GluingSpec s;
        s.from = read_edge(g["from"], index_of);
        s.to = read_edge(g["to"], index_of);
        if (g.contains("rotation_pi")) {
            const json& r = g["rotation_pi"];
            if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer() ||
                r[1].get<long long>() <= 0) {
                parse_fail("rotation_pi must be [numerator, positive denominator]");
            }
            s.rotation = RotationClass(r[0].get<long long>(), r[1].get<long long>());
        }
        if (g.contains("translation")) s.translation = read_point(g["translation"], "translation");
        specs.push_back(s);
    }
    return FlatConeSurface::build(std::move(charts), specs, options);
}

FlatConeSurface load_surface(const std::filesystem::path& path, const BuildOptions& options) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_surface(ss.str(), options);
}

std::string surface_to_json(const FlatConeSurface& surface) {
    json doc;
    doc["polygons"] = json::array();
    for (const auto& c : surface.charts()) {
        json verts = json::array();
        for (const auto& v : c.vertices) verts.push_back({v.x, v.y});
        doc["polygons"].push_back({{"id", c.id}, {"vertices", verts}});
    }
    doc["gluings"] = json::array();
    for (const auto& g : surface.gluings()) {
        doc["gluings"].push_back({
            {"from", {surface.chart(g.from.chart).id, g.from.edge}},
            {"to", {surface.chart(g.to.chart).id, g.to.edge}},
            {"rotation_pi", {g.rotation.numerator(), g.rotation.denominator()}},
            {"translation", {g.translation.x, g.translation.y}},
        });
    }
    return doc.dump(1);
}

FlatConeSurface scaled(const FlatConeSurface& surface, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
    std::vector<PolygonChart> charts = surface.charts();
    for (auto& c : charts) {
        for (auto& v : c.vertices) v = v * factor;
    }
    std::vector<GluingSpec> specs;
    for (const auto& g : surface.gluings()) specs.push_back({g.from, g.to, g.rotation, std::nullopt});
    BuildOptions opts = surface.options();
    opts.eps_geom *= std::max(1.0, factor);
    return FlatConeSurface::build(std::move(charts), specs, opts);
}

}  // namespace flatcone
