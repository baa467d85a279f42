#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatcone/chains.hpp"
#include "flatcone/geodesic.hpp"
#include "flatcone/saddle.hpp"
#include "flatcone/spectrum.hpp"
#include "flatcone/surface_io.hpp"

namespace flatcone::cli {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

json rotation_json(const RotationClass& r) { return json::array({r.numerator(), r.denominator()}); }
json pi_json(const PiMultiple& p) { return json::array({p.numerator(), p.denominator()}); }

json word_json(const FlatConeSurface& s, const CurveWord& w) {
    json a = json::array();
    for (const Crossing& c : w.crossings) a.push_back({s.chart(c.edge.chart).id, c.edge.edge, c.direction});
    return a;
}

BuildOptions build_options(const CommandConfig& cfg) {
    BuildOptions o;
    if (cfg.epsilon) {
        if (!(*cfg.epsilon > 0.0)) throw InputError("--epsilon must be positive");
        o.eps_geom = *cfg.epsilon;
    }
    o.retain_marked_points = cfg.retain_marked;
    o.allow_positive_curvature = cfg.allow_positive_curvature;
    return o;
}

FlatConeSurface surface_arg(const CommandConfig& cfg, std::size_t i) {
    if (cfg.inputs.size() <= i) throw InputError(cfg.subcommand + ": missing surface file");
    return load_surface(cfg.inputs[i], build_options(cfg));
}

Format format_of(const CommandConfig& cfg, Format fallback) { return cfg.format.value_or(fallback); }

json cone_json(const ConePoint& cp) {
    json j{{"id", cp.id}, {"angle_radians", cp.angle_radians}, {"exact", cp.exact}, {"marked", cp.marked}};
    if (cp.exact) j["angle_pi"] = pi_json(cp.angle);
    return j;
}

DirectedPoint start_point(const FlatConeSurface& s, const CommandConfig& cfg) {
    if (!cfg.chart) {
        // seeded random start: uniform chart, point inside a random fan triangle, uniform direction
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<std::size_t> pick(0, s.chart_count() - 1);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const int c = static_cast<int>(pick(rng));
        const auto& v = s.chart(c).vertices;
        std::uniform_int_distribution<std::size_t> tri(1, v.size() - 2);
        const std::size_t t = tri(rng);
        double a = unit(rng), b = unit(rng);
        if (a + b > 1.0) {
            a = 1.0 - a;
            b = 1.0 - b;
        }
        const PlanePoint p = v[0] + (v[t] - v[0]) * a + (v[t + 1] - v[0]) * b;
        return {c, p, unit(rng) * kTwoPi};
    }
    const int c = s.chart_index(*cfg.chart);
    PlanePoint p;
    if (cfg.x && cfg.y) {
        p = {*cfg.x, *cfg.y};
    } else {
        const auto& v = s.chart(c).vertices;
        for (const auto& q : v) p += q;
        p = p * (1.0 / static_cast<double>(v.size()));
    }
    return {c, p, wrap(cfg.direction, kTwoPi)};
}

int cmd_validate(const CommandConfig& cfg, std::ostream& out) {
    const FlatConeSurface s = surface_arg(cfg, 0);
    json cones = json::array();
    for (const ConePoint& cp : s.cone_points()) cones.push_back(cone_json(cp));
    json j{{"chi", s.euler_characteristic()},
           {"genus", s.genus()},
           {"charts", s.chart_count()},
           {"gluings", s.gluings().size()},
           {"vertex_classes", s.vertex_classes().size()},
           {"all_angles_exact", s.all_angles_exact()},
           {"cone_points", cones}};
    out << j.dump() << '\n';
    return kExitOk;
}

int cmd_angles(const CommandConfig& cfg, std::ostream& out) {
    const FlatConeSurface s = surface_arg(cfg, 0);
    const auto cones = cone_angles(s);
    if (format_of(cfg, Format::Json) == Format::Csv) {
        out << "cone_point,angle_pi,angle_radians,exact\n";
        for (const ConePoint& cp : cones) {
            out << cp.id << ',' << (cp.exact ? cp.angle.to_string() : "") << ',' << num(cp.angle_radians) << ','
                << (cp.exact ? "true" : "false") << '\n';
        }
        return kExitOk;
    }
    const AngleConditionResult ac = angle_condition(s);
    json list = json::array();
    for (const ConePoint& cp : cones) list.push_back(cone_json(cp));
    json wit = json::array();
    for (const AngleWitness& w : ac.witnesses) {
        json x{{"cone_point", w.cone_point}, {"angle_radians", w.angle_radians}};
        if (w.angle) x["angle_pi"] = pi_json(*w.angle);
        wit.push_back(x);
    }
    out << json{{"cone_points", list},
                {"angle_condition", {{"holds", ac.holds}, {"approximate", ac.approximate}, {"witnesses", wit}}}}
               .dump()
        << '\n';
    return kExitOk;
}

json holonomy_json(const FlatConeSurface& s, const HolonomyReport& r) {
    json gens = json::array();
    for (const LoopRotation& lr : r.generator_rotations) {
        gens.push_back({{"gluing", lr.gluing}, {"rotation_pi", rotation_json(lr.rotation)},
                        {"crossings", word_json(s, lr.loop)}});
    }
    json cones = json::array();
    for (const ConeRotation& cr : r.cone_rotations) {
        cones.push_back({{"cone_point", cr.cone_point}, {"rotation_pi", rotation_json(cr.rotation)}});
    }
    json wit = json::array();
    for (const HolonomyWitness& w : r.witnesses) {
        wit.push_back({{"kind", w.kind}, {"index", w.index}, {"rotation_pi", rotation_json(w.rotation)}});
    }
    return {{"generator_rotations", gens},
            {"cone_rotations", cones},
            {"group_is_pm_identity", r.group_is_pm_identity},
            {"approximate", r.approximate},
            {"witnesses", wit}};
}

int cmd_holonomy(const CommandConfig& cfg, std::ostream& out) {
    const FlatConeSurface s = surface_arg(cfg, 0);
    out << holonomy_json(s, holonomy_condition(s)).dump() << '\n';
    return kExitOk;
}

int cmd_is_qd(const CommandConfig& cfg, std::ostream& out) {
    const FlatConeSurface s = surface_arg(cfg, 0);
    const QuadraticDifferentialDecision d = is_quadratic_differential_metric(s);
    json wit = json::array();
    for (const AngleWitness& w : d.angles.witnesses) {
        json x{{"cone_point", w.cone_point}, {"angle_radians", w.angle_radians}};
        if (w.angle) x["angle_pi"] = pi_json(*w.angle);
        wit.push_back(x);
    }
    json j{{"decision", d.yes ? "yes" : "no"},
           {"approximate", d.approximate},
           {"reasons", d.reasons},
           {"angle_condition", {{"holds", d.angles.holds}, {"witnesses", wit}}},
           {"holonomy", holonomy_json(s, d.holonomy)}};
    out << j.dump() << '\n';
    return d.yes ? kExitOk : kExitNo;
}

int cmd_trace(const CommandConfig& cfg, std::ostream& out) {
    const FlatConeSurface s = surface_arg(cfg, 0);
    const DirectedPoint start = start_point(s, cfg);
    const GeodesicPath p = trace(s, start, cfg.max_length);
    const bool csv = format_of(cfg, Format::Json) == Format::Csv;
    if (csv) out << "chart,x0,y0,x1,y1,length\n";
    for (const PathSegment& seg : p.segments) {
        const int id = s.chart(seg.chart).id;
        if (csv) {
            out << id << ',' << num(seg.from.x) << ',' << num(seg.from.y) << ',' << num(seg.to.x) << ','
                << num(seg.to.y) << ',' << num(seg.length) << '\n';
        } else {
            out << json{{"chart", id}, {"from", {seg.from.x, seg.from.y}}, {"to", {seg.to.x, seg.to.y}},
                        {"length", seg.length}}
                       .dump()
                << '\n';
        }
    }
    if (!csv) {
        json end{{"terminal", p.terminal == Terminal::ConePointHit ? "ConePointHit" : "LengthReached"},
                 {"length", p.length},
                 {"crossings", p.crossings.size()},
                 {"start", {{"chart", s.chart(start.chart).id}, {"x", start.position.x}, {"y", start.position.y},
                            {"direction", start.direction}}},
                 {"end", {{"chart", s.chart(p.end.chart).id}, {"x", p.end.position.x}, {"y", p.end.position.y},
                          {"direction", p.end.direction}}}};
        if (p.hit) {
            end["cone_point"] = p.hit->cone_point;
            end["arrival_direction"] = p.hit->arrival_direction;
        }
        out << end.dump() << '\n';
    }
    return kExitOk;
}

int cmd_saddles(const CommandConfig& cfg, std::ostream& out) {
    const FlatConeSurface s = surface_arg(cfg, 0);
    SaddleOptions opt;
    opt.corridor_cap = cfg.corridor_cap;
    const auto list = enumerate_saddle_connections(s, cfg.length_bound, opt);
    const bool csv = format_of(cfg, Format::Json) == Format::Csv;
    if (csv) out << "start_cone,end_cone,dx,dy,length\n";
    for (const SaddleConnection& sc : list) {
        if (csv) {
            out << sc.start_cone << ',' << sc.end_cone << ',' << num(sc.displacement.x) << ','
                << num(sc.displacement.y) << ',' << num(sc.length) << '\n';
        } else {
            out << json{{"start_cone", sc.start_cone}, {"end_cone", sc.end_cone}, {"dx", sc.displacement.x},
                        {"dy", sc.displacement.y}, {"length", sc.length}}
                       .dump()
                << '\n';
        }
    }
    return kExitOk;
}

int cmd_chain(const CommandConfig& cfg, std::ostream& out) {
    if (cfg.theta_pi.empty()) throw InputError("chain: --theta-pi is required");
    if (cfg.n_max < 1) throw InputError("chain: --n-max must be at least 1");
    PiMultiple theta;
    try {
        theta = parse_pi_multiple(cfg.theta_pi);
    } catch (const std::exception& e) {
        throw InputError(std::string("chain: ") + e.what());
    }
    const Chain chain = Chain::exact(theta, cfg.phi0);
    const ChainInvariants inv = chain_invariants(chain);
    const bool csv = format_of(cfg, Format::Csv) == Format::Csv;
    if (csv) out << "n,R,lower,upper,lower_pi,upper_pi,periodic,k,step\n";
    for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
        const AngleInterval iv = cone_angle_bounds(sweep_count(chain, n), n);
        if (csv) {
            out << n << ',' << iv.sweep << ',' << num(iv.lo) << ',' << num(iv.hi) << ',' << iv.lo_pi.to_string()
                << ',' << iv.hi_pi.to_string() << ',' << (inv.periodic ? "true" : "false") << ',' << inv.k << ','
                << inv.n << '\n';
        } else {
            out << json{{"n", n}, {"R", iv.sweep}, {"lower", iv.lo}, {"upper", iv.hi},
                        {"periodic", inv.periodic}, {"k", inv.k}, {"step", inv.n}}
                       .dump()
                << '\n';
        }
    }
    return kExitOk;
}

struct RawCrossing {
    int chart_id;
    int edge;
    int direction;
};

std::vector<std::vector<RawCrossing>> read_raw_words(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open words file " + path);
    std::vector<std::vector<RawCrossing>> words;
    try {
        const json j = json::parse(in);
        if (!j.is_array()) throw InputError("words file must hold a JSON list");
        for (const auto& w : j) {
            std::vector<RawCrossing> word;
            for (const auto& c : w) {
                if (!c.is_array() || c.size() != 3) throw InputError("each crossing is [chart_id, edge, direction]");
                word.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>()});
            }
            words.push_back(std::move(word));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("words file: ") + e.what());
    }
    return words;
}

std::vector<CurveWord> resolve_words(const std::vector<std::vector<RawCrossing>>& raw, const FlatConeSurface& s) {
    std::vector<CurveWord> out;
    for (const auto& w : raw) {
        CurveWord word;
        for (const RawCrossing& c : w) {
            if (c.direction != 1 && c.direction != -1) throw InputError("crossing direction must be 1 or -1");
            const int idx = s.chart_index(c.chart_id);
            if (c.edge < 0 || c.edge >= s.vertex_count(idx)) {
                throw std::out_of_range("chart " + std::to_string(c.chart_id) + " has no edge " +
                                        std::to_string(c.edge));
            }
            word.crossings.push_back({{idx, c.edge}, c.direction});
        }
        out.push_back(std::move(word));
    }
    return out;
}

int cmd_spectrum(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    const FlatConeSurface s = surface_arg(cfg, 0);
    if (cfg.words_path.empty()) throw InputError("spectrum: --words is required");
    std::vector<CurveWord> words;
    try {
        words = resolve_words(read_raw_words(cfg.words_path), s);
    } catch (const std::out_of_range& e) {
        throw InputError(e.what());
    }
    const auto records = marked_spectrum(s, words);
    const bool csv = format_of(cfg, Format::Csv) == Format::Csv;
    if (csv) out << "word_id,length,iterations,flat_strip\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SpectrumRecord& r = records[i];
        if (!r.entry) err << "word " << i << ": " << r.error << '\n';
        if (csv) {
            out << i << ',';
            if (r.entry) {
                out << num(r.entry->length) << ',' << r.entry->tightening_iterations << ','
                    << (r.entry->flat_strip_flag ? "true" : "false");
            } else {
                out << ",,";
            }
            out << '\n';
        } else {
            json j{{"word_id", i}};
            if (r.entry) {
                j["length"] = r.entry->length;
                j["iterations"] = r.entry->tightening_iterations;
                j["flat_strip"] = r.entry->flat_strip_flag;
            } else {
                j["error"] = r.error;
            }
            out << j.dump() << '\n';
        }
    }
    return kExitOk;
}

int cmd_compare(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    const FlatConeSurface a = surface_arg(cfg, 0);
    const FlatConeSurface b = surface_arg(cfg, 1);
    if (cfg.words_path.empty()) throw InputError("compare: --words is required");
    const auto raw = read_raw_words(cfg.words_path);
    std::vector<CurveWord> words;
    try {
        words = resolve_words(raw, a);
    } catch (const std::out_of_range& e) {
        throw InputError(e.what());
    }
    try {
        resolve_words(raw, b);
    } catch (const std::out_of_range& e) {
        throw WordInvalidOnB(e.what());
    }
    const SpectrumComparison cmp = compare_spectra(a, b, words);
    const bool csv = format_of(cfg, Format::Json) == Format::Csv;
    if (csv) out << "word_id,length_a,length_b,relative_difference\n";
    json pairs = json::array();
    for (const SpectrumPair& p : cmp.pairs) {
        if (!p.error.empty()) err << "word " << p.word_id << ": " << p.error << '\n';
        if (csv) {
            out << p.word_id << ',' << (p.length_a ? num(*p.length_a) : "") << ','
                << (p.length_b ? num(*p.length_b) : "") << ','
                << (p.relative_difference ? num(*p.relative_difference) : "") << '\n';
        } else {
            json j{{"word_id", p.word_id}};
            j["length_a"] = p.length_a ? json(*p.length_a) : json(nullptr);
            j["length_b"] = p.length_b ? json(*p.length_b) : json(nullptr);
            j["relative_difference"] = p.relative_difference ? json(*p.relative_difference) : json(nullptr);
            if (!p.error.empty()) j["error"] = p.error;
            pairs.push_back(j);
        }
    }
    if (!csv) out << json{{"pairs", pairs}, {"max_relative_difference", cmp.max_relative_difference}}.dump() << '\n';
    return kExitOk;
}

int cmd_density(const CommandConfig& cfg, std::ostream& out) {
    const FlatConeSurface s = surface_arg(cfg, 0);
    const DirectedPoint start = start_point(s, cfg);
    const double coverage = density_profile(s, start, cfg.max_length, cfg.grid);
    if (format_of(cfg, Format::Json) == Format::Csv) {
        out << "coverage,grid,length\n" << num(coverage) << ',' << cfg.grid << ',' << num(cfg.max_length) << '\n';
    } else {
        out << json{{"coverage", coverage}, {"grid", cfg.grid}, {"length", cfg.max_length}}.dump() << '\n';
    }
    return kExitOk;
}

}  // namespace

std::vector<CurveWord> load_words(const std::string& path, const FlatConeSurface& surface) {
    return resolve_words(read_raw_words(path), surface);
}

int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::string& c = cfg.subcommand;
        if (c == "validate") return cmd_validate(cfg, out);
        if (c == "angles") return cmd_angles(cfg, out);
        if (c == "is-qd") return cmd_is_qd(cfg, out);
        if (c == "holonomy") return cmd_holonomy(cfg, out);
        if (c == "trace") return cmd_trace(cfg, out);
        if (c == "saddles") return cmd_saddles(cfg, out);
        if (c == "chain") return cmd_chain(cfg, out);
        if (c == "spectrum") return cmd_spectrum(cfg, out, err);
        if (c == "compare") return cmd_compare(cfg, out, err);
        if (c == "density") return cmd_density(cfg, out);
        err << "unknown subcommand '" << c << "'\n";
        return kExitInput;
    } catch (const SurfaceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const WordInvalidOnB& e) {
        err << "error: WordInvalidOnB: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const SaddleExplosion& e) {
        err << "error: SaddleExplosion: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalStall& e) {
        err << "error: NumericalStall: " << e.what() << '\n';
        return kExitInput;
    }
}

int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandConfig cfg;
    CLI::App app{"Flat cone surfaces: validation, geodesics, saddle connections, holonomy, chains, spectra",
                 "flatcone"};
    app.require_subcommand(1);

    std::string format;
    double epsilon = 0.0;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    auto* eps_opt = app.add_option("--epsilon", epsilon, "Geometric tolerance");
    app.add_option("--seed", cfg.seed, "Seed for random starts")->capture_default_str();
    app.add_flag("--retain-marked", cfg.retain_marked, "Keep angle-2pi vertices as marked points");
    app.add_flag("--allow-positive-curvature", cfg.allow_positive_curvature, "Accept cone angles below 2pi");

    auto surface_cmd = [&](const std::string& name, const std::string& help, std::size_t files = 1) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("surface", cfg.inputs, "Surface JSON file(s)")->required()->expected(static_cast<int>(files));
        return sub;
    };
    surface_cmd("validate", "Build the surface and report chi, genus and cone points");
    surface_cmd("angles", "Cone angles and the integral-angle condition");
    surface_cmd("is-qd", "Decide whether the metric comes from a quadratic differential");
    surface_cmd("holonomy", "Holonomy report");

    auto add_start = [&](CLI::App* sub) {
        sub->add_option("--chart", cfg.chart, "Start chart id (seeded random start when omitted)");
        sub->add_option("--x", cfg.x, "Start x");
        sub->add_option("--y", cfg.y, "Start y");
        sub->add_option("--direction", cfg.direction, "Start direction, radians");
    };
    CLI::App* trace_cmd = surface_cmd("trace", "Trace a geodesic");
    add_start(trace_cmd);
    trace_cmd->add_option("--max-length", cfg.max_length, "Length to trace")->capture_default_str();

    CLI::App* saddles = surface_cmd("saddles", "Saddle connections up to a length bound");
    saddles->add_option("--length-bound", cfg.length_bound, "Length bound")->required();
    saddles->add_option("--corridor-cap", cfg.corridor_cap, "Corridor cap")->capture_default_str();

    CLI::App* chain = app.add_subcommand("chain", "Sweep counts, cone-angle bounds and chain invariants");
    chain->add_option("--theta-pi", cfg.theta_pi, "Cone angle as p/q (units of pi)")->required();
    chain->add_option("--n-max", cfg.n_max, "Largest n")->capture_default_str();
    chain->add_option("--phi0", cfg.phi0, "Initial direction")->capture_default_str();

    CLI::App* spectrum = surface_cmd("spectrum", "Geodesic lengths of closed-curve words");
    spectrum->add_option("--words", cfg.words_path, "Words JSON file")->required();

    CLI::App* compare = surface_cmd("compare", "Compare lengths of the same words on two surfaces", 2);
    compare->add_option("--words", cfg.words_path, "Words JSON file")->required();

    CLI::App* density = surface_cmd("density", "Grid coverage of a traced geodesic");
    add_start(density);
    density->add_option("--length", cfg.max_length, "Total length")->capture_default_str();
    density->add_option("--grid", cfg.grid, "Grid resolution per chart")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    for (CLI::App* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
    if (!format.empty()) cfg.format = format == "csv" ? Format::Csv : Format::Json;
    if (eps_opt->count() > 0) cfg.epsilon = epsilon;
    return run(cfg, out, err);
}

}  // namespace flatcone::cli
