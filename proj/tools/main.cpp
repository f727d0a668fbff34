#include "suites.hpp"

#include "mirrorglue/data.hpp"
#include "mirrorglue/mf.hpp"
#include "mirrorglue/tropical.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace mg;

namespace {

enum Exit { Ok = 0, Failed = 1, Usage = 2 };

struct RunConfig {
    std::string curve, models, face, out, format = "text", truncation;
    std::vector<std::string> windings, a1, suites;
    std::uint64_t seed = 7;
    int arity = 2;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a path, or the name of a shipped curve
Curve read_curve(const std::string& arg)
{
    if (arg.empty()) throw UsageError("--curve is required");
    if (fs::exists(arg)) return load_curve(arg);
    if (fs::exists(curve_dir() + "/" + arg + ".json")) return load_shipped_curve(arg);
    throw UsageError("no curve file or shipped curve named " + arg);
}

std::map<std::string, int> edge_ints(const std::vector<std::string>& items, const std::string& flag)
{
    std::map<std::string, int> out;
    for (auto& it : items) {
        auto eq = it.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError(flag + ": expected edge=integer, got " + it);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(it.substr(eq + 1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != it.size() - eq - 1) throw UsageError(flag + ": not an integer in " + it);
        out[it.substr(0, eq)] = v;
    }
    return out;
}

// map tables come one image per line
std::string oneline(std::string s)
{
    while (!s.empty() && s.back() == '\n') s.pop_back();
    std::string r;
    for (char ch : s) r += ch == '\n' ? std::string("; ") : std::string(1, ch);
    return r;
}

std::string qstr(const Q2& p) { return "(" + to_string(p[0]) + ", " + to_string(p[1]) + ")"; }

std::string deformations_str(const Chart& ch, const Curve& c)
{
    std::string s;
    auto vars = chart_vars(c, ch.vertex, false);
    for (auto& d : ch.deformations)
        s += std::string(s.empty() ? "" : ", ") + (d.kind == DeformKind::Tilde ? "~" : "'") + vars[d.slot] + " by " +
             to_string(d.amount);
    return s.empty() ? "none" : s;
}

LaurentPoly truncate_poly(const LaurentPoly& p, const std::optional<ExtQ>& order)
{
    if (!order) return p;
    LaurentPoly r(p.vars());
    for (auto& [e, c] : p.terms()) r.add_term(e, c.truncated(*order));
    return r;
}

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

// ---------------------------------------------------------------- mirror
int cmd_mirror(const RunConfig& cfg)
{
    Curve c = read_curve(cfg.curve);
    Fan f = dual_fan(c);
    std::optional<ExtQ> order;
    if (!cfg.truncation.empty()) {
        Q t;
        if (t.set_str(cfg.truncation, 10) != 0) throw UsageError("--truncation: expected p/q, got " + cfg.truncation);
        t.canonicalize();
        order = ExtQ::of(t);
    }

    json j;
    j["curve"] = c.name;
    j["vertices"] = c.vertices.size();
    j["edges"] = c.edges.size();
    j["warnings"] = c.warnings;
    json rays = json::array();
    for (std::size_t i = 0; i < f.points.size(); ++i)
        rays.push_back({{"face", f.face_id(i)}, {"interior", bool(f.interior[i])}});
    j["fan"] = rays;

    json charts = json::array();
    for (auto& v : c.vertices) {
        auto vars = chart_vars(c, v.id, true);
        charts.push_back({{"vertex", v.id},
                          {"position", qstr(v.pos)},
                          {"variables", std::vector<std::string>(vars.begin(), vars.end())},
                          {"W", truncate_poly(chart_potential(c, v.id, true), order).str()},
                          {"W_immersed", truncate_poly(chart_potential(c, v.id, false), order).str()}});
    }
    j["charts"] = charts;

    json trans = json::array();
    for (auto& e : c.edges) {
        if (!e.finite()) continue;
        trans.push_back({{"edge", e.id},
                         {"from", e.ends[0]},
                         {"to", e.ends[1]},
                         {"a1", e.a1},
                         {"a2", e.a2()},
                         {"area", to_string(e.area)},
                         {"exact", oneline(transition_map(c, e.id, true).table())},
                         {"immersed", oneline(transition_map(c, e.id, false).table())}});
    }
    j["transitions"] = trans;

    auto coc = cocycle_check(c);
    json cycles = json::array();
    for (auto& cy : coc.cycles) {
        std::string walk;
        for (auto& v : cy.vertices) walk += (walk.empty() ? "" : " > ") + v;
        cycles.push_back({{"walk", walk}, {"ok", cy.ok}, {"composed", oneline(cy.composed.table())}});
    }
    j["cocycle"] = {{"ok", coc.ok()}, {"cycles", cycles}};
    auto pot = global_potential_check(c);
    j["potential"] = {{"ok", pot.ok()}};

    json cov;
    std::vector<Chart> drawn;
    try {
        auto cv = covering_collection(c);
        drawn = cv.charts;
        json ch = json::array(), steps = json::array(), strata = json::array();
        for (auto& x : cv.charts)
            ch.push_back({{"chart", x.id}, {"vertex", x.vertex}, {"deformations", deformations_str(x, c)}});
        for (auto& s : cv.steps)
            steps.push_back({{"ray", s.ray},
                             {"chart", s.chart},
                             {"toward", s.toward},
                             {"edge", s.edge},
                             {"amount", to_string(s.amount)},
                             {"shift", qstr(s.shift)}});
        for (auto& s : cv.certificate.strata) {
            std::string pieces;
            for (auto& p : s.pieces)
                pieces += (pieces.empty() ? "" : ", ") + p.chart + " [" + (p.range.lo ? to_string(*p.range.lo) : "-inf") +
                          ", " + (p.range.hi ? to_string(*p.range.hi) : "inf") + "]";
            strata.push_back({{"edge", s.edge}, {"covered", s.covered}, {"pieces", pieces}, {"problems", s.problems}});
        }
        cov = {{"charts", ch},
               {"steps", steps},
               {"certificate", {{"ok", cv.certificate.ok()}, {"strata", strata}, {"failures", cv.certificate.failures}}}};
    } catch (const std::runtime_error& e) {
        cov = {{"error", e.what()}};
        for (auto& v : c.vertices) drawn.push_back(undeformed_chart(c, v.id));
    }
    j["covering"] = cov;

    if (!cfg.out.empty()) {
        fs::path svg = fs::path(cfg.out) / (c.name + ".svg");
        std::optional<std::size_t> face;
        if (!cfg.face.empty()) face = f.face(cfg.face);
        write_file(svg, render_svg(c, f, drawn, face));
        j["svg"] = svg.filename().string();
    }

    bool ok = coc.ok() && pot.ok() && cov.contains("certificate") && cov["certificate"]["ok"].get<bool>();
    if (cfg.format == "structured") {
        std::cout << j.dump(2) << "\n";
        return ok ? Ok : Failed;
    }
    std::ostringstream o;
    o << "curve " << c.name << ": " << c.vertices.size() << " vertices, " << c.edges.size() << " edges\n";
    for (auto& w : c.warnings) o << "warning: " << w << "\n";
    o << "fan:";
    for (auto& r : j["fan"]) o << " " << r["face"].get<std::string>() << (r["interior"].get<bool>() ? "*" : "");
    o << "\ncharts:\n";
    for (auto& x : j["charts"])
        o << "  " << x["vertex"].get<std::string>() << " at " << x["position"].get<std::string>()
          << "  W = " << x["W"].get<std::string>() << "  (immersed " << x["W_immersed"].get<std::string>() << ")\n";
    o << "transitions:\n";
    for (auto& t : j["transitions"])
        o << "  " << t["edge"].get<std::string>() << " " << t["from"].get<std::string>() << " -> "
          << t["to"].get<std::string>() << " a1=" << t["a1"].get<int>() << " a2=" << t["a2"].get<int>()
          << " area=" << t["area"].get<std::string>() << ": " << t["exact"].get<std::string>() << "\n";
    o << "cocycle: " << (coc.ok() ? "ok" : "FAILED") << " (" << coc.cycles.size() << " cycles)\n";
    for (auto& cy : j["cocycle"]["cycles"])
        if (!cy["ok"].get<bool>())
            o << "  " << cy["walk"].get<std::string>() << ": " << cy["composed"].get<std::string>() << "\n";
    o << "global potential: " << (pot.ok() ? "ok" : "FAILED") << "\n";
    if (cov.contains("error")) {
        o << "covering: " << cov["error"].get<std::string>() << "\n";
    } else {
        o << "covering: " << cov["charts"].size() << " charts\n";
        for (auto& x : cov["charts"])
            o << "  " << x["chart"].get<std::string>() << " (" << x["deformations"].get<std::string>() << ")\n";
        for (auto& s : cov["steps"])
            o << "  ray " << s["ray"].get<std::string>() << ": " << s["chart"].get<std::string>() << " toward "
              << s["toward"].get<std::string>() << " along " << s["edge"].get<std::string>() << " by "
              << s["amount"].get<std::string>() << ", shift " << s["shift"].get<std::string>() << "\n";
        o << "certificate: " << (cov["certificate"]["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
        for (auto& s : cov["certificate"]["strata"])
            o << "  " << s["edge"].get<std::string>() << ": " << s["pieces"].get<std::string>() << "\n";
        for (auto& fl : cov["certificate"]["failures"]) o << "  failure: " << fl.get<std::string>() << "\n";
    }
    if (j.contains("svg")) o << "svg: " << j["svg"].get<std::string>() << "\n";
    std::cout << o.str();
    return ok ? Ok : Failed;
}

// ---------------------------------------------------------------- transform
int cmd_transform(const RunConfig& cfg)
{
    Curve c = read_curve(cfg.curve);
    if (cfg.face.empty()) throw UsageError("--face is required");
    Fan f = dual_fan(c);
    try {
        f.face(cfg.face);
    } catch (const std::exception&) {
        throw UsageError("face " + cfg.face + " is not in curve " + c.name);
    }
    auto lb = glue_objects(c, cfg.face, edge_ints(cfg.windings, "--windings"), edge_ints(cfg.a1, "--a1"));
    if (cfg.format == "structured") {
        json terms = json::array();
        for (auto& t : lb.terms)
            terms.push_back({{"edge", t.edge},
                             {"component", t.component},
                             {"a2", t.a2},
                             {"m", t.m},
                             {"n", t.n},
                             {"coefficient", t.coefficient},
                             {"traced", t.traced}});
        json j{{"curve", c.name}, {"face", lb.face}, {"terms", terms}};
        j["twist"] = lb.twist ? json(*lb.twist) : json(nullptr);
        j["structure_sheaf"] = lb.structure_sheaf();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << lb.str() << "\n";
        for (auto& t : lb.terms)
            std::cout << "  " << t.edge << ": a2=" << t.a2 << " m=" << t.m << " n=" << t.n << " -> " << t.coefficient
                      << (t.traced ? " (traced)" : " (formula)") << "\n";
    }
    return Ok;
}

// ---------------------------------------------------------------- verify
int cmd_verify(const RunConfig& cfg)
{
    std::vector<std::string> ids = cfg.suites;
    if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) {
        ids.clear();
        for (auto& s : suites::all()) ids.push_back(s.id);
    }
    for (auto& id : ids)
        if (std::none_of(suites::all().begin(), suites::all().end(), [&](auto& s) { return s.id == id; }))
            throw UsageError("unknown suite " + id);
    suites::Options opt{cfg.seed, cfg.arity};
    bool all_ok = true;
    json out = json::array();
    for (auto& id : ids) {
        auto r = suites::run(id, opt);
        all_ok = all_ok && r.ok();
        if (cfg.format == "structured") {
            json lines = json::array();
            for (auto& l : r.lines) lines.push_back({{"check", l.name}, {"ok", l.ok}, {"detail", l.detail}});
            out.push_back({{"suite", r.id}, {"criterion", r.criterion}, {"ok", r.ok()}, {"checks", lines}});
        } else {
            std::cout << (r.ok() ? "PASS " : "FAIL ") << r.id << " (" << r.title << ")\n";
            for (auto& l : r.lines)
                std::cout << "  " << (l.ok ? "ok   " : "FAIL ") << l.name << (l.detail.empty() ? "" : ": " + l.detail)
                          << "\n";
        }
    }
    if (cfg.format == "structured") std::cout << json{{"seed", cfg.seed}, {"arity", cfg.arity}, {"suites", out}}.dump(2) << "\n";
    return all_ok ? Ok : Failed;
}

// ---------------------------------------------------------------- render
int cmd_render(const RunConfig& cfg)
{
    Curve c = read_curve(cfg.curve);
    Fan f = dual_fan(c);
    std::vector<Chart> charts;
    try {
        charts = covering_collection(c).charts;
    } catch (const std::runtime_error&) {
        for (auto& v : c.vertices) charts.push_back(undeformed_chart(c, v.id));
    }
    std::optional<std::size_t> face;
    if (!cfg.face.empty()) face = f.face(cfg.face);
    std::string svg = render_svg(c, f, charts, face);
    if (cfg.out.empty()) {
        std::cout << svg;
    } else {
        fs::path p = cfg.out;
        if (fs::is_directory(p) || p.extension() != ".svg") p /= c.name + ".svg";
        write_file(p, svg);
        std::cout << p.string() << "\n";
    }
    return Ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Glued Landau-Ginzburg mirrors of punctured surfaces from tropical curves"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* mirror = app.add_subcommand("mirror", "charts, transitions, potential and covering certificate of a curve");
    mirror->add_option("--curve", cfg.curve, "curve file or shipped curve name")->required();
    mirror->add_option("--truncation", cfg.truncation, "Novikov truncation order p/q for printed potentials");
    mirror->add_option("--face", cfg.face, "face highlighted in the SVG");
    mirror->add_option("--out", cfg.out, "directory for the SVG");

    auto* transform = app.add_subcommand("transform", "divisor of the line bundle mirror to a Lagrangian around a face");
    transform->add_option("--curve", cfg.curve, "curve file or shipped curve name")->required();
    transform->add_option("--face", cfg.face, "face id, the lattice point (i,j)")->required();
    transform->add_option("--windings", cfg.windings, "edge=m,...")->delimiter(',');
    transform->add_option("--a1", cfg.a1, "edge=n,... overriding the curve's a1")->delimiter(',');

    auto* verify = app.add_subcommand("verify", "run verification suites; exit 0 iff all pass");
    verify->add_option("suites", cfg.suites, "suite ids, or all");
    verify->add_option("--seed", cfg.seed, "random seed");
    verify->add_option("--arity", cfg.arity, "arity bound for natural-transformation checks")->check(CLI::Range(0, 3));
    verify->add_flag_callback("--list", [] {
        for (auto& s : suites::all()) std::cout << s.criterion << "\t" << s.id << "\t" << s.title << "\n";
        std::exit(Ok);
    }, "list the suites");

    auto* render = app.add_subcommand("render", "SVG of the curve, its dual triangulation and the chart cones");
    render->add_option("--curve", cfg.curve, "curve file or shipped curve name")->required();
    render->add_option("--face", cfg.face, "face whose cones are drawn");
    render->add_option("--out", cfg.out, "output file or directory (stdout when absent)");

    for (auto* sub : {mirror, transform, verify, render}) {
        sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"text", "structured"}));
        sub->add_option("--models", cfg.models, "directory with A-infinity model files")->check(CLI::ExistingDirectory);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }
    if (!cfg.models.empty()) setenv("MIRRORGLUE_MODEL_DIR", cfg.models.c_str(), 1);

    try {
        if (*mirror) return cmd_mirror(cfg);
        if (*transform) return cmd_transform(cfg);
        if (*verify) return cmd_verify(cfg);
        return cmd_render(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    } catch (const CurveError& e) {
        std::cerr << e.what() << "\n";
        return Usage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return Usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failed;
    }
}
