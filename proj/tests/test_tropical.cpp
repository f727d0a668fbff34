#include "fixtures.hpp"

#include "mirrorglue/tropical.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace mg;

namespace {

const std::vector<std::string> kCurves = {"pair_of_pants", "conifold_k0", "conifold_k1", "conifold_k2",
                                          "conifold_k3",   "kp2",         "kp2_perturbed", "toric_cy_eg"};

// exponent of `var` in the image of `src`
int exponent(const MonomialMap& m, const std::string& src, const std::string& var)
{
    const auto& t = m.target();
    auto it = std::find(t.begin(), t.end(), var);
    REQUIRE(it != t.end());
    return m.image(src).exps[it - t.begin()];
}

std::string pants_json(const std::string& third_dir)
{
    return R"({"name":"bad","vertices":[{"id":"v0","pos":["0","0"]}],"edges":[
        {"id":"f0","ends":["v0"],"dir":[[1,0]]},{"id":"f1","ends":["v0"],"dir":[[0,1]]},
        {"id":"f2","ends":["v0"],"dir":[)" +
           third_dir + "]}]}";
}

} // namespace

TEST_CASE("shipped curves load", "[tropical]")
{
    for (auto& n : kCurves) {
        INFO(n);
        Curve c = load_shipped_curve(n);
        for (auto& v : c.vertices) CHECK(c.incident.count(v.id));
        Fan f = dual_fan(c);
        CHECK(f.rays.size() == f.points.size());
        for (auto& r : f.rays) CHECK(r[2] == 1);
    }
    CHECK(load_shipped_curve("conifold_k1").warnings.empty());
    CHECK(load_shipped_curve("conifold_k3").warnings.size() == 1);
}

TEST_CASE("curve validation rejects bad vertices", "[tropical]")
{
    CHECK_NOTHROW(parse_curve(pants_json("[-1,-1]")));
    // unbalanced
    CHECK_THROWS_AS(parse_curve(pants_json("[-1,-2]")), CurveError);
    // balanced only after scaling, not primitive
    CHECK_THROWS_AS(parse_curve(pants_json("[-2,-2]")), CurveError);
    try {
        parse_curve(pants_json("[-1,-2]"));
    } catch (const CurveError& e) {
        CHECK_FALSE(e.issues.empty());
    }
    // a finite edge whose endpoints are not along its direction
    std::string skew = R"({"name":"skew","vertices":[{"id":"a","pos":["0","0"]},{"id":"b","pos":["2","1"]}],"edges":[
        {"id":"e","ends":["a","b"],"dir":[[1,0],[-1,0]]},
        {"id":"p","ends":["a"],"dir":[[-1,1]]},{"id":"q","ends":["a"],"dir":[[0,-1]]},
        {"id":"r","ends":["b"],"dir":[[0,1]]},{"id":"s","ends":["b"],"dir":[[1,-1]]}]})";
    CHECK_THROWS_AS(parse_curve(skew), CurveError);
}

TEST_CASE("dual fans", "[tropical]")
{
    Fan p = dual_fan(load_shipped_curve("pair_of_pants"));
    CHECK(p.rays.size() == 3);
    CHECK(std::none_of(p.interior.begin(), p.interior.end(), [](bool b) { return b; }));

    Fan k = dual_fan(load_shipped_curve("kp2"));
    REQUIRE(k.rays.size() == 4);
    CHECK(std::count(k.interior.begin(), k.interior.end(), true) == 1);
    CHECK(k.points[k.face("(0,0)")] == Z2{0, 0});
    CHECK(k.hull.size() == 3);

    Fan t = dual_fan(load_shipped_curve("toric_cy_eg"));
    CHECK(t.rays.size() == 5);
    CHECK(std::count(t.interior.begin(), t.interior.end(), true) == 2);
    CHECK(t.cones.size() == 5);
    for (auto& [v, chars] : t.characters) {
        auto& cone = t.cones.at(v);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                auto& r = t.rays[cone[j]];
                long pair = chars[i][0] * r[0] + chars[i][1] * r[1] + chars[i][2] * r[2];
                CHECK(pair == (i == j ? 1 : 0));
            }
    }
}

TEST_CASE("exact offsets vanish at the origin and are linear in the position", "[tropical]")
{
    Curve c = load_shipped_curve("kp2");
    auto o0 = undeformed_offsets(c, "v0");
    for (auto& x : o0) CHECK(sgn(x) == 0);
    auto o1 = undeformed_offsets(c, "v1"); // at (0,2): -(v, p) per slot
    for (int s = 0; s < 3; ++s) {
        Z2 v = c.direction("v1", s);
        CHECK(o1[s] == Q(-2 * v[1]));
    }
}

TEST_CASE("conifold twists give the O(-k)+O(k-2) gluing", "[tropical]")
{
    for (int k = 0; k <= 3; ++k) {
        INFO("k = " << k);
        Curve c = load_shipped_curve("conifold_k" + std::to_string(k));
        const auto& e = c.edge("e");
        CHECK(e.d == k - 2);
        auto m = transition_map(c, "e", true);
        auto v1 = chart_vars(c, "v1", true);
        auto v2 = chart_vars(c, "v2", true);
        int s1 = c.slot("v1", c.edge_index("e"));
        std::string x1 = v1[s1], y1 = v1[(s1 + 1) % 3], z1 = v1[(s1 + 2) % 3];
        int s2 = c.slot("v2", c.edge_index("e"));
        CHECK(exponent(m, v2[s2], x1) == -1);
        // the two other variables pick up x1^k and x1^(2-k)
        std::multiset<std::pair<int, std::string>> got, want{{k, y1}, {2 - k, z1}};
        for (int i = 1; i <= 2; ++i) {
            auto& im = m.image(v2[(s2 + i) % 3]);
            CHECK(im.unit.is_monomial());
            std::string other;
            for (auto& w : {y1, z1})
                if (exponent(m, v2[(s2 + i) % 3], w) == 1) other = w;
            REQUIRE_FALSE(other.empty());
            got.insert({exponent(m, v2[(s2 + i) % 3], x1), other});
        }
        CHECK(got == want);
        CHECK(global_potential_check(c, true).ok());
    }
}

TEST_CASE("resolved conifold exponents", "[tropical]")
{
    Curve c = load_shipped_curve("conifold_k1");
    auto m = transition_map(c, "e", true);
    auto v2 = chart_vars(c, "v2", true);
    std::string x1 = chart_vars(c, "v1", true)[c.slot("v1", c.edge_index("e"))];
    std::vector<int> ex;
    for (auto& v : v2) ex.push_back(exponent(m, v, x1));
    std::sort(ex.begin(), ex.end());
    CHECK(ex == std::vector<int>{-1, 1, 1});
}

TEST_CASE("immersed transitions are conjugate to exact ones", "[tropical]")
{
    for (auto n : {"conifold_k0", "conifold_k2", "kp2", "toric_cy_eg"}) {
        Curve c = load_shipped_curve(n);
        for (auto& e : c.edges) {
            if (!e.finite()) continue;
            INFO(n << " " << e.id);
            auto imm = transition_map(c, e.id, false);
            auto ex = transition_map(c, e.id, true);
            auto a = to_exact(c, undeformed_chart(c, e.ends[0]));
            auto b = to_exact(c, undeformed_chart(c, e.ends[1]));
            CHECK(imm == b.then(ex).then(a.inverse()));
        }
    }
}

TEST_CASE("transition maps reverse and match the fan", "[tropical]")
{
    for (auto& n : kCurves) {
        Curve c = load_shipped_curve(n);
        Fan f = dual_fan(c);
        for (auto& e : c.edges) {
            if (!e.finite()) continue;
            INFO(n << " " << e.id);
            for (bool exact : {true, false}) {
                auto m = transition_map(c, e.id, exact);
                auto r = transition_map(c, e.id, exact, true);
                CHECK(m.then(r).renamed(m.source(), m.source()).is_identity());
                CHECK(r == m.inverse());
            }
            bool pinned = e.a2_given && *e.a2_given - e.a1 != e.d_fan;
            CHECK((transition_map(c, e.id, true) == toric_transition(c, f, e.id)) == !pinned);
        }
    }
}

TEST_CASE("cocycle condition", "[tropical]")
{
    auto good = cocycle_check(load_shipped_curve("kp2"));
    REQUIRE(good.cycles.size() == 1);
    CHECK(good.ok());
    CHECK(cocycle_check(load_shipped_curve("kp2"), false).ok());
    CHECK(cocycle_check(load_shipped_curve("toric_cy_eg")).cycles.size() == 2);
    CHECK(cocycle_check(load_shipped_curve("toric_cy_eg")).ok());

    auto bad = cocycle_check(load_shipped_curve("kp2_perturbed"));
    REQUIRE(bad.cycles.size() == 1);
    CHECK_FALSE(bad.ok());
    CHECK_FALSE(bad.cycles[0].composed.is_identity());
}

TEST_CASE("local potentials glue", "[tropical]")
{
    for (auto& n : kCurves) {
        INFO(n);
        Curve c = load_shipped_curve(n);
        CHECK(global_potential_check(c, true).ok());
        CHECK(global_potential_check(c, false).ok());
        auto w = chart_potential(c, c.vertices[0].id, true);
        CHECK(w.is_monomial());
    }
}

TEST_CASE("undeformed cone apex sits at minus the vertex", "[tropical]")
{
    for (auto n : {"kp2", "toric_cy_eg"}) {
        Curve c = load_shipped_curve(n);
        Fan f = dual_fan(c);
        for (auto& v : c.vertices) {
            auto ch = undeformed_chart(c, v.id);
            for (auto face : f.cones.at(v.id)) {
                INFO(n << " " << v.id << " " << f.face_id(face));
                auto img = cone_image(c, f, ch, face);
                CHECK(img.apex[0] == -v.pos[0]);
                CHECK(img.apex[1] == -v.pos[1]);
            }
        }
    }
}

TEST_CASE("covering of K_P2", "[tropical]")
{
    Curve c = load_shipped_curve("kp2");
    auto cov = covering_collection(c);
    CHECK(cov.certificate.ok());
    CHECK(cov.charts.size() == 6);
    std::set<std::string> ids;
    for (auto& ch : cov.charts) ids.insert(ch.id);
    CHECK(ids == std::set<std::string>{"S_v0", "S_v1", "S_v2", "S~_v0", "S~_v1", "S~_v2"});
    std::set<std::pair<Q, Q>> shifts, want{{-1, 1}, {2, 1}, {-1, -2}};
    for (auto& s : cov.steps) {
        CHECK(s.ray == "(0,0)");
        shifts.insert({s.shift[0], s.shift[1]});
    }
    CHECK(shifts == want);
}

TEST_CASE("covering of the two-interior-point example", "[tropical]")
{
    Curve c = load_shipped_curve("toric_cy_eg");
    auto cov = covering_collection(c);
    CHECK(cov.certificate.ok());
    CHECK(cov.charts.size() == 9);
    REQUIRE(cov.steps.size() == 6);
    std::vector<std::string> order;
    for (auto& s : cov.steps) order.push_back(s.chart + ">" + s.toward);
    CHECK(order == std::vector<std::string>{"S~_v2>S_v1", "S~_v0>S~_v2", "S~_v1>S~_v0", "S~_v3>S~_v2",
                                            "S~_v4>S~_v3", "S~~_v0>S~_v4"});
    // every vertex carries at most two charts
    std::map<std::string, int> per;
    for (auto& ch : cov.charts) ++per[ch.vertex];
    for (auto& [v, k] : per) CHECK(k <= 2);
}

TEST_CASE("certificate catches gaps and triple overlaps", "[tropical]")
{
    Curve c = load_shipped_curve("kp2");
    std::vector<Chart> bare;
    for (auto& v : c.vertices) bare.push_back(undeformed_chart(c, v.id));
    CHECK_FALSE(certify_covering(c, bare).ok());

    auto cov = covering_collection(c);
    auto crowded = cov.charts;
    crowded.push_back(deform(undeformed_chart(c, "v0"), 0, 10));
    CHECK_FALSE(certify_covering(c, crowded).ok());
}

TEST_CASE("svg rendering", "[tropical]")
{
    Curve c = load_shipped_curve("kp2");
    Fan f = dual_fan(c);
    auto cov = covering_collection(c);
    auto svg = render_svg(c, f, cov.charts, f.face("(0,0)"));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("S~_v1") != std::string::npos);
}
