#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace mg;

namespace {

const std::vector<std::string> kPairs = {"isotopy", "two_pants", "circles_seidel"};

std::vector<std::string> solved_vars(const std::string& model)
{
    if (model == "circles_seidel") return {"x1", "y1", "z1"};
    return {"x'", "y'", "z'"};
}

// identity up to the priming of target names
bool trivial_change(const MonomialMap& m)
{
    return m.renamed(m.source(), m.source()).is_identity();
}

} // namespace

TEST_CASE("linear area expressions", "[ainf]")
{
    auto e = LinExpr::parse("2k1 + k2/2 - (k5 + k6)");
    Assignment a{{"k1", 1}, {"k2", 4}, {"k5", 1}, {"k6", Q(1, 2)}};
    CHECK(e.eval(a) == Q(5, 2));
    auto c = Constraint::parse("k2 = 5k5 + 3k6 + 4k7");
    CHECK(c.holds({{"k2", 12}, {"k5", 1}, {"k6", 1}, {"k7", 1}}));
    CHECK_FALSE(c.holds({{"k2", 11}, {"k5", 1}, {"k6", 1}, {"k7", 1}}));
}

TEST_CASE("shipped models validate and sample", "[ainf]")
{
    for (auto name : {"seidel", "pair_of_circles", "isotopy", "two_pants", "circles_seidel", "flop"}) {
        INFO(name);
        Model m = load_shipped_model(name);
        CHECK(m.validate().empty());
        auto g = mgt::rng(1);
        Assignment a = sample_assignment(m, g);
        for (auto& c : m.constraints) CHECK(c.holds(a));
    }
}

TEST_CASE("b = 0 leaves the operations unchanged", "[ainf]")
{
    mgt::Scenario s("isotopy", 3);
    Vec zero;
    Vec p6 = s.inst->named_element("alpha");
    CHECK(vec_is_zero(s.inst->mk({zero, zero}, {p6})));
}

TEST_CASE("insertion bound and parity of b are enforced", "[ainf]")
{
    mgt::Scenario s("seidel", 0);
    Vec bad{{"Zb", LaurentPoly::variable(s.inst->vars(), "x")}};
    CHECK_THROWS(s.inst->m0(bad));
}

TEST_CASE("Seidel circle is weakly unobstructed only with the nontrivial spin structure", "[ainf][weakmc]")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Model m = load_shipped_model("seidel");
        auto g = mgt::rng(seed);
        Assignment a = sample_assignment(m, g);
        a["D2"] = a["D1"];
        AInfInstance inst(m, a);
        auto r = weak_mc_check(inst, "S", inst.deformation("b"));
        REQUIRE(r.ok);
        CHECK(r.potential == inst.poly(m.expected.at("W")));

        m.nontrivial_spin = false;
        AInfInstance flat(m, a);
        auto r2 = weak_mc_check(flat, "S", flat.deformation("b"));
        CHECK_FALSE(r2.ok);
        REQUIRE_FALSE(r2.obstructions.empty());
    }
}

TEST_CASE("pair of circles needs the reflection symmetry", "[ainf][weakmc]")
{
    Model m = load_shipped_model("pair_of_circles");
    auto g = mgt::rng(4);
    Assignment a = sample_assignment(m, g);
    a["w2"] = a["w1"] + 1;
    AInfInstance asym(m, a);
    CHECK_FALSE(weak_mc_check(asym, "C", asym.deformation("b")).ok);
    a["w2"] = a["w1"];
    AInfInstance sym(m, a);
    auto r = weak_mc_check(sym, "C", sym.deformation("b"));
    REQUIRE(r.ok);
    CHECK(r.potential == sym.poly("t*y*z"));
}

TEST_CASE("coordinate changes from the isomorphism equation", "[ainf][iso]")
{
    for (auto& name : kPairs) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            INFO(name << " seed " << seed);
            mgt::Scenario s(name, seed);
            auto& inst = *s.inst;
            Vec b0 = inst.deformation("b0"), b1 = inst.deformation("b1");
            auto cc = solve_isomorphism(inst, b0, b1, inst.named_element("alpha"), solved_vars(name));
            std::string why;
            CHECK(matches_expected(inst, cc.map, s.model.expected, &why));
            INFO(why);

            MonomialMap full = extend_to_vars(cc.map, inst.vars());
            auto rep = verify_isomorphism(inst, vec_substitute(b0, full), vec_substitute(b1, full), inst.named_element("alpha"),
                                          inst.named_element("beta"));
            CHECK(rep.ok());
            LaurentPoly unit = inst.poly(s.model.expected.at("unit"));
            REQUIRE(rep.unit_left);
            REQUIRE(rep.unit_right);
            CHECK(*rep.unit_left == unit);
            CHECK(*rep.unit_right == unit);
            CHECK(rep.checks[0].status == Status::Pass);

            // potentials agree after the change of coordinates
            auto o0 = s.model.objects[0], o1 = s.model.objects[1];
            auto w0 = weak_mc_check(inst, o0, b0), w1 = weak_mc_check(inst, o1, b1);
            REQUIRE(w0.ok);
            REQUIRE(w1.ok);
            CHECK(substitute(w1.potential, full) == substitute(w0.potential, full));
        }
    }
}

TEST_CASE("twisted isomorphisms on the two-pants model", "[ainf][iso]")
{
    mgt::Scenario s("two_pants", 11);
    auto& inst = *s.inst;
    for (int a = -3; a <= 3; ++a) {
        auto cc = variant_isomorphism(inst, a);
        const auto& y = cc.map.image("y'");
        const auto& z = cc.map.image("z'");
        int xi = -1;
        for (std::size_t j = 0; j < cc.map.target().size(); ++j)
            if (cc.map.target()[j] == "x") xi = static_cast<int>(j);
        REQUIRE(xi >= 0);
        CHECK(y.exps[xi] == a);
        CHECK(z.exps[xi] == 2 - a);
        CHECK(y.exps[xi] + z.exps[xi] == 2);
        if (a == 1) CHECK(matches_expected(inst, cc.map, s.model.expected));
    }
}

TEST_CASE("inconsistent ansatz is reported", "[ainf][iso]")
{
    mgt::Scenario s("isotopy", 2);
    auto& inst = *s.inst;
    Vec alpha = inst.named_element("alpha");
    Vec b1 = inst.deformation("b1");
    b1.erase("X'");
    CHECK_THROWS(solve_isomorphism(inst, inst.deformation("b0"), b1, alpha, {"x'", "y'", "z'"}));
}

TEST_CASE("gauge change across the immersed points", "[ainf][gauge]")
{
    auto g00 = gauge_change(0, 0);
    CHECK(g00.change.image("y").exps == Exps{1, 0, -2});
    CHECK(g00.change.image("z").exps == Exps{0, 1, 0});

    auto step = gauge_step({GaugeStep::Point::P1, GaugeStep::Through::Z, 1});
    CHECK(step.change.image("z").exps == Exps{0, 1, -1});
    CHECK(step.a_scale == -1);
    auto back = gauge_compose(step, gauge_step({GaugeStep::Point::P1, GaugeStep::Through::Z, -1}));
    CHECK(trivial_change(back.change));
    CHECK(back.a_scale == 0);

    for (int a1 = -3; a1 <= 3; ++a1)
        for (int a2 = -3; a2 <= 3; ++a2) {
            auto r = gauge_change(a1, a2);
            CHECK(r.change.image("z").exps == Exps{0, 1, a2 - a1});
            CHECK(r.change.image("y").exps == Exps{1, 0, a1 - a2 - 2});
            CHECK(r.a_scale == -a1);
            CHECK(r.b_scale == -a2);
            // opposite twists cancel up to the base twist t^{-2} on y, counted twice
            auto round = gauge_compose(r, gauge_change(-a1, -a2));
            auto base = gauge_compose(gauge_change(0, 0), gauge_change(0, 0));
            CHECK(round.change == base.change);
            CHECK(round.a_scale == 0);
            CHECK(round.b_scale == 0);
            // a path followed by its reverse is the identity
            auto path = gauge_path(a1, a2);
            GaugeResult acc{gauge_compose(gauge_change(0, 0), gauge_change(0, 0)).change, 0, 0};
            acc.change = acc.change.renamed({"y", "z", "t"}, {"y'", "z'", "t'"});
            for (auto& v : {"y", "z", "t"}) acc.change.set(v, Series(1), Exps{v == std::string("y"), v == std::string("z"), v == std::string("t")});
            for (auto& st : path) acc = gauge_compose(acc, gauge_step(st));
            for (auto it = path.rbegin(); it != path.rend(); ++it) {
                auto st = *it;
                st.direction = -st.direction;
                acc = gauge_compose(acc, gauge_step(st));
            }
            CHECK(trivial_change(acc.change));
            CHECK(acc.a_scale == 0);
            CHECK(acc.b_scale == 0);
        }
}

TEST_CASE("exact reduction of the Seidel model", "[ainf][exact]")
{
    Model m = load_shipped_model("seidel");
    auto g = mgt::rng(9);
    Assignment a = sample_assignment(m, g);
    a["D2"] = a["D1"];
    auto red = exact_reduce(m, a, "b");
    REQUIRE(red.certified);
    AInfInstance geo(m, a);
    auto w = weak_mc_check(geo, "S", geo.deformation("b"));
    REQUIRE(w.ok);
    LaurentPoly wex = substitute(w.potential, red.to_exact);
    CHECK(wex == LaurentPoly::parse(red.to_exact.target(), m.expected.at("W_exact")));
    CHECK(wex.t_free());

    a["D2"] = a["D1"] + 1;
    CHECK_FALSE(exact_reduce(m, a, "b").certified);
}

TEST_CASE("relation check on listed data", "[ainf][relations]")
{
    for (auto name : {"seidel", "pair_of_circles", "isotopy", "two_pants", "circles_seidel", "flop"}) {
        INFO(name);
        mgt::Scenario s(name, 5);
        auto r = s.inst->check_relations(4);
        for (auto& f : r.failures) UNSCOPED_INFO(f);
        CHECK(r.ok());
    }
}
