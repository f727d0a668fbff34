#include "mirrorglue/mf.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace mg;

namespace {

MatrixFactorization strip_mf(int m, Q area)
{
    static std::map<int, Model> models;
    if (!models.count(m)) models.emplace(m, mf_s1_model(m));
    AInfInstance in(models.at(m), {{"A", area}});
    return transform_object(in, "L", "S1", "b");
}

const Model& morphisms()
{
    static Model m = load_morphism_model();
    return m;
}

LaurentPoly mono(const std::vector<std::string>& vars, Exps e, long c = 1)
{
    return LaurentPoly::monomial(vars, e, Series(Scalar(c)));
}

} // namespace

TEST_CASE("strip matrix factorizations square to the potential", "[mf]")
{
    for (int m = 0; m <= 3; ++m) {
        for (Q area : {Q(0), Q(3, 2), Q(5)}) {
            auto mf = strip_mf(m, area);
            CAPTURE(m, area.get_str());
            CHECK(check_mf(mf).ok);
            CHECK(mf.even.size() == std::size_t(2 * m + 1));
            CHECK(mf.odd.size() == std::size_t(2 * m + 1));
            CHECK(mf.exact == (area == 0));
            LaurentPoly w = mono(mf.vars, {1, 1, 1}).scaled(Series::monomial(area));
            CHECK(mf.W == w);
        }
    }
    CHECK_THROWS(mf_s1_model(-1));
}

TEST_CASE("a broken strip is rejected", "[mf]")
{
    auto m = mf_s1_model(1);
    for (auto& e : m.entries)
        if (e.output == "D0" && e.inputs.size() == 1 && e.inputs[0] == "C1") e.coeff = "2";
    AInfInstance in(m, {{"A", Q(1)}});
    CHECK_THROWS_AS(transform_object(in, "L", "S1", "b"), std::runtime_error);
}

TEST_CASE("strip cokernels leave one nontrivial summand", "[mf]")
{
    for (int m = 0; m <= 3; ++m) {
        for (Q area : {Q(0), Q(3, 2)}) {
            auto c = cokernel_dsing(strip_mf(m, area));
            CAPTURE(m, c.str());
            REQUIRE(c.summands.size() == std::size_t(m + 1));
            CHECK(c.summands[0].label == "D0");
            CHECK_FALSE(c.summands[0].trivial);
            REQUIRE(c.summands[0].ideal.size() == 1);
            CHECK(c.summands[0].ideal[0] == mono(c.vars, {0, 0, 1}));
            for (int k = 1; k <= m; ++k) {
                CHECK(c.summands[k].label == "D" + std::to_string(2 * k));
                CHECK(c.summands[k].trivial);
            }
        }
    }
}

TEST_CASE("path matrix factorizations on the morphism chart", "[mf]")
{
    AInfInstance p(morphisms(), {});
    struct Row {
        std::string obj, label;
        Exps ideal;
        bool trivial;
    };
    for (auto& r : std::vector<Row>{{"L", "B", {0, 0, 1}, false},
                                    {"Lw", "Bw", {0, 0, 1}, false},
                                    {"Lf", "Bf", {1, 0, 1}, false},
                                    {"Li", "Bi", {0, 1, 0}, false},
                                    {"Ln", "Bn", {1, 1, 1}, true}}) {
        auto mf = path_mf(p, r.obj);
        CAPTURE(r.obj);
        CHECK(check_mf(mf).ok);
        CHECK(mf.exact);
        CHECK(mf.W == mono(mf.vars, {1, 1, 1}));
        auto c = cokernel_dsing(mf);
        REQUIRE(c.summands.size() == 1);
        CHECK(c.summands[0].label == r.label);
        CHECK(c.summands[0].ideal[0] == mono(mf.vars, r.ideal));
        CHECK(c.summands[0].trivial == r.trivial);
    }
}

TEST_CASE("P_i acts by a power of x or y", "[mf]")
{
    AInfInstance p(morphisms(), {});
    auto mf = path_mf(p, "L");
    for (int i = -3; i <= 3; ++i) {
        auto phi = path_morphism(p, i);
        CAPTURE(i);
        CHECK(phi.parity == 0);
        CHECK(chain_residual(phi, mf, mf).empty());
        LaurentPoly f = mono(mf.vars, {i > 0 ? i : 0, i < 0 ? -i : 0, 0});
        for (auto& g : mf.generators()) CHECK(vec_clean(phi.map.at(g)) == Vec{{g, f}});
    }
    CHECK_THROWS_AS(path_morphism(p, 9), std::out_of_range);
}

TEST_CASE("composition is preserved up to sign and homotopy", "[mf]")
{
    AInfInstance p(morphisms(), {});
    for (int i = -3; i <= 3; ++i)
        for (int j = -3; j <= 3; ++j) {
            auto r = composition_check(p, i, j);
            CAPTURE(i, j, r.product, r.cmp.detail);
            CHECK(r.cmp.ok);
            CHECK(std::abs(r.cmp.sign) == 1);
            // x^i y^j with i, j > 0 is a multiple of xy, which is null-homotopic on L
            CHECK(r.cmp.homotopic == (i * j < 0));
            if (i * j < 0) CHECK(r.product == "0");
        }
}

TEST_CASE("morphisms to neighbouring paths are chain maps", "[mf]")
{
    AInfInstance p(morphisms(), {});
    auto L = path_mf(p, "L");
    auto one = [&](const std::string& g) { return Vec{{g, LaurentPoly::constant(p.vars(), Series(1))}}; };
    for (int i = 1; i <= 3; ++i) {
        auto Lw = path_mf(p, "Lw");
        auto h = transform_morphism(p, "H", one("H" + std::to_string(i)), Lw, L, "b");
        CAPTURE(i, h.str());
        CHECK(chain_residual(h, Lw, L).empty());
        CHECK(vec_clean(h.map.at("Aw")) == Vec{{"A", mono(p.vars(), {i - 1, 0, 0})}});

        auto Lf = path_mf(p, "Lf");
        auto g = transform_morphism(p, "G", one("G" + std::to_string(i)), Lf, L, "b");
        CAPTURE(g.str());
        CHECK(chain_residual(g, Lf, L).empty());
        CHECK(vec_clean(g.map.at("Af")) == Vec{{"A", mono(p.vars(), {i, 0, 0})}});
        CHECK(vec_clean(g.map.at("Bf")) == Vec{{"B", mono(p.vars(), {i - 1, 0, 0})}});
    }
    auto Li = path_mf(p, "Li");
    auto q = transform_morphism(p, "Q0", one("Q0"), Li, L, "b");
    CHECK(q.parity == 1);
    CHECK(chain_residual(q, Li, L).empty());
}

TEST_CASE("compare_up_to_sign separates signs and rejects non-homotopic differences", "[mf]")
{
    AInfInstance p(morphisms(), {});
    auto mf = path_mf(p, "L");
    auto p1 = path_morphism(p, 1), p2 = path_morphism(p, 2);
    MFMorphism neg = p1;
    for (auto& [g, v] : neg.map) v = vec_scale(v, mono(mf.vars, {0, 0, 0}, -1));
    auto c = compare_up_to_sign(p1, neg, mf);
    CHECK(c.ok);
    CHECK(c.sign == -1);
    CHECK_FALSE(c.homotopic);
    CHECK_FALSE(compare_up_to_sign(p1, p2, mf).ok);
    CHECK_FALSE(compare_up_to_sign(p1, path_morphism(p, 0), mf).ok);
}

TEST_CASE("edge gluing is a chain map and traces to a section of order a2 + m", "[mf]")
{
    for (int m = 0; m <= 3; ++m)
        for (int a1 = -3; a1 <= 2; ++a1)
            for (int d : {-1, 0, 1, 2}) {
                auto g = glue_edge(m, a1, a1 + d);
                CAPTURE(m, a1, d, g.trace);
                CHECK(g.residual.empty());
                REQUIRE(g.section_order);
                CHECK(*g.section_order == a1 + d + m);
            }
}

TEST_CASE("objects glue to line bundles on the compact divisor", "[mf]")
{
    Curve kp2 = load_shipped_curve("kp2");
    for (int k = -1; k <= 2; ++k) {
        std::map<std::string, int> w, a;
        for (auto e : {"e01", "e12", "e20"}) {
            w[e] = 2 * k + 3;
            a[e] = -4;
        }
        auto lb = glue_objects(kp2, "(0,0)", w, a);
        CAPTURE(k, lb.str());
        REQUIRE(lb.terms.size() == 3);
        for (auto& t : lb.terms) {
            CHECK(t.traced);
            CHECK(t.coefficient == t.a2 + t.m);
        }
        REQUIRE(lb.twist);
        CHECK(*lb.twist == k);
    }
    // the three edges meet the three boundary divisors
    auto lb = glue_objects(kp2, "(0,0)", {}, {});
    std::set<std::string> comps;
    for (auto& t : lb.terms) comps.insert(t.component);
    CHECK(comps == std::set<std::string>{"(0,1)", "(1,0)", "(-1,-1)"});

    auto pants = glue_objects(load_shipped_curve("pair_of_pants"), "(0,0)", {});
    CHECK(pants.structure_sheaf());
    CHECK(pants.str().find("structure sheaf") != std::string::npos);

    CHECK_THROWS(glue_objects(kp2, "(0,0)", {{"nope", 1}}));
}
