#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace mg;

namespace {

LaurentPoly random_poly(std::mt19937_64& g, const std::vector<std::string>& vars, int terms = 4, int span = 2)
{
    std::uniform_int_distribution<int> e(-span, span);
    LaurentPoly p(vars);
    for (int i = 0; i < terms; ++i) {
        Exps ex(vars.size());
        for (auto& v : ex) v = e(g);
        p.add_term(ex, mgt::random_series(g, 2, false));
    }
    return p;
}

MonomialMap random_map(std::mt19937_64& g, const std::vector<std::string>& src, const std::vector<std::string>& tgt)
{
    std::uniform_int_distribution<int> e(-2, 2);
    MonomialMap m(src, tgt);
    for (auto& s : src) {
        Exps ex(tgt.size());
        for (auto& v : ex) v = e(g);
        m.set(s, Series::T(mgt::random_q(g, 6, 3)), ex);
    }
    return m;
}

} // namespace

TEST_CASE("conifold chart change preserves xyz", "[lpoly]")
{
    std::vector<std::string> v1{"x1", "y1", "z1"}, v2{"x2", "y2", "z2"};
    // x1 = x2^{-1}, y1 = z2 x2^k, z1 = y2 x2^{2-k} with k = 1
    MonomialMap m(v1, v2);
    m.set("x1", Series(1), {-1, 0, 0});
    m.set("y1", Series(1), {1, 0, 1});
    m.set("z1", Series(1), {1, 1, 0});
    CHECK(substitute(LaurentPoly::parse(v1, "x1*y1*z1"), m) == LaurentPoly::parse(v2, "x2*y2*z2"));
}

TEST_CASE("flop chart preserves the potential", "[lpoly]")
{
    std::vector<std::string> p{"x0'", "y0'", "z0'"}, u{"x0", "y0", "z0"};
    MonomialMap m(p, u);
    m.set("x0'", Series(1), {-1, 0, 0});
    m.set("y0'", Series(1), {1, 1, 0});
    m.set("z0'", Series(1), {1, 0, 1});
    CHECK(substitute(LaurentPoly::parse(p, "x0'*y0'*z0'"), m) == LaurentPoly::parse(u, "x0*y0*z0"));
}

TEST_CASE("identity substitution", "[lpoly]")
{
    auto g = mgt::rng(5);
    std::vector<std::string> v{"x", "y", "z"};
    for (int i = 0; i < 20; ++i) {
        auto p = random_poly(g, v);
        CHECK(substitute(p, MonomialMap::identity(v)) == p);
    }
}

TEST_CASE("monomial valuation", "[lpoly]")
{
    std::vector<std::string> v{"x", "y", "z"};
    CHECK(monomial_val(LaurentPoly::parse(v, "T^{2}*x"), {ExtQ::of(3), ExtQ::of(0), ExtQ::of(0)}) == ExtQ::of(5));
    CHECK(monomial_val(LaurentPoly::parse(v, "x*y*z"), {ExtQ::of(1), ExtQ::of(1), ExtQ::of(1)}) == ExtQ::of(3));
    CHECK_THROWS(monomial_val(LaurentPoly::parse(v, "x^{-1}"), {ExtQ::infinity(), ExtQ::of(0), ExtQ::of(0)}));
}

TEST_CASE("monoid membership", "[lpoly]")
{
    MonoidSpec all{{{Q(0), std::nullopt}, {Q(0), std::nullopt}, {Q(0), std::nullopt}}};
    CHECK_FALSE(monoid_member({-1, 0, 0}, Series(1), all));
    CHECK(monoid_member({1, 1, 1}, Series(1), all));
    MonoidSpec bounded{{{Q(0), Q(5)}, {Q(0), std::nullopt}, {Q(0), std::nullopt}}};
    CHECK(monoid_member({-1, 0, 0}, Series::T(5), bounded));
    CHECK_FALSE(monoid_member({-1, 0, 0}, Series::T(4), bounded));
}

TEST_CASE("text round trip and map table", "[lpoly]")
{
    std::vector<std::string> v{"x", "y'", "t"};
    auto p = LaurentPoly::parse(v, "-t^{-1}*T^{3/2}*x + 2*y'^2 - (1 + T^{1})*x*t");
    CHECK(LaurentPoly::parse(v, p.str()) == p);
    MonomialMap m({"x"}, {"x"});
    m.set("x", Series::T(1), {-1});
    CHECK(m.table() == "x <- T^{1} * x^{-1}\n");
}

TEST_CASE("substitution is a ring homomorphism", "[lpoly][property]")
{
    auto g = mgt::rng(6);
    std::vector<std::string> s{"x", "y", "z"}, t{"u", "v", "w"};
    for (int i = 0; i < 50; ++i) {
        auto m = random_map(g, s, t);
        auto p = random_poly(g, s), q = random_poly(g, s);
        CHECK(substitute(p * q, m) == substitute(p, m) * substitute(q, m));
        CHECK(substitute(p + q, m) == substitute(p, m) + substitute(q, m));
    }
}

TEST_CASE("composition of maps is composed substitution", "[lpoly][property]")
{
    auto g = mgt::rng(7);
    std::vector<std::string> a{"x", "y"}, b{"u", "v"}, c{"p", "q", "r"};
    for (int i = 0; i < 50; ++i) {
        auto f = random_map(g, a, b), h = random_map(g, b, c);
        auto p = random_poly(g, a);
        CHECK(substitute(p, f.then(h)) == substitute(substitute(p, f), h));
    }
}

TEST_CASE("valuation of products adds", "[lpoly][property]")
{
    auto g = mgt::rng(8);
    std::vector<std::string> v{"x", "y", "z"};
    std::uniform_int_distribution<int> e(-3, 3);
    for (int i = 0; i < 100; ++i) {
        std::vector<ExtQ> pt{ExtQ::of(mgt::random_q(g)), ExtQ::of(mgt::random_q(g)), ExtQ::of(mgt::random_q(g))};
        auto m1 = LaurentPoly::monomial(v, {e(g), e(g), e(g)}, Series::T(mgt::random_q(g)));
        auto m2 = LaurentPoly::monomial(v, {e(g), e(g), e(g)}, Series::T(mgt::random_q(g)));
        CHECK(monomial_val(m1 * m2, pt) == monomial_val(m1, pt) + monomial_val(m2, pt));
    }
}

TEST_CASE("inverse map composes to the identity", "[lpoly][property]")
{
    std::vector<std::string> s{"x", "y", "z"}, t{"a", "b", "c"};
    MonomialMap m(s, t);
    m.set("x", Series::T(Q(3, 2)), {-1, 0, 0});
    m.set("y", Series::T(-2), {2, 1, 0});
    m.set("z", Series(1), {-3, 0, 1});
    CHECK(m.then(m.inverse()).is_identity());
}
