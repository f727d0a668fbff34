#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace mg;

TEST_CASE("valuation", "[novikov]")
{
    CHECK(val(Series()) == ExtQ::infinity());
    CHECK(val(Series::T(Q(1, 2)) + Series::T(2).scaled(3)) == ExtQ::of(Q(1, 2)));
    CHECK(val(Series::T(1).scaled(2) * Series::T(3)) == ExtQ::of(4));
}

TEST_CASE("inverse by geometric series", "[novikov]")
{
    Series one_minus_t = Series(1) - Series::T(1);
    Series inv = one_minus_t.inverse(ExtQ::of(3));
    CHECK(inv.inexact());
    Series want = Series(1) + Series::T(1) + Series::T(2) + Series::T(3);
    CHECK(inv.equals_up_to(want, ExtQ::of(3)));
    CHECK(val(Series::T(2).scaled(5).inverse()) == ExtQ::of(-2));
    CHECK_THROWS(Series().inverse());
}

TEST_CASE("sphere-like cancellation", "[novikov]")
{
    // T^{k7} - x1 t^{-1} T^{k1+..+k5} at x1 = t T^{k7-k1-..-k5}
    Q k7(19, 2), rest(7, 3);
    Series t = Series::T(0).scaled(Q(3, 5));
    Series x1 = t * Series::T(k7 - rest);
    Series r = Series::T(k7) - x1 * t.inverse() * Series::T(rest);
    CHECK(r.is_zero());
}

TEST_CASE("subrings", "[novikov]")
{
    CHECK(subring_check(Series::T(Q(1, 3)), Subring::LambdaPlus));
    CHECK(subring_check(Series(1) + Series::T(1), Subring::Lambda0Units));
    CHECK_FALSE(subring_check(Series::T(-1), Subring::Lambda0));
    CHECK(subring_check(Series(), Subring::LambdaPlus));
}

TEST_CASE("text round trip", "[novikov]")
{
    auto g = mgt::rng(17);
    for (int i = 0; i < 100; ++i) {
        Series s = mgt::random_series(g);
        CHECK(Series::parse(s.str()).exactly_equals(s));
    }
}

TEST_CASE("ring axioms on random series", "[novikov][property]")
{
    auto g = mgt::rng(1);
    for (int i = 0; i < 200; ++i) {
        Series a = mgt::random_series(g), b = mgt::random_series(g), c = mgt::random_series(g);
        CHECK(((a + b) + c).exactly_equals(a + (b + c)));
        CHECK(((a * b) * c).exactly_equals(a * (b * c)));
        CHECK((a * (b + c)).exactly_equals(a * b + a * c));
        CHECK((a * b).exactly_equals(b * a));
        if (!a.is_zero() && !b.is_zero()) {
            CHECK(val(a * b) == val(a) + val(b));
            CHECK(val(a + b) >= std::min(val(a), val(b)));
        }
    }
}

TEST_CASE("inverse agrees with 1 up to the truncation order", "[novikov][property]")
{
    auto g = mgt::rng(2);
    for (int i = 0; i < 100; ++i) {
        Series a = mgt::random_series(g, 5, false);
        ExtQ order = ExtQ::of(6 - val(a).v); // the inverse is known up to this exponent
        Series inv = a.inverse(order);
        Series prod = (a * inv).truncated(ExtQ::of(6));
        CHECK(prod.equals_up_to(Series(1), ExtQ::of(6)));
    }
}

TEST_CASE("Lambda_0 closed, Lambda_+ an ideal", "[novikov][property]")
{
    auto g = mgt::rng(3);
    for (int i = 0; i < 200; ++i) {
        Series a = mgt::random_series(g), b = mgt::random_series(g);
        if (a.in(Subring::Lambda0) && b.in(Subring::Lambda0)) {
            CHECK((a + b).in(Subring::Lambda0));
            CHECK((a * b).in(Subring::Lambda0));
            if (b.in(Subring::LambdaPlus)) CHECK((a * b).in(Subring::LambdaPlus));
        }
    }
}
