#include "doctest.h"

#include "liftcalc/sampling.hpp"
#include "liftcalc/series.hpp"

using namespace liftcalc;

TEST_CASE("series addition in F_3 coefficients") {
    FieldParams fp(3, 12);
    Series one = Series::one(fp);
    CHECK(one + one == Series::from_int(fp, 2));
    CHECK(one + one + one == Series::zero(fp, 12));
}

TEST_CASE("uniformizer inverse") {
    FieldParams fp(3, 12);
    Series pi = Series::pi_pow(fp, 1);
    Series inv = pi.inv();
    CHECK(inv.val() == Valuation{-1, true});
    CHECK(inv.digit(-1) == QuadExt{1, 0});
    CHECK(pi * inv == Series::one(fp));
}

TEST_CASE("difference of squares truncates correctly") {
    FieldParams fp(3, 12);
    Series pi = Series::pi_pow(fp, 1);
    Series lhs = (Series::one(fp) + pi) * (Series::one(fp) - pi);
    CHECK(lhs == Series::one(fp) - Series::pi_pow(fp, 2));
}

TEST_CASE("valuation queries and the >= N sentinel") {
    FieldParams fp(3, 8);
    CHECK(Series::pi_pow(fp, 2).val() == Valuation{2, true});
    CHECK(Series::zero(fp, 8).val() == Valuation{8, false});
    // positional representation: "3" does not exist, pi is entered as a digit
    CHECK(parse_series(fp, "1:1").val() == Valuation{1, true});
}

TEST_CASE("frobenius on series") {
    FieldParams fp(3, 12);
    Series delta = Series::delta(fp);
    CHECK(delta.frobenius() == -delta);
    Series x = parse_series(fp, "0:1+0*j,0+1*j");  // 1 + j pi
    CHECK(x.frobenius() == parse_series(fp, "0:1+0*j,0+2*j"));
    Sampler smp(fp, 42);
    for (int i = 0; i < 200; ++i) {
        Series s = smp.series(0, 10);
        CHECK(s.frobenius().frobenius() == s);
    }
}

TEST_CASE("inversion drops precision by twice the valuation") {
    FieldParams fp(3, 12);
    Series x = Series::pi_pow(fp, 2) + Series::pi_pow(fp, 3);
    Series inv = x.inv();
    CHECK(x.precision() == 14);  // monomials carry N digits from their lead
    CHECK(inv.val() == Valuation{-2, true});
    CHECK(inv.precision() == 10);  // prec - 2 val: the unit-part window is kept
    CHECK(x * inv == Series::one(fp));
    CHECK_THROWS_AS(Series::zero(fp, 12).inv(), InversionOfZero);
}

TEST_CASE("ultrametric inequality, exact over random pairs") {
    FieldParams fp(3, 10);
    Sampler smp(fp, 7);
    for (int i = 0; i < 1200; ++i) {
        Series x = smp.series(static_cast<int>(smp.digit()), 6);
        Series y = smp.series(static_cast<int>(smp.digit()), 6);
        Valuation vx = x.val(), vy = y.val(), vs = (x + y).val();
        CHECK(vs.value >= std::min(vx.value, vy.value));
        if (vx.resolved && vy.resolved && vx.value != vy.value) {
            CHECK(vs.resolved);
            CHECK(vs.value == std::min(vx.value, vy.value));
        }
    }
}

TEST_CASE("valuation is multiplicative when resolved") {
    FieldParams fp(5, 10);
    Sampler smp(fp, 11);
    for (int i = 0; i < 500; ++i) {
        Series x = smp.series(0, 8);
        Series y = smp.series(2, 6);
        Valuation vx = x.val(), vy = y.val();
        if (!vx.resolved || !vy.resolved) continue;
        Valuation vp = (x * y).val();
        CHECK(vp.resolved);
        CHECK(vp.value == vx.value + vy.value);
    }
}

TEST_CASE("series literals round-trip") {
    FieldParams fp(3, 12);
    CHECK(parse_series(fp, "0:1+0*j,0+1*j").digit(1) == QuadExt{0, 1});
    CHECK(parse_series(fp, "-2:2").val() == Valuation{-2, true});
    CHECK(parse_series(fp, "0:5") == Series::from_int(fp, 2));  // reduced mod q
    CHECK(format_series(Series::zero(fp, 12)) == "0:0+0*j");
    Sampler smp(fp, 3);
    for (int i = 0; i < 100; ++i) {
        Series s = smp.series(-2 + static_cast<int>(smp.digit()), 9);
        CHECK(parse_series(fp, format_series(s)) == s);
    }
    CHECK_THROWS_AS(parse_series(fp, "junk"), ParseError);
    CHECK_THROWS_AS(parse_series(fp, "0:"), ParseError);
    CHECK_THROWS_AS(parse_series(fp, "0:1+j"), ParseError);
    CHECK_THROWS_AS(parse_series(fp, "0:1,x"), ParseError);
}
