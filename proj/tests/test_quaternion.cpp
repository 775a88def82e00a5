#include "doctest.h"

#include "liftcalc/quaternion.hpp"
#include "liftcalc/sampling.hpp"

using namespace liftcalc;

namespace {
FieldParams fp3() { return FieldParams(3, 12); }
}

TEST_CASE("twist rule Pi delta = -delta Pi and Pi^2 = pi") {
    FieldParams fp = fp3();
    Quat pi_big = Quat::big_pi(fp), delta = Quat::delta(fp);
    CHECK(pi_big * delta == -(delta * pi_big));
    CHECK(pi_big * pi_big == Quat::from_series(Series::pi_pow(fp, 1)));
    CHECK(pi_big.inv() == Quat::big_pi_pow(fp, -1));
    CHECK(pi_big.inv() * pi_big == Quat::one(fp));
}

TEST_CASE("v_D values") {
    FieldParams fp = fp3();
    CHECK(Quat::from_series(Series::pi_pow(fp, 1)).v_d() == Valuation{2, true});
    CHECK(Quat::big_pi(fp).v_d() == Valuation{1, true});
    CHECK((Quat::delta(fp) + Quat::big_pi(fp)).v_d() == Valuation{0, true});
    CHECK_FALSE(Quat::zero(fp).v_d().resolved);
}

TEST_CASE("main involution") {
    FieldParams fp = fp3();
    Quat delta = Quat::delta(fp), pi_big = Quat::big_pi(fp);
    CHECK(delta.bar() == -delta);
    CHECK(pi_big.bar() == -pi_big);
    Quat x = Quat::one(fp) + pi_big;
    CHECK(x * x.bar() ==
          Quat::from_series(Series::one(fp) - Series::pi_pow(fp, 1)));
    Sampler smp(fp, 5);
    for (int i = 0; i < 300; ++i) {
        Quat g = smp.integral_quat();
        Quat n = g * g.bar();
        CHECK(n.b().is_zero());
        CHECK(n.a().f_rational());
        Valuation v = g.v_d(), vb = g.bar().v_d();
        CHECK(v.resolved == vb.resolved);
        CHECK(v.value == vb.value);
    }
}

TEST_CASE("quaternion inverse") {
    FieldParams fp = fp3();
    Sampler smp(fp, 9);
    for (int i = 0; i < 100; ++i) {
        Quat g = smp.unit();
        CHECK(g * g.inv() == Quat::one(fp));
        CHECK(g.inv() * g == Quat::one(fp));
    }
    CHECK_THROWS_AS(Quat::zero(fp).inv(), InversionOfZero);
}

TEST_CASE("pm decomposition examples") {
    FieldParams fp = fp3();
    Quat delta = Quat::delta(fp), pi_big = Quat::big_pi(fp);
    for (int s : {0, 1}) {
        OrderSpec ord(fp, ExtCase::Unramified, s);
        auto [plus, minus] = pm_decompose(delta + pi_big, ord);
        CHECK(plus == delta);
        CHECK(minus == pi_big);
        Quat central = Quat::from_series(Series::from_int(fp, 2) + Series::pi_pow(fp, 1));
        auto [p2, m2] = pm_decompose(central, ord);
        CHECK(p2 == central);
        CHECK(m2.is_zero());
        auto [p3, m3] = pm_decompose(ord.mu(), ord);
        CHECK(p3 == ord.mu());
        CHECK(m3.is_zero());
    }
}

TEST_CASE("pm decomposition properties, both cases") {
    FieldParams fp = fp3();
    for (ExtCase e : {ExtCase::Unramified, ExtCase::Ramified}) {
        OrderSpec ord(fp, e, 1);
        Quat mu = ord.mu(), mu_bar = ord.mu_bar();
        Sampler smp(fp, 13);
        for (int i = 0; i < 500; ++i) {
            Quat g = smp.integral_quat();
            auto [plus, minus] = pm_decompose(g, ord);
            CHECK(plus + minus == g);
            CHECK(plus * mu == mu * plus);
            CHECK(minus * mu == mu_bar * minus);
            if (g.v_d().resolved) {
                Valuation rhs = val_min(plus.v_d(), minus.v_d());
                CHECK(rhs.resolved);
                CHECK(rhs.value == g.v_d().value);
            }
        }
    }
}

TEST_CASE("order membership by digit inspection") {
    FieldParams fp = fp3();
    OrderSpec u1(fp, ExtCase::Unramified, 1);
    CHECK(is_in_order(Quat::one(fp), u1).verdict ==
          MembershipReport::Verdict::InUnitGroup);
    CHECK(is_in_order(Quat::delta(fp), u1).verdict ==
          MembershipReport::Verdict::Outside);
    // 1 + pi j lies in O_F + pi O_K
    Quat g(Series::one(fp) + Series::monomial(fp, {0, 1}, 1),
           Series::zero(fp, 12));
    CHECK(is_in_order(g, u1).verdict == MembershipReport::Verdict::InUnitGroup);
    // pi delta is in the order but not a unit
    Quat h(Series::monomial(fp, {0, 1}, 1), Series::zero(fp, 12));
    CHECK(is_in_order(h, u1).verdict == MembershipReport::Verdict::InOrder);
    // Outside witnesses are resolved; In verdicts hold to precision
    CHECK(is_in_order(Quat::delta(fp), u1).resolved);
    CHECK_FALSE(is_in_order(Quat::one(fp), u1).resolved);

    OrderSpec r1(fp, ExtCase::Ramified, 1);
    CHECK(is_in_order(Quat::big_pi(fp), r1).verdict ==
          MembershipReport::Verdict::Outside);  // b needs val >= 1
    Quat bpi(Series::zero(fp, 12), Series::pi_pow(fp, 1));  // pi Pi = Pi^3
    CHECK(is_in_order(bpi, r1).verdict == MembershipReport::Verdict::InOrder);
}

TEST_CASE("normalizer membership") {
    FieldParams fp = fp3();
    OrderSpec u1(fp, ExtCase::Unramified, 1);
    OrderSpec r1(fp, ExtCase::Ramified, 1);
    Quat delta = Quat::delta(fp), pi_big = Quat::big_pi(fp);
    CHECK(is_normalizer_element(delta, u1));
    CHECK(is_normalizer_element(delta, r1));  // delta mu = mu_bar delta, ramified
    CHECK_FALSE(is_normalizer_element(Quat::one(fp) + delta + pi_big, u1));
    CHECK_FALSE(is_normalizer_element(Quat::one(fp) + delta + pi_big, r1));
}

TEST_CASE("sigma element") {
    FieldParams fp = fp3();
    for (int s : {0, 2}) {
        OrderSpec ord(fp, ExtCase::Ramified, s);
        Quat sigma = sigma_element(ord);
        CHECK(sigma == Quat::delta(fp));
        CHECK(sigma.v_d() == Valuation{0, true});
        CHECK(sigma * ord.mu() == ord.mu_bar() * sigma);
    }
    CHECK_THROWS_AS(sigma_element(OrderSpec(fp, ExtCase::Unramified, 1)), WrongCase);
}

TEST_CASE("unit index of the order") {
    FieldParams fp = fp3();
    CHECK(OrderSpec(fp, ExtCase::Unramified, 0).index() == 1);
    CHECK(OrderSpec(fp, ExtCase::Unramified, 1).index() == 4);
    CHECK(OrderSpec(fp, ExtCase::Ramified, 2).index() == 9);
    for (ExtCase e : {ExtCase::Unramified, ExtCase::Ramified})
        for (int s = 0; s <= 3; ++s) {
            OrderSpec ord(fp, e, s);
            CHECK(index_of_order(ord) == closed_form_index(ord));
            // enumeration level stability
            int m = (e == ExtCase::Unramified ? std::max(1, s) : std::max(1, 2 * s)) + 1;
            CHECK(index_of_order(ord, m) == index_of_order(ord, m + 1));
        }
    FieldParams fp5(5, 12);
    CHECK(OrderSpec(fp5, ExtCase::Unramified, 2).index() == 30);  // (q+1) q^(s-1)
    CHECK(OrderSpec(fp5, ExtCase::Ramified, 1).index() == 5);
}

TEST_CASE("mu matrix inverse identity") {
    FieldParams fp = fp3();
    for (ExtCase e : {ExtCase::Unramified, ExtCase::Ramified})
        for (int s : {0, 1, 2}) {
            OrderSpec ord(fp, e, s);
            Mat2D m = Mat2D::mu_matrix(ord);
            Mat2D minv = Mat2D::mu_matrix_inv(ord);
            Mat2D id = Mat2D::identity(fp);
            Mat2D lhs = minv * m, rhs = m * minv;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    CHECK(lhs.m[i][j] == id.m[i][j]);
                    CHECK(rhs.m[i][j] == id.m[i][j]);
                }
        }
}

TEST_CASE("quaternion literals") {
    FieldParams fp = fp3();
    Quat g = parse_quat(fp, "a=0:0+1*j;b=0:1");
    CHECK(g == Quat::delta(fp) + Quat::big_pi(fp));
    CHECK(parse_quat(fp, "a=0:2") == Quat::from_series(Series::from_int(fp, 2)));
    CHECK(parse_quat(fp, format_quat(g)) == g);
    CHECK_THROWS_AS(parse_quat(fp, "b=0:1"), ParseError);
}

TEST_CASE("second zeta choice leaves the order unchanged") {
    FieldParams fp = fp3();
    OrderSpec d(fp, ExtCase::Unramified, 1, OrderSpec::Zeta::Delta);
    OrderSpec od(fp, ExtCase::Unramified, 1, OrderSpec::Zeta::OnePlusDelta);
    CHECK(d.index() == od.index());
    Sampler smp(fp, 17);
    for (int i = 0; i < 200; ++i) {
        Quat g = smp.integral_quat();
        auto [p1, m1] = pm_decompose(g, d);
        auto [p2, m2] = pm_decompose(g, od);
        CHECK(p1 == p2);  // the eigenspaces depend only on K, not on zeta
        CHECK(m1 == m2);
    }
}
