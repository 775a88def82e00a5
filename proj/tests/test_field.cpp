#include "doctest.h"

#include "liftcalc/field.hpp"
#include "liftcalc/sampling.hpp"

using namespace liftcalc;

TEST_CASE("field parameters are validated") {
    CHECK_THROWS_AS(FieldParams(2, 8), Error);
    CHECK_THROWS_AS(FieldParams(4, 8), Error);
    CHECK_THROWS_AS(FieldParams(9, 8), Error);   // odd prime, not a prime power
    CHECK_THROWS_AS(FieldParams(15, 8), Error);
    CHECK_THROWS_AS(FieldParams(3, 8, 1), Error);  // precision floor is 2... (q, nu, prec)
    CHECK_THROWS_AS(FieldParams(3, 1, 8), Error);  // 1 is a square
    CHECK_THROWS_AS(FieldParams(5, 4, 8), Error);  // 4 = 2^2
    CHECK(FieldParams(3, 8).nonsquare() == 2);
    CHECK(FieldParams(5, 8).nonsquare() == 2);
    CHECK(FieldParams(7, 8).nonsquare() == 3);
}

TEST_CASE("prime field arithmetic") {
    FieldParams fp(7, 8);
    CHECK(fp.fadd(5, 4) == 2);
    CHECK(fp.fmul(3, 5) == 1);
    CHECK(fp.finv(3) == 5);
    CHECK_THROWS_AS(fp.finv(0), InversionOfZero);
    for (std::uint32_t a = 1; a < 7; ++a) CHECK(fp.fmul(a, fp.finv(a)) == 1);
}

TEST_CASE("quadratic extension: j^2 = nu and frobenius") {
    FieldParams fp(3, 8);  // nu = 2
    QuadExt j{0, 1};
    CHECK(fp.mul(j, j) == QuadExt{2, 0});
    CHECK(fp.conj(j) == QuadExt{0, 2});  // j -> -j
    QuadExt x{1, 2};
    CHECK(fp.conj(fp.conj(x)) == x);
    CHECK(fp.in_prime_field(fp.mul(x, fp.conj(x))));  // norm lands in F_q
}

TEST_CASE("quadratic extension inverses") {
    FieldParams fp(5, 12);
    for (std::uint32_t c = 0; c < 5; ++c)
        for (std::uint32_t d = 0; d < 5; ++d) {
            QuadExt x{c, d};
            if (x.is_zero()) {
                CHECK_THROWS_AS(fp.inv(x), InversionOfZero);
                continue;
            }
            CHECK(fp.mul(x, fp.inv(x)) == QuadExt{1, 0});
        }
}

TEST_CASE("frobenius fixes exactly the prime field") {
    FieldParams fp(7, 8);
    int fixed = 0;
    for (std::uint32_t c = 0; c < 7; ++c)
        for (std::uint32_t d = 0; d < 7; ++d) {
            QuadExt x{c, d};
            if (fp.conj(x) == x) {
                ++fixed;
                CHECK(fp.in_prime_field(x));
            }
        }
    CHECK(fixed == 7);
}
