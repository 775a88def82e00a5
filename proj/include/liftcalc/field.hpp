#pragma once

#include <cstdint>
#include <string>

#include "liftcalc/errors.hpp"

namespace liftcalc {

/* Element of F_{q^2} = F_q[j], j^2 = nu, written c + d*j. The residue
 * extension of the unramified quadratic; j plays the role of the
 * trace-zero unit usually called delta. */
struct QuadExt {
    std::uint32_t c = 0;
    std::uint32_t d = 0;

    bool is_zero() const { return c == 0 && d == 0; }
    friend bool operator==(const QuadExt&, const QuadExt&) = default;
};

/* Arithmetic context for the residue tower F_q < F_{q^2} and for the
 * truncated series built on top of it. q must be an odd prime, nu a
 * quadratic non-residue mod q, precision >= 2 the number of pi-digits
 * carried by freshly constructed series. */
class FieldParams {
public:
    FieldParams(std::uint32_t q, int precision);
    FieldParams(std::uint32_t q, std::uint32_t nonsquare, int precision);

    std::uint32_t q() const { return q_; }
    std::uint32_t nonsquare() const { return nu_; }
    int precision() const { return prec_; }

    bool same_field(const FieldParams& o) const { return q_ == o.q_ && nu_ == o.nu_; }

    /* F_q ops on canonical representatives in [0, q) */
    std::uint32_t fadd(std::uint32_t a, std::uint32_t b) const { return (a + b) % q_; }
    std::uint32_t fsub(std::uint32_t a, std::uint32_t b) const { return (a + q_ - b) % q_; }
    std::uint32_t fneg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
    std::uint32_t fmul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((std::uint64_t(a) * b) % q_);
    }
    std::uint32_t fpow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t finv(std::uint32_t a) const;

    /* F_{q^2} ops */
    QuadExt add(QuadExt x, QuadExt y) const { return {fadd(x.c, y.c), fadd(x.d, y.d)}; }
    QuadExt sub(QuadExt x, QuadExt y) const { return {fsub(x.c, y.c), fsub(x.d, y.d)}; }
    QuadExt neg(QuadExt x) const { return {fneg(x.c), fneg(x.d)}; }
    QuadExt mul(QuadExt x, QuadExt y) const {
        return {fadd(fmul(x.c, y.c), fmul(nu_, fmul(x.d, y.d))),
                fadd(fmul(x.c, y.d), fmul(x.d, y.c))};
    }
    QuadExt scale(std::uint32_t a, QuadExt x) const { return {fmul(a, x.c), fmul(a, x.d)}; }
    QuadExt inv(QuadExt x) const;
    /* Frobenius c + d*j -> c - d*j (j^q = -j since nu is a non-residue, q odd) */
    QuadExt conj(QuadExt x) const { return {x.c, fneg(x.d)}; }
    bool in_prime_field(QuadExt x) const { return x.d == 0; }

    QuadExt from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(q_);
        if (r < 0) r += q_;
        return {static_cast<std::uint32_t>(r), 0};
    }

private:
    std::uint32_t q_;
    std::uint32_t nu_;
    int prec_;
};

bool is_odd_prime(std::uint32_t q);
std::uint32_t smallest_nonresidue(std::uint32_t q);

std::string quadext_str(const FieldParams& fp, QuadExt x);

}  // namespace liftcalc
