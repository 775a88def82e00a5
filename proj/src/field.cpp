#include "liftcalc/field.hpp"

#include <sstream>

namespace liftcalc {

namespace {
std::uint32_t powmod(std::uint32_t a, std::uint64_t e, std::uint32_t q) {
    std::uint64_t r = 1 % q, base = a % q;
    while (e) {
        if (e & 1) r = (r * base) % q;
        base = (base * base) % q;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}
}  // namespace

bool is_odd_prime(std::uint32_t q) {
    if (q < 3 || q % 2 == 0) return false;
    for (std::uint32_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

std::uint32_t smallest_nonresidue(std::uint32_t q) {
    if (!is_odd_prime(q)) throw Error("q must be an odd prime");
    for (std::uint32_t v = 2; v < q; ++v)
        if (powmod(v, (q - 1) / 2, q) == q - 1) return v;
    throw Error("no quadratic non-residue found");
}

FieldParams::FieldParams(std::uint32_t q, int precision)
    : FieldParams(q, smallest_nonresidue(q), precision) {}

FieldParams::FieldParams(std::uint32_t q, std::uint32_t nonsquare, int precision)
    : q_(q), nu_(nonsquare % (q ? q : 1)), prec_(precision) {
    if (!is_odd_prime(q)) throw Error("q must be an odd prime");
    if (prec_ < 2) throw Error("precision must be at least 2");
    if (powmod(nu_, (q_ - 1) / 2, q_) != q_ - 1)
        throw Error("nonsquare parameter is a quadratic residue mod q");
}

std::uint32_t FieldParams::fpow(std::uint32_t a, std::uint64_t e) const {
    return powmod(a, e, q_);
}

std::uint32_t FieldParams::finv(std::uint32_t a) const {
    if (a % q_ == 0) throw InversionOfZero();
    return fpow(a, q_ - 2);
}

QuadExt FieldParams::inv(QuadExt x) const {
    if (x.is_zero()) throw InversionOfZero();
    // (c + dj)^-1 = (c - dj) / (c^2 - nu d^2); norm nonzero since nu is a non-residue
    std::uint32_t norm = fsub(fmul(x.c, x.c), fmul(nu_, fmul(x.d, x.d)));
    return scale(finv(norm), conj(x));
}

std::string quadext_str(const FieldParams& fp, QuadExt x) {
    (void)fp;
    std::ostringstream os;
    os << x.c << "+" << x.d << "*j";
    return os.str();
}

}  // namespace liftcalc
