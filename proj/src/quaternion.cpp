#include "liftcalc/quaternion.hpp"

#include <cassert>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace liftcalc {

Quat Quat::big_pi_pow(const FieldParams& fp, int k) {
    // Pi^(2t) = pi^t, Pi^(2t+1) = pi^t Pi
    if (k % 2 == 0) return from_series(Series::pi_pow(fp, k / 2));
    int t = (k - 1) / 2;  // exact: k - 1 is even
    return Quat(Series::zero(fp, fp.precision() + t), Series::pi_pow(fp, t));
}

Valuation Quat::v_d() const {
    Valuation va = a_.val(), vb = b_.val();
    return val_min({2 * va.value, va.resolved}, {2 * vb.value + 1, vb.resolved});
}

Quat operator*(const Quat& x, const Quat& y) {
    const Series &a = x.a_, &b = x.b_, &c = y.a_, &d = y.b_;
    return Quat(a * c + (b * d.frobenius()).shifted(1), a * d + b * c.frobenius());
}

Series Quat::norm() const {
    return a_ * a_.frobenius() - (b_ * b_.frobenius()).shifted(1);
}

Quat Quat::inv() const {
    Valuation v = v_d();
    if (!v.resolved) throw InversionOfZero();
    Series n_inv = norm().inv();
    Quat xb = bar();
    return Quat(xb.a() * n_inv, xb.b() * n_inv);  // norm is central
}

std::string Quat::str() const { return format_quat(*this); }

std::string ext_case_str(ExtCase c) {
    return c == ExtCase::Unramified ? "unramified" : "ramified";
}

OrderSpec::OrderSpec(const FieldParams& fp, ExtCase ext, int level, Zeta zeta)
    : fp_(fp), ext_(ext), level_(level), zeta_(zeta) {
    if (level < 0) throw Error("order level must be non-negative");
}

Quat OrderSpec::zeta() const {
    if (ext_ == ExtCase::Ramified) return Quat::big_pi(fp_);
    Series z = zeta_ == Zeta::Delta ? Series::delta(fp_)
                                    : Series::one(fp_) + Series::delta(fp_);
    return Quat::from_series(z);
}

Quat OrderSpec::mu() const {
    Quat z = zeta();
    return Quat(z.a().shifted(level_), z.b().shifted(level_));
}

Quat OrderSpec::mu_bar() const { return mu().bar(); }

Quat OrderSpec::pi_k() const {
    return ext_ == ExtCase::Unramified ? Quat::from_series(Series::pi_pow(fp_, 1))
                                       : Quat::big_pi(fp_);
}

long OrderSpec::index() const {
    if (!index_) index_ = index_of_order(*this);
    return *index_;
}

long closed_form_index(const OrderSpec& ord) {
    long q = ord.fp().q(), s = ord.level();
    if (ord.ext() == ExtCase::Ramified) {
        long r = 1;
        for (long i = 0; i < s; ++i) r *= q;
        return r;
    }
    if (s == 0) return 1;
    long r = q + 1;
    for (long i = 0; i < s - 1; ++i) r *= q;
    return r;
}

long index_of_order(const OrderSpec& ord) {
    int s = ord.level();
    int m = (ord.ext() == ExtCase::Unramified ? std::max(1, s) : std::max(1, 2 * s)) + 1;
    return index_of_order(ord, m);
}

/* Counts unit residues mod pi_K^m and those meeting O's digit constraints;
 * the index is the ratio [O_K^x : O^x] once m separates (m > s e_K). */
long index_of_order(const OrderSpec& ord, int m) {
    const std::uint32_t q = ord.fp().q();
    const int s = ord.level();
    long units = 0, members = 0;
    if (ord.ext() == ExtCase::Unramified) {
        if (m <= s) throw Error("index enumeration level too small");
        // residues: m digits in F_{q^2}
        std::vector<std::uint32_t> c(static_cast<std::size_t>(m)), d(c);
        const long q2 = static_cast<long>(q) * q;
        long total = 1;
        for (int i = 0; i < m; ++i) total *= q2;
        for (long idx = 0; idx < total; ++idx) {
            long t = idx;
            for (int i = 0; i < m; ++i) {
                c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % q);
                t /= q;
                d[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % q);
                t /= q;
            }
            if (c[0] == 0 && d[0] == 0) continue;
            ++units;
            bool in_o = true;
            for (int i = 0; i < s && in_o; ++i)
                if (d[static_cast<std::size_t>(i)] != 0) in_o = false;
            if (in_o) ++members;
        }
    } else {
        if (m <= 2 * s) throw Error("index enumeration level too small");
        const int na = (m + 1) / 2, nb = m / 2;  // a mod pi^na, b mod pi^nb
        long total = 1;
        for (int i = 0; i < na + nb; ++i) total *= q;
        std::vector<std::uint32_t> dig(static_cast<std::size_t>(na + nb));
        for (long idx = 0; idx < total; ++idx) {
            long t = idx;
            for (int i = 0; i < na + nb; ++i) {
                dig[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % q);
                t /= q;
            }
            if (dig[0] == 0) continue;  // a must be a unit
            ++units;
            bool in_o = true;
            for (int i = 0; i < s && in_o; ++i)
                if (dig[static_cast<std::size_t>(na + i)] != 0) in_o = false;
            if (in_o) ++members;
        }
    }
    if (members == 0) throw Error("index enumeration found no order units");
    assert(units % members == 0);
    return units / members;
}

std::pair<Quat, Quat> pm_decompose(const Quat& gamma, const OrderSpec& ord) {
    Quat mu = ord.mu(), mu_bar = ord.mu_bar();
    Quat minus = (mu_bar - mu).inv() * (gamma * mu - mu * gamma);
    Quat plus = gamma - minus;
    return {plus, minus};
}

namespace {

/* Digit-level scan: all stored digits of x at exponents < cap satisfy pred;
 * witnesses of failure are definite, success holds to precision. */
template <typename Pred>
bool digits_ok(const Series& x, int cap, Pred pred) {
    Valuation v = x.val();
    if (!v.resolved) return true;
    for (int e = v.value; e < std::min(x.precision(), cap); ++e)
        if (!pred(x.digit(e), e)) return false;
    return true;
}

bool val_at_least(const Series& x, int k) {
    Valuation v = x.val();
    return !v.resolved || v.value >= k;
}

}  // namespace

MembershipReport is_in_ok(const Quat& gamma, const OrderSpec& ord) {
    const auto outside = MembershipReport{MembershipReport::Verdict::Outside, true};
    bool ok;
    if (ord.ext() == ExtCase::Unramified) {
        ok = val_at_least(gamma.a(), 0) && gamma.b().is_zero();
    } else {
        ok = val_at_least(gamma.a(), 0) && val_at_least(gamma.b(), 0) &&
             gamma.a().f_rational() && gamma.b().f_rational();
    }
    if (!ok) return outside;
    bool unit = !gamma.a().digit(0).is_zero();
    return {unit ? MembershipReport::Verdict::InUnitGroup : MembershipReport::Verdict::InOrder,
            false};
}

MembershipReport is_in_order(const Quat& gamma, const OrderSpec& ord) {
    const auto outside = MembershipReport{MembershipReport::Verdict::Outside, true};
    MembershipReport ok_report = is_in_ok(gamma, ord);
    if (ok_report.verdict == MembershipReport::Verdict::Outside) return outside;
    const int s = ord.level();
    if (ord.ext() == ExtCase::Unramified) {
        // delta-components of a below pi^s must vanish
        if (!digits_ok(gamma.a(), s, [](QuadExt x, int) { return x.d == 0; }))
            return outside;
    } else {
        // b must lie in pi^s O_F
        if (!val_at_least(gamma.b(), s)) return outside;
    }
    return ok_report;
}

bool in_ok_plus_pi_od(const Quat& gamma, const OrderSpec& ord) {
    QuadExt r = gamma.a().digit(0);
    if (ord.ext() == ExtCase::Unramified) return !r.is_zero();
    return r.d == 0 && r.c != 0;
}

bool in_of(const Quat& gamma) {
    return gamma.b().is_zero() && gamma.a().f_rational() && val_at_least(gamma.a(), 0);
}

bool in_of_units(const Quat& gamma) {
    return in_of(gamma) && !gamma.a().digit(0).is_zero();
}

bool in_pi_of(const Quat& gamma) {
    return gamma.b().is_zero() && gamma.a().f_rational() && val_at_least(gamma.a(), 1);
}

bool is_normalizer_element(const Quat& gamma, const OrderSpec& ord) {
    auto [plus, minus] = pm_decompose(gamma, ord);
    return plus.is_zero() || minus.is_zero();
}

Quat sigma_element(const OrderSpec& ord) {
    if (ord.ext() != ExtCase::Ramified)
        throw WrongCase("sigma_element is defined for ramified orders only");
    return Quat::delta(ord.fp());
}

Mat2D Mat2D::identity(const FieldParams& fp) {
    return from(Quat::one(fp), Quat::zero(fp), Quat::zero(fp), Quat::one(fp));
}

Mat2D Mat2D::mu_matrix(const OrderSpec& ord) {
    const FieldParams& fp = ord.fp();
    return from(Quat::one(fp), Quat::one(fp), ord.mu(), ord.mu_bar());
}

Mat2D Mat2D::mu_matrix_inv(const OrderSpec& ord) {
    Quat c = (ord.mu_bar() - ord.mu()).inv();
    return from(c * ord.mu_bar(), -c, -(c * ord.mu()), c);
}

Mat2D operator*(const Mat2D& x, const Mat2D& y) {
    auto e = [&](int i, int j) {
        return x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
    };
    return Mat2D::from(e(0, 0), e(0, 1), e(1, 0), e(1, 1));
}

Mat2D operator+(const Mat2D& x, const Mat2D& y) {
    return Mat2D::from(x.m[0][0] + y.m[0][0], x.m[0][1] + y.m[0][1],
                       x.m[1][0] + y.m[1][0], x.m[1][1] + y.m[1][1]);
}

Mat2D Mat2D::scaled_left(const Quat& c) const {
    return from(c * m[0][0], c * m[0][1], c * m[1][0], c * m[1][1]);
}

std::array<Quat, 2> row_mul(const std::array<Quat, 2>& row, const Mat2D& m) {
    return {row[0] * m.m[0][0] + row[1] * m.m[1][0],
            row[0] * m.m[0][1] + row[1] * m.m[1][1]};
}

std::array<Quat, 2> mul_col(const Mat2D& m, const std::array<Quat, 2>& col) {
    return {m.m[0][0] * col[0] + m.m[0][1] * col[1],
            m.m[1][0] * col[0] + m.m[1][1] * col[1]};
}

Quat parse_quat(const FieldParams& fp, const std::string& text) {
    std::size_t apos = text.find("a=");
    if (apos != 0) throw ParseError("quaternion literal must start with 'a='");
    std::size_t semi = text.find(";b=");
    std::string a_lit = semi == std::string::npos ? text.substr(2) : text.substr(2, semi - 2);
    Series a = parse_series(fp, a_lit);
    Series b = semi == std::string::npos ? Series::zero(fp, fp.precision())
                                         : parse_series(fp, text.substr(semi + 3));
    return Quat(std::move(a), std::move(b));
}

std::string format_quat(const Quat& x) {
    std::ostringstream os;
    os << "a=" << format_series(x.a()) << ";b=" << format_series(x.b());
    return os.str();
}

}  // namespace liftcalc
