#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "liftcalc/series.hpp"

namespace liftcalc {

/* Element a + b*Pi of the quaternion division algebra D over F, with
 * a, b in the unramified quadratic K_ur = F_{q^2}((pi)), Pi^2 = pi and
 * Pi*u = conj(u)*Pi. v_D(a + b*Pi) = min(2 val a, 2 val b + 1), so
 * |pi|_D = q^-2 and Pi is a uniformizer of the maximal order O_D. */
class Quat {
public:
    explicit Quat(const FieldParams& fp)
        : a_(Series::zero(fp, fp.precision())), b_(Series::zero(fp, fp.precision())) {}
    Quat(Series a, Series b) : a_(std::move(a)), b_(std::move(b)) {}

    static Quat zero(const FieldParams& fp) { return Quat(fp); }
    static Quat one(const FieldParams& fp) {
        return Quat(Series::one(fp), Series::zero(fp, fp.precision()));
    }
    static Quat from_series(Series a) {
        Series b = Series::zero(a.fp(), a.precision());
        return Quat(std::move(a), std::move(b));
    }
    static Quat delta(const FieldParams& fp) { return from_series(Series::delta(fp)); }
    static Quat big_pi(const FieldParams& fp) {
        return Quat(Series::zero(fp, fp.precision()), Series::one(fp));
    }
    /* Pi^k (even k: pi^(k/2); odd k: pi^((k-1)/2) * Pi), k may be negative. */
    static Quat big_pi_pow(const FieldParams& fp, int k);

    const Series& a() const { return a_; }
    const Series& b() const { return b_; }
    const FieldParams& fp() const { return a_.fp(); }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Valuation v_d() const;

    Quat operator-() const { return Quat(-a_, -b_); }
    friend Quat operator+(const Quat& x, const Quat& y) {
        return Quat(x.a_ + y.a_, x.b_ + y.b_);
    }
    friend Quat operator-(const Quat& x, const Quat& y) {
        return Quat(x.a_ - y.a_, x.b_ - y.b_);
    }
    /* (a+bPi)(c+dPi) = (ac + pi b conj(d)) + (ad + b conj(c))Pi */
    friend Quat operator*(const Quat& x, const Quat& y);

    Quat inv() const;  // throws InversionOfZero
    /* Main involution: bar(a + bPi) = conj(a) - bPi. x * bar(x) lies in F. */
    Quat bar() const { return Quat(a_.frobenius(), -b_); }
    /* Reduced norm a conj(a) - pi b conj(b), an F-element. */
    Series norm() const;

    friend bool operator==(const Quat& x, const Quat& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    std::string str() const;

private:
    Series a_, b_;
};

enum class ExtCase { Unramified, Ramified };

std::string ext_case_str(ExtCase c);

/* The quadratic order O = O_F + pi^s O_K inside O_K, with K embedded in D
 * as F(j) (unramified) or F(Pi) (ramified). mu is the chosen generator of
 * smallest absolute value: pi^s * zeta (unramified, zeta a unit of O_K with
 * zeta != conj zeta, default j) or pi^s * Pi (ramified). */
class OrderSpec {
public:
    /* zeta choice for the unramified case; the computed quantities do not
     * depend on it, which the tests exercise. */
    enum class Zeta { Delta, OnePlusDelta };

    OrderSpec(const FieldParams& fp, ExtCase ext, int level, Zeta zeta = Zeta::Delta);

    const FieldParams& fp() const { return fp_; }
    ExtCase ext() const { return ext_; }
    int level() const { return level_; }
    Zeta zeta_choice() const { return zeta_; }

    Quat mu() const;
    Quat mu_bar() const;
    Quat zeta() const;  // the unit generator direction (j or 1+j; Pi when ramified)
    int v_d_mu() const { return ext_ == ExtCase::Unramified ? 2 * level_ : 2 * level_ + 1; }

    /* [O_K^x : O^x], computed by residue enumeration (memoized). */
    long index() const;

    /* pi_K in D: pi (unramified) or Pi (ramified). */
    Quat pi_k() const;
    int ramification() const { return ext_ == ExtCase::Unramified ? 1 : 2; }
    /* v_D of pi_K^m */
    int pi_k_vd(int m) const { return ext_ == ExtCase::Unramified ? 2 * m : m; }
    /* residue cardinality of K */
    long q_k() const {
        long q = fp_.q();
        return ext_ == ExtCase::Unramified ? q * q : q;
    }

private:
    FieldParams fp_;
    ExtCase ext_;
    int level_;
    Zeta zeta_;
    mutable std::optional<long> index_;
};

/* Closed forms (q+1)q^(s-1) unramified s>=1, q^s ramified, 1 otherwise;
 * unit-tested against the enumeration behind OrderSpec::index(). */
long closed_form_index(const OrderSpec& ord);

/* Coset enumeration of O^x inside O_K^x / (1 + pi_K^m O_K); m defaults to
 * the smallest separating level plus one. */
long index_of_order(const OrderSpec& ord);
long index_of_order(const OrderSpec& ord, int m);

/* gamma = gamma_+ + gamma_- with gamma_+ mu = mu gamma_+ and
 * gamma_- mu = mu_bar gamma_-, via gamma_- = (mu_bar - mu)^-1 (gamma mu - mu gamma). */
std::pair<Quat, Quat> pm_decompose(const Quat& gamma, const OrderSpec& ord);

struct MembershipReport {
    enum class Verdict { InOrder, InUnitGroup, Outside };
    Verdict verdict;
    /* false when the verdict depends on digits at or beyond precision
     * (InOrder / InUnitGroup hold only to precision). */
    bool resolved;
};

/* Decides gamma in O = O_F + pi^s O_K, and unit-ness, by digit inspection. */
MembershipReport is_in_order(const Quat& gamma, const OrderSpec& ord);

/* Membership in O_K (resp. its units) for the embedded K. */
MembershipReport is_in_ok(const Quat& gamma, const OrderSpec& ord);

/* gamma in O_K^x + Pi O_D, the domain of the ramified v_y formula;
 * trivially true in the unramified embedding for any unit. */
bool in_ok_plus_pi_od(const Quat& gamma, const OrderSpec& ord);

/* gamma in O_F (resp. O_F^x) to precision. */
bool in_of(const Quat& gamma);
bool in_of_units(const Quat& gamma);
/* gamma in pi O_F to precision (divergence locus of phi). */
bool in_pi_of(const Quat& gamma);

/* True iff gamma_+ == 0 or gamma_- == 0 to precision; for units this is
 * membership in the normalizer O_D^x cap (D^+ u D^-) of O_K^x. */
bool is_normalizer_element(const Quat& gamma, const OrderSpec& ord);

/* The normalizer unit sigma with sigma mu = mu_bar sigma (= j); ramified only. */
Quat sigma_element(const OrderSpec& ord);

/* 2x2 matrices over D. */
struct Mat2D {
    std::array<std::array<Quat, 2>, 2> m;

    static Mat2D from(Quat m11, Quat m12, Quat m21, Quat m22) {
        return Mat2D{std::array<std::array<Quat, 2>, 2>{
            std::array<Quat, 2>{std::move(m11), std::move(m12)},
            std::array<Quat, 2>{std::move(m21), std::move(m22)}}};
    }
    static Mat2D identity(const FieldParams& fp);
    /* [[1,1],[mu,mu_bar]] and its explicit inverse (mu_bar-mu)^-1 [[mu_bar,-1],[-mu,1]] */
    static Mat2D mu_matrix(const OrderSpec& ord);
    static Mat2D mu_matrix_inv(const OrderSpec& ord);

    friend Mat2D operator*(const Mat2D& x, const Mat2D& y);
    friend Mat2D operator+(const Mat2D& x, const Mat2D& y);
    Mat2D scaled_left(const Quat& c) const;  // entries c * m_ij
};

/* row * M (row vectors act on the left). */
std::array<Quat, 2> row_mul(const std::array<Quat, 2>& row, const Mat2D& m);
/* M * col */
std::array<Quat, 2> mul_col(const Mat2D& m, const std::array<Quat, 2>& col);

/* Literal "a=<series>;b=<series>"; the b part may be omitted. */
Quat parse_quat(const FieldParams& fp, const std::string& text);
std::string format_quat(const Quat& x);

}  // namespace liftcalc
