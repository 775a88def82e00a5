#pragma once

#include <array>
#include <functional>
#include <vector>

#include "liftcalc/quaternion.hpp"
#include "liftcalc/rational.hpp"

namespace liftcalc {

/* Vol Gamma(pi^n) = 1 for n = 0, q^-n / (1 + q^-1) for n >= 1, under the
 * GL_2(O_F)-normalized measure; Omega(pi^n) = Gamma(pi^n) \ Gamma(pi^(n+1)). */
Rat vol_gamma(int n, std::uint32_t q);
Rat vol_omega(int n, std::uint32_t q);

/* [O_K : O_K^x] = (1 - q_K^-1)^-1 and [O_K : O^x] = that times the unit index. */
Rat ok_over_ok_units(const OrderSpec& ord);
Rat ok_over_order_units(const OrderSpec& ord);
/* epsilon_F = zeta_F(1)^-1 zeta_F(2)^-1 = (1-q^-1)(1-q^-2) */
Rat epsilon_f(std::uint32_t q);
/* |Delta_{K/F}|_F: 1 unramified, q^-1 ramified */
Rat disc_abs(const OrderSpec& ord);

/* Domain of integration with its normalized Haar measure:
 *   AdditiveOF  — pi^shift O_F, additive measure with Vol(O_F) = 1;
 *   UnitsOK     — O_K^x (or, unramified, the subset O_F^x + zeta O_F or its
 *                 complement pi O_F + zeta O_F^x), measure normalized by O_K^x;
 *   UnitsOrder  — O^x, measure normalized by O_K^x (total mass 1/index).
 */
class MeasureSpace {
public:
    enum class Kind { AdditiveOF, UnitsOK, UnitsOrder };
    enum class Part { Full, FPlusZeta, Complement };

    static MeasureSpace additive_of(const FieldParams& fp, int shift);
    static MeasureSpace units_ok(const OrderSpec& ord, Part part = Part::Full);
    static MeasureSpace units_order(const OrderSpec& ord);

    Kind kind() const { return kind_; }
    Part part() const { return part_; }
    const FieldParams& fp() const { return fp_; }
    const OrderSpec& ord() const;

    int start_level() const;
    /* v_D of the radius of a level-m ball. */
    int radius_vd(int m) const;
    /* Measure of one level-m ball. */
    Rat ball_volume(int m) const;
    /* Total mass of the domain. */
    Rat total_mass() const;

private:
    MeasureSpace(Kind k, const FieldParams& fp) : kind_(k), fp_(fp) {}

    Kind kind_;
    Part part_ = Part::Full;
    FieldParams fp_;
    int shift_ = 0;
    std::vector<OrderSpec> ord_;  // empty for AdditiveOF
};

/* A residue ball rep + pi_K^level O_K (or rep + pi^level O_F). */
struct UnitClass {
    Quat rep;
    int level;
    Rat volume;
};

/* All classes of the space at the given level; representatives cover the
 * domain exactly once and their volumes sum to total_mass(). */
std::vector<UnitClass> enumerate_classes(const MeasureSpace& space, int level);

/* Children of a class one level deeper. */
std::vector<UnitClass> split_class(const MeasureSpace& space, const UnitClass& cls);

struct IntegralResult {
    ValueExt value;
    int level_used = 0;
    bool certified = false;
};

/* Integral over the space of k -> |center - k|_D^(sign) by adaptive
 * residue-class refinement. A class with representative r is closed out
 * when v_D(center - r) < v_D of the class radius (the integrand is then
 * constant on it); otherwise it is split. A class surviving at depth_cap
 * makes the result Infinite with certified = false: the center lies in
 * the closure of the domain to working precision. depth_cap < 0 selects
 * the precision-derived bound. */
IntegralResult integrate(const MeasureSpace& space, const Quat& center, int sign,
                         int depth_cap = -1);

int default_depth_cap(const MeasureSpace& space, const Quat& center);

/* |GL_2(O_F / pi^level)| */
Int gl2_group_order(std::uint32_t q, int level);

/* Enumerates matrices over O_F/pi^level with unit determinant. Entries are
 * integer lifts whose base-q digits are the pi-digits. Each matrix carries
 * uniform weight 1/|GL_2(O_F/pi^level)|. Guarded: q^(4 level) candidates
 * must not exceed the budget. */
void for_each_gl2(std::uint32_t q, int level,
                  const std::function<void(const std::array<std::int64_t, 4>&)>& fn,
                  std::int64_t budget = 100000000);

}  // namespace liftcalc
