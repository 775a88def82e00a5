#pragma once

#include <vector>

#include "liftcalc/haar.hpp"

namespace liftcalc {

/* Distance of gamma to a compact subset, as an exact |.|_D value.
 * distance == 0 means membership to precision. Projections are the
 * minimizing residue classes, reported at the minimal separating level
 * (every point of a listed ball attains the distance). */
struct DistanceReport {
    Rat distance;
    bool member = false;
    int dist_vd = 0;  // distance == q^-dist_vd when not a member
    std::vector<Quat> projections;
    int resolution_level = 0;
};

/* ||gamma||_{O_F^x} and Proj_{O_F^x}(gamma). */
DistanceReport distance_to_units_of(const Quat& gamma);

/* Distance to the domain of a unit-group measure space (O_K^x, O^x, or an
 * unramified part), by the same adaptive enumeration. */
DistanceReport distance_to(const Quat& gamma, const MeasureSpace& subset);

enum class DepthClass { Shallow, Deep };

std::string depth_str(DepthClass c);

struct Depth {
    DepthClass cls;
    Quat gamma_prime;   // projection used
    Quat gamma_dprime;  // gamma - gamma_prime
    Rat threshold;      // |pi^-1 mu|_D
    Rat distance;       // ||gamma||_{O_F^x}
};

/* Shallow iff ||gamma||_{O_F^x} >= |pi^-1 mu|_D. Requires v_D(gamma) = 0. */
Depth classify(const Quat& gamma, const OrderSpec& ord);

/* phi(gamma) = 1 + integral over pi O_F of |x - gamma|_D^-1 dx;
 * Infinite when gamma lies in pi O_F to precision. */
ValueExt phi(const Quat& gamma);

/* v_x(gamma) = [O_K^x : O^x] int_{O^x} |gamma - k|_D^-1 dk^x, except for
 * the maximal unramified order where v_x = v_y = v_z = (r+1)/2 with
 * r = v_D(gamma_-). Infinite when gamma in O^x to precision. On shallow
 * input the closed-form route is evaluated too and must agree. */
ValueExt v_x(const Quat& gamma, const OrderSpec& ord);

/* q/(q-1) phi(gamma'') - 2/(q-1) for shallow gamma; checks the bound
 * value < phi(mu). Throws NotShallow otherwise. */
ValueExt shallow_closed_form(const Quat& gamma, const OrderSpec& ord);

/* The four-way closed form:
 *   Infinite                     gamma in O_D^x cap (D^+ u D^-);
 *   index (1 + int_{O_K^x})      ramified, gamma in O_K^x + Pi O_D;
 *   index int_{O_K^x}            unramified, O != O_K;
 *   (r+1)/2                      unramified, O = O_K.
 * Ramified gamma outside O_K^x + Pi O_D: throws Unsupported. */
ValueExt v_y(const Quat& gamma, const OrderSpec& ord);

/* index int_{O_K^x} |gamma - k|_D^-1 dk^x (the integrand equals the
 * paper's |k^-1 gamma - 1| since |k|_D = 1); at the maximal unramified
 * order v_z = v_x = v_y = (r+1)/2. Infinite when gamma in O_K^x. */
ValueExt v_z(const Quat& gamma, const OrderSpec& ord);

/* v_abar(gamma) = v_z(gamma sigma), ramified only (WrongCase otherwise);
 * equals the index for deep gamma in O_K^x, which is checked. */
ValueExt v_abar(const Quat& gamma, const OrderSpec& ord);

/* <y_1, y_2> = phi(mu_1) if 1 > |mu_1|_D > |mu_2|_D, 1 if 1 = |mu_1|_D > |mu_2|_D.
 * Throws Unsupported unless |mu_1|_D > |mu_2|_D. */
ValueExt intersection_pairing(const OrderSpec& ord1, const OrderSpec& ord2);

/* Representatives of O_K^x / O^x (index many). */
std::vector<Quat> coset_reps_ok_mod_order(const OrderSpec& ord);

/* GL_2(O_F) oracle: evaluates the unsimplified matrix integrand over
 * residue lifts, with a per-matrix constancy certificate. Matrices whose
 * certificate fails are refined one pi-digit at a time up to refine_cap
 * extra levels; survivors make the result Infinite when the input sits in
 * the divergence locus (the normalizer), InsufficientPrecision otherwise. */
struct OracleResult {
    ValueExt value;
    Rat raw_integral;  // the bare GL2 integral (0 when not certified)
    long matrices = 0;
    int level_used = 0;
    bool certified = false;
};

OracleResult gl2_oracle_vy(const Quat& gamma, const OrderSpec& ord, int level,
                           int refine_cap = 4, std::int64_t budget = 100000000);

/* gamma0 models the quasi-isogeny ratio between the two liftings and must
 * have v_D(gamma0) = s_1 - s_2 (checked; Unsupported otherwise). */
OracleResult gl2_oracle_pairing(const OrderSpec& ord1, const OrderSpec& ord2,
                                const Quat& gamma0, int level, int refine_cap = 4,
                                std::int64_t budget = 100000000);

/* Sum of the full oracle integrand over the slice v(g_21) = n at the given
 * enumeration level; the shallow part P_s is the sum of these for n < u. */
Rat gl2_omega_slice_sum(const Quat& gamma, const OrderSpec& ord, int n, int level,
                        std::int64_t budget = 100000000);

/* u = the maximal integer with |pi^(u-1)|_D > |mu|_D (s unramified,
 * s + 1 ramified; both computed and checked against each other). */
int u_from_definition(const OrderSpec& ord);

/* P_s from the closed form |mu - mu_bar|_D (1+q^-1)^-1 q^(u-1) (0 when
 * u = 0), P_d from the certified integral of the deep part, and the
 * reassembled v_y = eps_F [O_K:O^x]^2 |Delta|^-1 (P_s + P_d), which is
 * checked against v_y whenever the closed form applies. */
struct PsPdReport {
    Rat p_s;
    ValueExt p_d;
    int u = 0;
    ValueExt v_y_from_parts;
};

PsPdReport ps_pd_decomposition(const Quat& gamma, const OrderSpec& ord);

/* The bilinear combination sum_ij g_ij P_ij used by the oracle kernels;
 * entries of g are integer lifts with base-q digits. Exposed so tests can
 * pin the kernel against the honest Mat2D product. */
Quat gl2_combination(const std::array<Quat, 4>& p, const FieldParams& fp,
                     const std::array<std::int64_t, 4>& g, int level);

/* The two bilinear factor pairs: P_ij = u_i w_j with
 *   v_y:      u = (1 0) M^-1 gamma,          w = M (0 1)^T,   M = [[1,1],[mu,mu_bar]]
 *   pairing:  u = (0 1) M_1^-1,              w = gamma0 M_2 (1 0)^T
 */
std::array<Quat, 4> gl2_vy_bilinear(const Quat& gamma, const OrderSpec& ord);
std::array<Quat, 4> gl2_pairing_bilinear(const OrderSpec& ord1, const OrderSpec& ord2,
                                         const Quat& gamma0);

}  // namespace liftcalc
