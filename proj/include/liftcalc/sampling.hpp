#pragma once

#include <cstdint>
#include <random>

#include "liftcalc/quaternion.hpp"

namespace liftcalc {

/* Seeded generators for the property suites. All draws go through
 * rng() % n directly so sequences are identical across platforms. */
class Sampler {
public:
    explicit Sampler(const FieldParams& fp, std::uint64_t seed) : fp_(fp), rng_(seed) {}

    const FieldParams& fp() const { return fp_; }

    std::uint32_t digit() { return static_cast<std::uint32_t>(rng_() % fp_.q()); }
    std::uint32_t nonzero_digit() {
        return 1 + static_cast<std::uint32_t>(rng_() % (fp_.q() - 1));
    }

    /* Random series with digits on [lo, lo + len); leading digit free. */
    Series series(int lo, int len, bool f_rational = false);
    /* As above with a nonzero leading digit. */
    Series series_unit_lead(int lo, int len, bool f_rational = false);

    /* Random integral quaternion (v_D >= 0, possibly a non-unit). */
    Quat integral_quat();
    /* Random non-unit integral quaternion (v_D >= 1). */
    Quat integral_non_unit();
    /* Random unit of O_D (v_D = 0). */
    Quat unit();
    /* Unit at distance 1 from O_F^x (residue outside F_q). */
    Quat unit_distance_one();
    /* Random unit of O_K^x for the embedded K. */
    Quat ok_unit(const OrderSpec& ord);
    /* Random unit of O^x. */
    Quat order_unit(const OrderSpec& ord);
    /* Random unit of O_D^x cap (D^+ u D^-); ramified draws both components. */
    Quat normalizer_unit(const OrderSpec& ord);
    /* Random unit in O_K^x + Pi O_D (the ramified v_y domain). */
    Quat ok_plus_pi_od_unit(const OrderSpec& ord);
    /* Random shallow automorphism (rejection; requires s >= 1). */
    Quat shallow(const OrderSpec& ord);
    /* Random deep automorphism near O_F^x (constructive). */
    Quat deep(const OrderSpec& ord);
    /* Deep unit of O_K^x (ramified: x + y Pi with val y >= s). */
    Quat deep_ok_unit(const OrderSpec& ord);

private:
    FieldParams fp_;
    std::mt19937_64 rng_;
};

}  // namespace liftcalc
