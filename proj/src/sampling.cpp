#include "liftcalc/sampling.hpp"

#include "liftcalc/lifting.hpp"

namespace liftcalc {

Series Sampler::series(int lo, int len, bool f_rational) {
    std::vector<QuadExt> dig(static_cast<std::size_t>(len));
    for (auto& d : dig) {
        d.c = digit();
        d.d = f_rational ? 0 : digit();
    }
    return Series::from_digits(fp_, lo, std::move(dig), lo + len);
}

Series Sampler::series_unit_lead(int lo, int len, bool f_rational) {
    Series s = series(lo, len, f_rational);
    std::vector<QuadExt> dig(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) dig[static_cast<std::size_t>(i)] = s.digit(lo + i);
    if (dig[0].is_zero()) {
        if (f_rational || rng_() % 2 == 0)
            dig[0].c = nonzero_digit();
        else
            dig[0].d = nonzero_digit();
    }
    return Series::from_digits(fp_, lo, std::move(dig), lo + len);
}

Quat Sampler::integral_quat() {
    int n = fp_.precision();
    return Quat(series(0, n), series(0, n));
}

Quat Sampler::integral_non_unit() {
    int n = fp_.precision();
    Quat x(series(1, n - 1), series(0, n));
    if (x.is_zero()) return Quat::big_pi(fp_);
    return x;
}

Quat Sampler::unit() {
    int n = fp_.precision();
    return Quat(series_unit_lead(0, n), series(0, n));
}

Quat Sampler::unit_distance_one() {
    int n = fp_.precision();
    Series a = series(0, n);
    std::vector<QuadExt> dig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dig[static_cast<std::size_t>(i)] = a.digit(i);
    dig[0].d = nonzero_digit();  // residue outside F_q
    return Quat(Series::from_digits(fp_, 0, std::move(dig), n), series(0, n));
}

Quat Sampler::ok_unit(const OrderSpec& ord) {
    int n = fp_.precision();
    if (ord.ext() == ExtCase::Unramified)
        return Quat(series_unit_lead(0, n), Series::zero(fp_, n));
    return Quat(series_unit_lead(0, n, true), series(0, n, true));
}

Quat Sampler::order_unit(const OrderSpec& ord) {
    int n = fp_.precision();
    int s = ord.level();
    if (ord.ext() == ExtCase::Unramified) {
        // F-part unit, delta-part in pi^s O_F
        Series x = series_unit_lead(0, n, true);
        Series y = s >= n ? Series::zero(fp_, n) : series(s, n - s, true);
        Quat delta = Quat::delta(fp_);
        return Quat(x + delta.a() * y, Series::zero(fp_, n));
    }
    Series x = series_unit_lead(0, n, true);
    Series y = s >= n ? Series::zero(fp_, n) : series(s, n - s, true);
    return Quat(std::move(x), std::move(y));
}

Quat Sampler::normalizer_unit(const OrderSpec& ord) {
    if (ord.ext() == ExtCase::Unramified) return ok_unit(ord);  // D^- has no units here
    if (rng_() % 2 == 0) return ok_unit(ord);
    return sigma_element(ord) * ok_unit(ord);  // delta * F(Pi)-unit lies in D^-
}

Quat Sampler::ok_plus_pi_od_unit(const OrderSpec& ord) {
    int n = fp_.precision();
    if (ord.ext() == ExtCase::Unramified) return unit();
    // residue must be F_q-rational and nonzero; all deeper digits free
    Series a = series(0, n);
    std::vector<QuadExt> dig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dig[static_cast<std::size_t>(i)] = a.digit(i);
    dig[0].d = 0;
    if (dig[0].c == 0) dig[0].c = nonzero_digit();
    return Quat(Series::from_digits(fp_, 0, std::move(dig), n), series(0, n));
}

Quat Sampler::shallow(const OrderSpec& ord) {
    for (int tries = 0; tries < 1000; ++tries) {
        Quat g = unit();
        if (classify(g, ord).cls == DepthClass::Shallow) return g;
    }
    throw Error("could not sample a shallow automorphism (is s >= 1?)");
}

Quat Sampler::deep(const OrderSpec& ord) {
    // u (1 + small) with the non-F components pushed past |pi^-1 mu|_D
    int n = fp_.precision();
    int vmu = ord.v_d_mu();
    int jd = (vmu + 1) / 2, jb = vmu / 2;  // 2 jd >= vmu - 1 + ..., see classify
    if (jd < 1) jd = 1;
    Series x = series_unit_lead(0, n, true);
    Series ad = jd >= n ? Series::zero(fp_, n) : series(jd, n - jd, true);
    Series b = jb >= n ? Series::zero(fp_, n) : series(jb, n - jb, true);
    Quat g(x + Series::delta(fp_) * ad, b);
    if (classify(g, ord).cls != DepthClass::Deep)
        throw Error("deep sampler produced a shallow element");
    return g;
}

Quat Sampler::deep_ok_unit(const OrderSpec& ord) {
    if (ord.ext() != ExtCase::Ramified)
        throw WrongCase("deep O_K units are drawn for ramified orders");
    int n = fp_.precision();
    int s = ord.level();
    Series x = series_unit_lead(0, n, true);
    Series y = s >= n ? Series::zero(fp_, n) : series(s, n - s, true);
    Quat g(std::move(x), std::move(y));
    if (classify(g, ord).cls != DepthClass::Deep)
        throw Error("deep O_K sampler produced a shallow element");
    return g;
}

}  // namespace liftcalc
