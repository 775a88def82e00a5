#include "liftcalc/haar.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace liftcalc {

Rat vol_gamma(int n, std::uint32_t q) {
    if (n == 0) return 1;
    return rat_pow(q, -n) * Rat(q, q + 1);
}

Rat vol_omega(int n, std::uint32_t q) { return vol_gamma(n, q) - vol_gamma(n + 1, q); }

Rat ok_over_ok_units(const OrderSpec& ord) {
    long qk = ord.q_k();
    return Rat(qk, qk - 1);
}

Rat ok_over_order_units(const OrderSpec& ord) {
    return ok_over_ok_units(ord) * Rat(ord.index());
}

Rat epsilon_f(std::uint32_t q) {
    return (Rat(1) - Rat(1, q)) * (Rat(1) - Rat(1, Int(q) * q));
}

Rat disc_abs(const OrderSpec& ord) {
    return ord.ext() == ExtCase::Unramified ? Rat(1) : Rat(1, ord.fp().q());
}

MeasureSpace MeasureSpace::additive_of(const FieldParams& fp, int shift) {
    if (shift < 0) throw Error("additive domain must sit inside O_F");
    MeasureSpace s(Kind::AdditiveOF, fp);
    s.shift_ = shift;
    return s;
}

MeasureSpace MeasureSpace::units_ok(const OrderSpec& ord, Part part) {
    if (part != Part::Full && ord.ext() != ExtCase::Unramified)
        throw Error("unit-group subdomains are an unramified construction");
    MeasureSpace s(Kind::UnitsOK, ord.fp());
    s.part_ = part;
    s.ord_.push_back(ord);
    return s;
}

MeasureSpace MeasureSpace::units_order(const OrderSpec& ord) {
    MeasureSpace s(Kind::UnitsOrder, ord.fp());
    s.ord_.push_back(ord);
    return s;
}

const OrderSpec& MeasureSpace::ord() const {
    if (ord_.empty()) throw Error("measure space has no attached order");
    return ord_.front();
}

int MeasureSpace::start_level() const {
    switch (kind_) {
        case Kind::AdditiveOF: return shift_;
        case Kind::UnitsOK: return 1;
        case Kind::UnitsOrder: {
            int s = ord().level();
            return std::max(1, ord().ext() == ExtCase::Unramified ? s : 2 * s);
        }
    }
    return 1;
}

int MeasureSpace::radius_vd(int m) const {
    if (kind_ == Kind::AdditiveOF) return 2 * m;
    return ord().pi_k_vd(m);
}

Rat MeasureSpace::ball_volume(int m) const {
    std::uint32_t q = fp_.q();
    if (kind_ == Kind::AdditiveOF) return rat_pow(q, -m);
    long qk = ord().q_k();
    // dk-volume of r + pi_K^m O_K under the O_K^x-normalized measure
    return rat_pow(qk, -m) * ok_over_ok_units(ord());
}

Rat MeasureSpace::total_mass() const {
    std::uint32_t q = fp_.q();
    switch (kind_) {
        case Kind::AdditiveOF: return rat_pow(q, -shift_);
        case Kind::UnitsOK:
            if (part_ == Part::Full) return 1;
            if (part_ == Part::FPlusZeta) return Rat(q, q + 1);
            return Rat(1, q + 1);
        case Kind::UnitsOrder: return Rat(1, ord().index());
    }
    return 0;
}

namespace {

/* rep + c * pi_K^level for every residue digit c of O_K. */
void append_children(const MeasureSpace& space, const UnitClass& cls,
                     std::vector<UnitClass>& out) {
    const FieldParams& fp = space.fp();
    const std::uint32_t q = fp.q();
    int lvl = cls.level;
    Rat child_vol = space.ball_volume(lvl + 1);
    bool quad_digits = space.kind() != MeasureSpace::Kind::AdditiveOF &&
                       space.ord().ext() == ExtCase::Unramified;
    if (space.kind() == MeasureSpace::Kind::AdditiveOF || !quad_digits) {
        // F_q digit steps: pi^lvl (additive) or Pi^lvl (ramified unit groups)
        bool ram = space.kind() != MeasureSpace::Kind::AdditiveOF;
        for (std::uint32_t c = 0; c < q; ++c) {
            Quat step = ram ? Quat::big_pi_pow(fp, lvl) : Quat::from_series(Series::pi_pow(fp, lvl));
            Series coeff = Series::monomial(fp, {c, 0}, 0);
            Quat child = cls.rep + Quat(step.a() * coeff, step.b() * coeff);
            out.push_back({child, lvl + 1, child_vol});
        }
        return;
    }
    // F_{q^2} digit steps: (c + d j) pi^lvl
    for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d) {
            Quat child = cls.rep + Quat::from_series(Series::monomial(fp, {c, d}, lvl));
            out.push_back({child, lvl + 1, child_vol});
        }
}

}  // namespace

std::vector<UnitClass> split_class(const MeasureSpace& space, const UnitClass& cls) {
    std::vector<UnitClass> out;
    append_children(space, cls, out);
    return out;
}

std::vector<UnitClass> enumerate_classes(const MeasureSpace& space, int level) {
    const FieldParams& fp = space.fp();
    const std::uint32_t q = fp.q();
    if (level < space.start_level()) throw Error("enumeration level below the space minimum");
    std::vector<UnitClass> out;
    Rat vol = space.ball_volume(level);

    auto push = [&](Quat rep) { out.push_back({std::move(rep), level, vol}); };

    switch (space.kind()) {
        case MeasureSpace::Kind::AdditiveOF: {
            // F-rational digit tuples on [shift, level)
            int lo = space.start_level();
            int n = level - lo;
            std::vector<std::uint32_t> dig(static_cast<std::size_t>(n), 0);
            while (true) {
                std::vector<QuadExt> qd(dig.size());
                for (std::size_t i = 0; i < dig.size(); ++i) qd[i] = {dig[i], 0};
                push(Quat::from_series(
                    Series::from_digits(fp, lo, qd, lo + n + fp.precision())));
                std::size_t i = 0;
                for (; i < dig.size(); ++i) {
                    if (++dig[i] < q) break;
                    dig[i] = 0;
                }
                if (i == dig.size()) break;
            }
            break;
        }
        case MeasureSpace::Kind::UnitsOK:
        case MeasureSpace::Kind::UnitsOrder: {
            const OrderSpec& ord = space.ord();
            if (ord.ext() == ExtCase::Unramified) {
                // a = sum (c_e + d_e j) pi^e, e in [0, level)
                int s = space.kind() == MeasureSpace::Kind::UnitsOrder ? ord.level() : 0;
                std::vector<std::uint32_t> c(static_cast<std::size_t>(level), 0),
                    d(static_cast<std::size_t>(level), 0);
                Quat zeta = ord.zeta();
                while (true) {
                    bool emit;
                    Quat rep = Quat::zero(fp);
                    if (space.kind() == MeasureSpace::Kind::UnitsOK &&
                        space.part() != MeasureSpace::Part::Full) {
                        // k = x + y zeta with (x, y) the (c, d) tuples
                        bool fplus = space.part() == MeasureSpace::Part::FPlusZeta;
                        emit = fplus ? c[0] != 0 : (c[0] == 0 && d[0] != 0);
                        if (emit) {
                            std::vector<QuadExt> xd(c.size()), yd(c.size());
                            for (std::size_t i = 0; i < c.size(); ++i) {
                                xd[i] = {c[i], 0};
                                yd[i] = {d[i], 0};
                            }
                            Series x = Series::from_digits(fp, 0, xd, level + fp.precision());
                            Series y = Series::from_digits(fp, 0, yd, level + fp.precision());
                            rep = Quat::from_series(x) +
                                  Quat(zeta.a() * y, zeta.b() * y);
                        }
                    } else {
                        emit = !(c[0] == 0 && d[0] == 0);
                        for (int e = 0; e < s && e < level && emit; ++e)
                            if (d[static_cast<std::size_t>(e)] != 0) emit = false;
                        if (emit) {
                            std::vector<QuadExt> qd(c.size());
                            for (std::size_t i = 0; i < c.size(); ++i) qd[i] = {c[i], d[i]};
                            rep = Quat::from_series(
                                Series::from_digits(fp, 0, qd, level + fp.precision()));
                        }
                    }
                    if (emit) push(std::move(rep));
                    std::size_t i = 0;
                    for (; i < c.size(); ++i) {
                        if (++c[i] < q) break;
                        c[i] = 0;
                        if (++d[i] < q) break;
                        d[i] = 0;
                    }
                    if (i == c.size()) break;
                }
            } else {
                // a mod pi^na (F-rational, unit), b mod pi^nb (F-rational, val >= s for O^x)
                int na = (level + 1) / 2, nb = level / 2;
                int s = space.kind() == MeasureSpace::Kind::UnitsOrder ? ord.level() : 0;
                std::vector<std::uint32_t> av(static_cast<std::size_t>(na), 0),
                    bv(static_cast<std::size_t>(nb), 0);
                while (true) {
                    bool emit = av[0] != 0;
                    for (int e = 0; e < s && e < nb && emit; ++e)
                        if (bv[static_cast<std::size_t>(e)] != 0) emit = false;
                    if (emit) {
                        std::vector<QuadExt> ad(av.size()), bd(bv.size());
                        for (std::size_t i = 0; i < av.size(); ++i) ad[i] = {av[i], 0};
                        for (std::size_t i = 0; i < bv.size(); ++i) bd[i] = {bv[i], 0};
                        Series sa = Series::from_digits(fp, 0, ad, na + fp.precision());
                        Series sb = nb == 0 ? Series::zero(fp, fp.precision())
                                            : Series::from_digits(fp, 0, bd, nb + fp.precision());
                        push(Quat(std::move(sa), std::move(sb)));
                    }
                    std::size_t i = 0;
                    for (; i < av.size() + bv.size(); ++i) {
                        std::uint32_t& slot = i < av.size() ? av[i] : bv[i - av.size()];
                        if (++slot < q) break;
                        slot = 0;
                    }
                    if (i == av.size() + bv.size()) break;
                }
            }
            break;
        }
    }
    return out;
}

int default_depth_cap(const MeasureSpace& space, const Quat& center) {
    int prec = std::min({space.fp().precision(), center.a().precision(),
                         center.b().precision()});
    // certificates need the radius valuation to stay resolvable: radius_vd <= 2 prec - 2
    int cap = space.start_level();
    while (space.radius_vd(cap + 1) <= 2 * prec - 2) ++cap;
    return cap;
}

IntegralResult integrate(const MeasureSpace& space, const Quat& center, int sign,
                         int depth_cap) {
    assert(sign == 1 || sign == -1);
    const std::uint32_t q = space.fp().q();
    int bound = default_depth_cap(space, center);
    if (depth_cap < 0) depth_cap = bound;
    if (depth_cap > bound)
        throw Error("depth_cap exceeds the precision-derived bound");

    // Lemma jinzhang bound: over K-rational domains |center - k|_D >= |center_-|_D,
    // so refinement past that radius cannot be needed; same for the non-F part
    // of the center over additive domains.
    Valuation floor_v{0, false};
    if (space.kind() == MeasureSpace::Kind::AdditiveOF) {
        Series a_delta = center.a() - center.a().frobenius();  // 2 * delta-part
        floor_v = val_min({2 * a_delta.val().value, a_delta.val().resolved},
                          {2 * center.b().val().value + 1, center.b().val().resolved});
    } else {
        auto [plus, minus] = pm_decompose(center, space.ord());
        Valuation vm = minus.v_d();
        floor_v = {vm.value, vm.resolved};
    }
    if (floor_v.resolved) {
        int tight = space.start_level();
        while (tight < depth_cap && space.radius_vd(tight) <= floor_v.value) ++tight;
        depth_cap = std::min(depth_cap, tight);
    }

    IntegralResult res;
    res.certified = true;
    Rat sum = 0;
    std::deque<UnitClass> work;
    for (auto& c : enumerate_classes(space, space.start_level())) work.push_back(std::move(c));
    res.level_used = space.start_level();
    while (!work.empty()) {
        UnitClass cls = std::move(work.front());
        work.pop_front();
        res.level_used = std::max(res.level_used, cls.level);
        Valuation d = (center - cls.rep).v_d();
        if (d.resolved && d.value < space.radius_vd(cls.level)) {
            sum += cls.volume * rat_pow(q, sign * d.value);
        } else if (cls.level < depth_cap) {
            for (auto& child : split_class(space, cls)) work.push_back(std::move(child));
        } else {
            res.certified = false;
        }
    }
    res.value = res.certified ? ValueExt::finite(sum) : ValueExt::infinite();
    return res;
}

Int gl2_group_order(std::uint32_t q, int level) {
    Int r = (Int(q) * q - 1) * (Int(q) * q - q);
    for (int i = 1; i < level; ++i) r *= Int(q) * q * q * q;
    return r;
}

void for_each_gl2(std::uint32_t q, int level,
                  const std::function<void(const std::array<std::int64_t, 4>&)>& fn,
                  std::int64_t budget) {
    std::int64_t qn = 1;
    for (int i = 0; i < level; ++i) {
        qn *= q;
        if (qn > budget) throw BudgetExceeded("GL2 enumeration level too deep");
    }
    double cand = 1.0;
    for (int i = 0; i < 4; ++i) cand *= static_cast<double>(qn);
    if (cand > static_cast<double>(budget))
        throw BudgetExceeded("GL2 enumeration exceeds budget");
    std::array<std::int64_t, 4> g{};
    for (g[0] = 0; g[0] < qn; ++g[0])
        for (g[1] = 0; g[1] < qn; ++g[1])
            for (g[2] = 0; g[2] < qn; ++g[2])
                for (g[3] = 0; g[3] < qn; ++g[3]) {
                    // unit determinant mod pi: digit-0 test
                    std::int64_t det0 =
                        (g[0] % q) * (g[3] % q) - (g[1] % q) * (g[2] % q);
                    det0 %= static_cast<std::int64_t>(q);
                    if (det0 < 0) det0 += q;
                    if (det0 != 0) fn(g);
                }
}

}  // namespace liftcalc
