#include "liftcalc/verify.hpp"

#include <sstream>

namespace liftcalc {

namespace {

struct Checker {
    VerifyRow row;
    Rat worst = 0;

    explicit Checker(std::string identity, std::string config) {
        row.identity = std::move(identity);
        row.config = std::move(config);
    }

    void count() { ++row.samples; }

    void fail(const std::string& note) {
        ++row.failures;
        if (row.max_discrepancy == "0") row.max_discrepancy = note;
    }

    void exact(const Rat& lhs, const Rat& rhs) {
        count();
        if (lhs == rhs) return;
        Rat d = lhs > rhs ? lhs - rhs : rhs - lhs;
        ++row.failures;
        if (d > worst) {
            worst = d;
            row.max_discrepancy = rat_str(d);
        }
    }

    void exact(const ValueExt& lhs, const ValueExt& rhs) {
        if (lhs.is_finite() && rhs.is_finite()) {
            exact(lhs.value(), rhs.value());
            return;
        }
        count();
        if (lhs != rhs) fail(lhs.str() + " != " + rhs.str());
    }

    void require(bool ok, const std::string& note) {
        count();
        if (!ok) fail(note);
    }

    VerifyRow done() const { return row; }
};

std::string config_name(const OrderSpec& ord) {
    std::ostringstream os;
    os << ext_case_str(ord.ext()) << " s=" << ord.level();
    if (ord.ext() == ExtCase::Unramified &&
        ord.zeta_choice() == OrderSpec::Zeta::OnePlusDelta)
        os << " zeta=1+j";
    return os.str();
}

std::vector<OrderSpec> config_grid(const VerifyOptions& o, const FieldParams& fp,
                                   int smin, int smax) {
    std::vector<OrderSpec> out;
    std::vector<ExtCase> exts = o.ext ? std::vector<ExtCase>{*o.ext}
                                      : std::vector<ExtCase>{ExtCase::Unramified,
                                                             ExtCase::Ramified};
    for (ExtCase e : exts) {
        int lo = smin, hi = smax;
        if (o.level) lo = hi = *o.level;
        for (int s = lo; s <= hi; ++s) out.emplace_back(fp, e, s);
    }
    return out;
}

FieldParams params_of(const VerifyOptions& o) { return FieldParams(o.q, o.precision); }

/* ---- field_tower invariants ---- */

std::vector<VerifyRow> check_ultrametric(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    Sampler smp(fp, o.seed);
    Checker c("ultrametric", "F_q2((pi))");
    for (int i = 0; i < o.samples; ++i) {
        Series x = smp.series(static_cast<int>(smp.digit() % 3), fp.precision() - 3);
        Series y = smp.series(static_cast<int>(smp.digit() % 3), fp.precision() - 3);
        Valuation vx = x.val(), vy = y.val(), vs = (x + y).val();
        int lower = std::min(vx.value, vy.value);
        c.require(vs.value >= lower, "val(x+y) below min");
        if (vx.resolved && vy.resolved && vx.value != vy.value)
            c.require(vs.resolved && vs.value == lower, "strict ultrametric equality");
    }
    return {c.done()};
}

std::vector<VerifyRow> check_valuation(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    Sampler smp(fp, o.seed);
    Checker c("valuation", "F_q2((pi))");
    for (int i = 0; i < o.samples; ++i) {
        Series x = smp.series(0, fp.precision());
        Series y = smp.series(1, fp.precision() - 1);
        Valuation vx = x.val(), vy = y.val(), vp = (x * y).val();
        if (vx.resolved && vy.resolved)
            c.require(vp.resolved && vp.value == vx.value + vy.value,
                      "val(xy) != val x + val y");
        else
            c.count();
    }
    return {c.done()};
}

std::vector<VerifyRow> check_frobenius(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    Sampler smp(fp, o.seed);
    Checker c("frobenius", "F_q2((pi))");
    for (int i = 0; i < o.samples; ++i) {
        Series x = smp.series(0, fp.precision());
        Series y = smp.series(0, fp.precision());
        c.require((x * y).frobenius() == x.frobenius() * y.frobenius(),
                  "frobenius not multiplicative");
        c.require(x.frobenius().frobenius() == x, "frobenius not an involution");
    }
    return {c.done()};
}

/* ---- quaternion invariants ---- */

std::vector<VerifyRow> check_jinzhang(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (const OrderSpec& ord : config_grid(o, fp, 0, 2)) {
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("jinzhang", config_name(ord));
        Quat mu = ord.mu(), mu_bar = ord.mu_bar();
        for (int i = 0; i < o.samples; ++i) {
            Quat g = smp.integral_quat();
            if (!g.v_d().resolved) continue;
            auto [plus, minus] = pm_decompose(g, ord);
            Valuation lhs = g.v_d(), rhs = val_min(plus.v_d(), minus.v_d());
            c.require(rhs.resolved && rhs.value == lhs.value,
                      "|gamma| != max(|gamma_+|, |gamma_-|)");
            c.require(plus + minus == g, "decomposition does not sum back");
            c.require(plus * mu == mu * plus, "gamma_+ does not commute with mu");
            c.require(minus * mu == mu_bar * minus, "gamma_- not mu_bar-twisted");
        }
        rows.push_back(c.done());
    }
    return rows;
}

std::vector<VerifyRow> check_involution(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    Sampler smp(fp, o.seed);
    Checker c("involution", "O_D");
    for (int i = 0; i < o.samples; ++i) {
        Quat g = smp.integral_quat();
        Valuation v = g.v_d(), vb = g.bar().v_d();
        c.require(v.resolved == vb.resolved && v.value == vb.value,
                  "|bar gamma| != |gamma|");
        Quat n = g * g.bar();
        c.require(n.b().is_zero() && n.a().f_rational(),
                  "gamma bar(gamma) not in F");
    }
    return {c.done()};
}

/* ---- distance / projection ---- */

std::vector<VerifyRow> check_xiaozuo(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    Sampler smp(fp, o.seed);
    Checker c("xiaozuo", "S = O_F^x");
    const std::uint32_t q = fp.q();
    for (int i = 0; i < o.samples; ++i) {
        Quat g = smp.unit();
        DistanceReport d = distance_to_units_of(g);
        if (d.member) continue;
        Quat gp = d.projections.front();
        Quat gpp = g - gp;
        for (std::uint32_t c0 = 1; c0 < q; ++c0)
            for (std::uint32_t c1 = 0; c1 < q; ++c1) {
                Quat a = Quat::from_series(Series::from_int(fp, c0) +
                                           Series::monomial(fp, {c1, 0}, 1));
                Valuation lhs = (g + a).v_d();
                Valuation rhs = val_min((gp + a).v_d(), gpp.v_d());
                c.require(lhs.resolved && rhs.resolved && lhs.value == rhs.value,
                          "|gamma+a| != max(|gamma'+a|, |gamma-gamma'|)");
            }
    }
    return {c.done()};
}

std::vector<VerifyRow> check_canojiu(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    Sampler smp(fp, o.seed);
    Checker c("canojiu", "S = O_F^x");
    for (int i = 0; i < o.samples; ++i) {
        Quat g1 = smp.unit(), g2 = smp.unit();
        DistanceReport d1 = distance_to_units_of(g1), d2 = distance_to_units_of(g2);
        if (d1.member || d2.member) continue;
        if (!(d1.distance > d2.distance)) continue;
        DistanceReport dp = distance_to_units_of(g1 * g2);
        c.require(dp.distance >= d1.distance, "||g1 g2|| < ||g1||");
    }
    return {c.done()};
}

std::vector<VerifyRow> check_jiandu(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (const OrderSpec& ord : config_grid(o, fp, 1, 3)) {
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("jiandu", config_name(ord));
        for (int i = 0; i < std::max(1, o.samples / 4); ++i) {
            Quat g1 = smp.shallow(ord);
            Quat g2 = smp.deep(ord);
            c.require(classify(g1 * g2, ord).cls == DepthClass::Shallow,
                      "shallow * deep not shallow");
        }
        rows.push_back(c.done());
    }
    return rows;
}

/* ---- phi ---- */

std::vector<VerifyRow> check_fendou(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    Sampler smp(fp, o.seed);
    Checker c("fendou", "gamma in O_D \\ O_D^x");
    Quat pi = Quat::from_series(Series::pi_pow(fp, 1));
    for (int i = 0; i < o.samples; ++i) {
        Quat g = smp.integral_non_unit();
        c.exact(phi(pi * g), Rat(fp.q()) * phi(g));
    }
    return {c.done()};
}

std::vector<VerifyRow> check_anna(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (const OrderSpec& ord : config_grid(o, fp, 1, 3)) {
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("anna", config_name(ord));
        Quat mu = ord.mu();
        Quat mu_over_pi(mu.a().shifted(-1), mu.b().shifted(-1));
        ValueExt bound = phi(mu_over_pi);
        for (int i = 0; i < std::max(1, o.samples / 4); ++i) {
            Quat g = smp.shallow(ord);
            Depth d = classify(g, ord);
            ValueExt p = phi(d.gamma_dprime);
            c.require(p.is_finite() && bound.is_finite() &&
                          p.value() <= bound.value(),
                      "phi(gamma'') exceeds phi(mu/pi)");
        }
        rows.push_back(c.done());
    }
    return rows;
}

/* ---- v_x routes ---- */

std::vector<VerifyRow> check_route_shallow(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (const OrderSpec& ord : config_grid(o, fp, 1, 3)) {
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("route-shallow", config_name(ord));
        for (int i = 0; i < std::max(1, o.samples / 4); ++i) {
            Quat g = smp.shallow(ord);
            c.exact(v_x(g, ord), shallow_closed_form(g, ord));
        }
        rows.push_back(c.done());
    }
    return rows;
}

std::vector<VerifyRow> check_zhaonvyou(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    for (int s = 0; s <= 3; ++s) {
        if (o.level && *o.level != s) continue;
        OrderSpec ord(fp, ExtCase::Ramified, s);
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(s));
        Checker c("zhaonvyou", config_name(ord));
        for (int i = 0; i < std::max(1, o.samples / 4); ++i) {
            Quat eps = smp.unit_distance_one();
            c.exact(v_x(eps, ord), ValueExt::finite(1));
        }
        rows.push_back(c.done());
    }
    return rows;
}

std::vector<VerifyRow> check_xingxing(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (const OrderSpec& ord : config_grid(o, fp, 0, 2)) {
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("xingxing", config_name(ord));
        std::vector<Quat> reps = coset_reps_ok_mod_order(ord);
        for (int i = 0; i < std::max(1, o.samples / 5); ++i) {
            Quat g = (ord.ext() == ExtCase::Ramified && i % 2 == 1)
                         ? smp.deep_ok_unit(ord)
                         : smp.deep(ord);
            ValueExt lhs = v_z(g, ord);
            ValueExt rhs = ValueExt::finite(0);
            for (const Quat& k : reps) rhs = rhs + v_x(k * g, ord);
            c.exact(lhs, rhs);
        }
        rows.push_back(c.done());
    }
    return rows;
}

/* ---- ramified chain ---- */

std::vector<VerifyRow> check_jieren(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    for (int s = 0; s <= 2; ++s) {
        if (o.level && *o.level != s) continue;
        OrderSpec ord(fp, ExtCase::Ramified, s);
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(s));
        Checker c("jieren", config_name(ord));
        for (int i = 0; i < std::max(1, o.samples / 4); ++i) {
            Quat g = smp.ok_plus_pi_od_unit(ord);
            c.exact(v_y(g, ord), v_z(g, ord) + v_abar(g, ord));
        }
        rows.push_back(c.done());
    }
    return rows;
}

std::vector<VerifyRow> check_vabar_index(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    for (int s = 0; s <= 2; ++s) {
        if (o.level && *o.level != s) continue;
        OrderSpec ord(fp, ExtCase::Ramified, s);
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(s));
        Checker c("vabar-index", config_name(ord));
        for (int i = 0; i < std::max(1, o.samples / 4); ++i) {
            Quat g = smp.deep_ok_unit(ord);
            c.exact(v_abar(g, ord), ValueExt::finite(Rat(ord.index())));
        }
        rows.push_back(c.done());
    }
    return rows;
}

/* ---- haar invariants ---- */

std::vector<VerifyRow> check_telescoping(const VerifyOptions& o) {
    Checker c("telescoping", "Gamma/Omega volumes");
    Rat sum = 0;
    for (int n = 0; n <= 10; ++n) sum += vol_omega(n, o.q);
    c.exact(sum + vol_gamma(11, o.q), Rat(1));
    return {c.done()};
}

std::vector<VerifyRow> check_linearity(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (OrderSpec::Zeta z : {OrderSpec::Zeta::Delta, OrderSpec::Zeta::OnePlusDelta}) {
        OrderSpec ord(fp, ExtCase::Unramified, 1, z);
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("linearity", config_name(ord));
        MeasureSpace full = MeasureSpace::units_ok(ord);
        MeasureSpace fplus = MeasureSpace::units_ok(ord, MeasureSpace::Part::FPlusZeta);
        MeasureSpace comp = MeasureSpace::units_ok(ord, MeasureSpace::Part::Complement);
        for (int i = 0; i < std::max(1, o.samples / 4); ++i) {
            Quat g = smp.unit();
            c.exact(integrate(full, g, +1).value,
                    integrate(fplus, g, +1).value + integrate(comp, g, +1).value);
        }
        rows.push_back(c.done());
    }
    return rows;
}

std::vector<VerifyRow> check_refinement_stability(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (const OrderSpec& ord : config_grid(o, fp, 0, 1)) {
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("refinement-stability", config_name(ord));
        MeasureSpace space = MeasureSpace::units_ok(ord);
        for (int i = 0; i < std::max(1, o.samples / 4); ++i) {
            Quat g = smp.unit();
            IntegralResult r1 = integrate(space, g, +1);
            if (!r1.certified) {
                c.count();
                continue;
            }
            IntegralResult r2 = integrate(space, g, +1,
                                          std::min(default_depth_cap(space, g),
                                                   r1.level_used + 1));
            c.require(r2.certified && r2.value == r1.value,
                      "deeper cap changed a certified integral");
        }
        rows.push_back(c.done());
    }
    return rows;
}

/* ---- GL2 oracle ---- */

Quat sample_oracle_unit(Sampler& smp, const OrderSpec& ord, int max_r) {
    for (int tries = 0; tries < 500; ++tries) {
        Quat g = ord.ext() == ExtCase::Ramified ? smp.ok_plus_pi_od_unit(ord)
                                                : smp.unit();
        auto [plus, minus] = pm_decompose(g, ord);
        Valuation r = minus.v_d();
        if (r.resolved && r.value <= max_r) return g;
    }
    throw Error("could not sample an oracle-friendly unit");
}

std::vector<VerifyRow> check_gl2_vy(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (const OrderSpec& ord : config_grid(o, fp, 0, 2)) {
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("gl2-vy", config_name(ord));
        for (int i = 0; i < 3; ++i) {
            Quat g = sample_oracle_unit(smp, ord, 2);
            OracleResult r = gl2_oracle_vy(g, ord, o.gl2_level);
            c.exact(r.value, v_y(g, ord));
        }
        // divergence: normalizer elements escalate and report Infinite at cap
        Quat n = smp.normalizer_unit(ord);
        OracleResult r = gl2_oracle_vy(n, ord, o.gl2_level, 1);
        c.exact(r.value, ValueExt::infinite());
        rows.push_back(c.done());
    }
    return rows;
}

std::vector<VerifyRow> check_gl2_pairing(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<OrderSpec> orders;
    for (int s = 0; s <= 2; ++s) orders.emplace_back(fp, ExtCase::Unramified, s);
    for (int s = 0; s <= 2; ++s) orders.emplace_back(fp, ExtCase::Ramified, s);
    Checker c("gl2-pairing", "all pairs s <= 2");
    Sampler smp(fp, o.seed);
    for (const OrderSpec& o1 : orders)
        for (const OrderSpec& o2 : orders) {
            if (!(o1.v_d_mu() < o2.v_d_mu())) continue;
            Quat g0 = Quat::big_pi_pow(fp, o1.level() - o2.level());
            if (smp.digit() % 2 == 1) g0 = Quat::delta(fp) * g0;  // unit twist
            OracleResult r = gl2_oracle_pairing(o1, o2, g0, o.gl2_level);
            c.exact(r.value, intersection_pairing(o1, o2));
        }
    return {c.done()};
}

std::vector<VerifyRow> check_slres(const VerifyOptions& o) {
    FieldParams fp = params_of(o);
    std::vector<VerifyRow> rows;
    int idx = 0;
    for (const OrderSpec& ord : config_grid(o, fp, 0, 2)) {
        Sampler smp(fp, o.seed + 1000 * static_cast<std::uint64_t>(idx++));
        Checker c("slres", config_name(ord));
        int u = u_from_definition(ord);
        int level = std::max(o.gl2_level, u);
        Quat g = sample_oracle_unit(smp, ord, 2);
        Rat mu_diff = rat_pow(fp.q(), -(ord.mu_bar() - ord.mu()).v_d().value);
        Rat total = 0;
        for (int n = 0; n < u; ++n) {
            Rat slice = gl2_omega_slice_sum(g, ord, n, level);
            Rat expected = mu_diff * vol_omega(n, fp.q()) * rat_pow(fp.q(), 2 * n);
            c.exact(slice, expected);
            total += slice;
        }
        c.exact(total, ps_pd_decomposition(g, ord).p_s);
        rows.push_back(c.done());
    }
    return rows;
}

}  // namespace

const std::map<std::string, IdentityFn>& identity_registry() {
    static const std::map<std::string, IdentityFn> reg = {
        {"ultrametric", check_ultrametric},
        {"valuation", check_valuation},
        {"frobenius", check_frobenius},
        {"jinzhang", check_jinzhang},
        {"involution", check_involution},
        {"xiaozuo", check_xiaozuo},
        {"canojiu", check_canojiu},
        {"jiandu", check_jiandu},
        {"fendou", check_fendou},
        {"anna", check_anna},
        {"route-shallow", check_route_shallow},
        {"zhaonvyou", check_zhaonvyou},
        {"xingxing", check_xingxing},
        {"jieren", check_jieren},
        {"vabar-index", check_vabar_index},
        {"telescoping", check_telescoping},
        {"linearity", check_linearity},
        {"refinement-stability", check_refinement_stability},
        {"gl2-vy", check_gl2_vy},
        {"gl2-pairing", check_gl2_pairing},
        {"slres", check_slres},
    };
    return reg;
}

std::vector<VerifyRow> run_identity(const std::string& name, const VerifyOptions& opt) {
    auto it = identity_registry().find(name);
    if (it == identity_registry().end())
        throw ParseError("unknown identity '" + name + "'");
    return it->second(opt);
}

std::vector<VerifyRow> run_all_identities(const VerifyOptions& opt) {
    std::vector<VerifyRow> rows;
    for (auto& [name, fn] : identity_registry()) {
        auto r = fn(opt);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return rows;
}

}  // namespace liftcalc
