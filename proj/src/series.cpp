#include "liftcalc/series.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

namespace liftcalc {

Valuation val_min(Valuation a, Valuation b) {
    if (a.resolved && b.resolved) return {std::min(a.value, b.value), true};
    if (a.resolved) return a.value < b.value ? a : Valuation{std::min(a.value, b.value), false};
    if (b.resolved) return b.value < a.value ? b : Valuation{std::min(a.value, b.value), false};
    return {std::min(a.value, b.value), false};
}

Series::Series(const FieldParams& fp) : fp_(fp), lo_(fp.precision()), prec_(fp.precision()) {}

Series::Series(const FieldParams& fp, int lo, std::vector<QuadExt> digits, int prec)
    : fp_(fp), lo_(lo), digits_(std::move(digits)), prec_(prec) {
    normalize();
}

void Series::normalize() {
    // clip to the window [lo, prec)
    if (lo_ + static_cast<int>(digits_.size()) > prec_)
        digits_.resize(prec_ > lo_ ? prec_ - lo_ : 0);
    // strip leading zeros (they are known-zero digits, the window shrinks from below)
    std::size_t k = 0;
    while (k < digits_.size() && digits_[k].is_zero()) ++k;
    if (k == digits_.size()) {
        digits_.clear();
        lo_ = prec_;
        return;
    }
    if (k > 0) {
        digits_.erase(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(k));
        lo_ += static_cast<int>(k);
    }
    // pad known zeros up to prec so the window is contiguous
    digits_.resize(prec_ - lo_);
}

Series Series::zero(const FieldParams& fp, int prec) {
    Series s(fp);
    s.lo_ = prec;
    s.prec_ = prec;
    return s;
}

Series Series::one(const FieldParams& fp) { return from_int(fp, 1); }

Series Series::from_int(const FieldParams& fp, std::int64_t v) {
    return monomial(fp, fp.from_int(v), 0);
}

Series Series::delta(const FieldParams& fp) { return monomial(fp, QuadExt{0, 1}, 0); }

Series Series::pi_pow(const FieldParams& fp, int k) {
    return monomial(fp, QuadExt{1, 0}, k);
}

Series Series::monomial(const FieldParams& fp, QuadExt coeff, int e) {
    if (coeff.is_zero()) return zero(fp, fp.precision());
    return Series(fp, e, {coeff}, e + fp.precision());
}

Series Series::from_digits(const FieldParams& fp, int lo, std::vector<QuadExt> digits,
                           int prec) {
    return Series(fp, lo, std::move(digits), prec);
}

QuadExt Series::digit(int e) const {
    assert(e < prec_ && "digit beyond precision window");
    if (e < lo_ || e >= lo_ + static_cast<int>(digits_.size())) return {};
    return digits_[static_cast<std::size_t>(e - lo_)];
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& d : r.digits_) d = fp_.neg(d);
    return r;
}

Series operator+(const Series& a, const Series& b) {
    assert(a.fp_.same_field(b.fp_));
    int prec = std::min(a.prec_, b.prec_);
    int lo = std::min({a.val().value, b.val().value, prec});
    std::vector<QuadExt> digits(static_cast<std::size_t>(prec - lo));
    for (int e = lo; e < prec; ++e)
        digits[static_cast<std::size_t>(e - lo)] = a.fp_.add(a.digit(e), b.digit(e));
    return Series(a.fp_, lo, std::move(digits), prec);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    assert(a.fp_.same_field(b.fp_));
    const FieldParams& fp = a.fp_;
    // x known on [va, pa), y on [vb, pb): product digits exact on [va+vb, min(pa+vb, pb+va))
    int va = a.val().value, vb = b.val().value;
    int prec = std::min(a.prec_ + vb, b.prec_ + va);
    if (a.is_zero() || b.is_zero()) return Series::zero(fp, prec);
    int lo = va + vb;
    std::vector<QuadExt> digits(static_cast<std::size_t>(prec - lo));
    int na = a.prec_ - va, nb = b.prec_ - vb;
    for (int i = 0; i < na; ++i) {
        QuadExt ai = a.digit(va + i);
        if (ai.is_zero()) continue;
        for (int j = 0; j < nb && i + j < prec - lo; ++j) {
            QuadExt bj = b.digit(vb + j);
            if (bj.is_zero()) continue;
            auto& out = digits[static_cast<std::size_t>(i + j)];
            out = fp.add(out, fp.mul(ai, bj));
        }
    }
    return Series(fp, lo, std::move(digits), prec);
}

Series Series::inv() const {
    if (is_zero()) throw InversionOfZero();
    const int v = lo_;
    const int n = prec_ - lo_;  // unit-part digit count
    // invert the unit part u = sum u_k pi^k by the digit recursion
    std::vector<QuadExt> inv(static_cast<std::size_t>(n));
    QuadExt u0i = fp_.inv(digits_[0]);
    inv[0] = u0i;
    for (int k = 1; k < n; ++k) {
        QuadExt acc{};
        for (int j = 1; j <= k; ++j)
            acc = fp_.add(acc, fp_.mul(digits_[static_cast<std::size_t>(j)],
                                       inv[static_cast<std::size_t>(k - j)]));
        inv[static_cast<std::size_t>(k)] = fp_.neg(fp_.mul(u0i, acc));
    }
    return Series(fp_, -v, std::move(inv), -v + n);
}

Series Series::frobenius() const {
    Series r = *this;
    for (auto& d : r.digits_) d = fp_.conj(d);
    return r;
}

Series Series::shifted(int k) const {
    Series r = *this;
    r.lo_ += k;
    r.prec_ += k;
    return r;
}

Series Series::truncated(int prec) const {
    if (prec >= prec_) return *this;
    Series r = *this;
    r.prec_ = prec;
    r.normalize();
    if (r.lo_ > r.prec_) r.lo_ = r.prec_;
    return r;
}

Series Series::dropped_above(int e) const {
    Series r = *this;
    for (int i = std::max(e, r.lo_); i < r.lo_ + static_cast<int>(r.digits_.size()); ++i)
        r.digits_[static_cast<std::size_t>(i - r.lo_)] = QuadExt{};
    r.normalize();
    return r;
}

bool Series::f_rational() const {
    return std::all_of(digits_.begin(), digits_.end(),
                       [](QuadExt d) { return d.d == 0; });
}

bool same_to_precision(const Series& a, const Series& b) {
    int prec = std::min(a.prec_, b.prec_);
    int lo = std::min({a.val().value, b.val().value, prec});
    for (int e = lo; e < prec; ++e)
        if (!(a.digit(e) == b.digit(e))) return false;
    return true;
}

std::string Series::str() const { return format_series(*this); }

std::string format_series(const Series& x) {
    if (x.is_zero()) return "0:0+0*j";
    std::ostringstream os;
    auto v = x.val();
    int hi = x.precision();
    while (hi > v.value + 1 && x.digit(hi - 1).is_zero()) --hi;  // trim trailing zeros
    os << v.value << ":";
    for (int e = v.value; e < hi; ++e) {
        if (e > v.value) os << ",";
        os << quadext_str(x.fp(), x.digit(e));
    }
    return os.str();
}

namespace {

std::uint32_t parse_coeff(const FieldParams& fp, const std::string& tok) {
    if (tok.empty()) throw ParseError("empty coefficient in series literal");
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad coefficient '" + tok + "' in series literal");
    }
    if (pos != tok.size()) throw ParseError("bad coefficient '" + tok + "' in series literal");
    return fp.from_int(v).c;
}

QuadExt parse_term(const FieldParams& fp, const std::string& term) {
    // "c" or "c+d*j"
    std::size_t star = term.find("*j");
    if (star == std::string::npos) {
        if (term.find('j') != std::string::npos)
            throw ParseError("bad term '" + term + "': expected c or c+d*j");
        return {parse_coeff(fp, term), 0};
    }
    if (star + 2 != term.size())
        throw ParseError("bad term '" + term + "': trailing characters after *j");
    std::size_t plus = term.rfind('+', star);
    if (plus == std::string::npos || plus == 0)
        throw ParseError("bad term '" + term + "': expected c+d*j");
    QuadExt out;
    out.c = parse_coeff(fp, term.substr(0, plus));
    out.d = parse_coeff(fp, term.substr(plus + 1, star - plus - 1));
    return out;
}

}  // namespace

Series parse_series(const FieldParams& fp, const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("series literal must be 'shift:term,term,...'");
    int shift = 0;
    try {
        std::size_t pos = 0;
        shift = std::stoi(text.substr(0, colon), &pos);
        if (pos != colon) throw ParseError("bad shift");
    } catch (const std::exception&) {
        throw ParseError("bad shift in series literal '" + text + "'");
    }
    std::vector<QuadExt> digits;
    std::string rest = text.substr(colon + 1);
    if (rest.empty()) throw ParseError("series literal has no terms");
    std::size_t start = 0;
    while (true) {
        std::size_t comma = rest.find(',', start);
        std::string term = rest.substr(start, comma == std::string::npos
                                                  ? std::string::npos
                                                  : comma - start);
        digits.push_back(parse_term(fp, term));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    int prec = std::max(fp.precision(), shift + static_cast<int>(digits.size()));
    return Series::from_digits(fp, shift, std::move(digits), prec);
}

}  // namespace liftcalc
