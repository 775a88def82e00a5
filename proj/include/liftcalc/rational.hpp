#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>

#include "liftcalc/errors.hpp"

namespace liftcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/* q^e as an exact rational, e may be negative. */
inline Rat rat_pow(std::int64_t base, std::int64_t e) {
    Int p = 1;
    for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) p *= base;
    return e < 0 ? Rat(1, p) : Rat(p);
}

inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;  // "num/den" in lowest terms, "num" when den == 1
    return os.str();
}

/* Extended value: an exact non-negative rational, Infinite, or
 * InsufficientPrecision. Arithmetic is absorbing: Infinite dominates
 * (all quantities here are non-negative), InsufficientPrecision
 * dominates everything finite. */
class ValueExt {
public:
    enum class Kind { Finite, Infinite, InsufficientPrecision };

    ValueExt() : kind_(Kind::Finite), value_(0) {}

    static ValueExt finite(Rat v) {
        ValueExt x;
        x.kind_ = Kind::Finite;
        x.value_ = std::move(v);
        return x;
    }
    static ValueExt infinite() {
        ValueExt x;
        x.kind_ = Kind::Infinite;
        return x;
    }
    static ValueExt insufficient() {
        ValueExt x;
        x.kind_ = Kind::InsufficientPrecision;
        return x;
    }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_insufficient() const { return kind_ == Kind::InsufficientPrecision; }

    const Rat& value() const {
        if (kind_ != Kind::Finite) throw Error("ValueExt: not a finite value");
        return value_;
    }

    friend ValueExt operator+(const ValueExt& a, const ValueExt& b) {
        if (a.is_infinite() || b.is_infinite()) return infinite();
        if (a.is_insufficient() || b.is_insufficient()) return insufficient();
        return finite(a.value_ + b.value_);
    }

    /* Scale by a positive exact rational. */
    friend ValueExt operator*(const Rat& c, const ValueExt& v) {
        if (!v.is_finite()) return v;
        return finite(c * v.value_);
    }

    friend bool operator==(const ValueExt& a, const ValueExt& b) {
        if (a.kind_ != b.kind_) return false;
        return a.kind_ != Kind::Finite || a.value_ == b.value_;
    }
    friend bool operator!=(const ValueExt& a, const ValueExt& b) { return !(a == b); }

    std::string str() const {
        switch (kind_) {
            case Kind::Infinite: return "Infinite";
            case Kind::InsufficientPrecision: return "InsufficientPrecision";
            default: return rat_str(value_);
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const ValueExt& v) {
        return os << v.str();
    }

private:
    Kind kind_;
    Rat value_;
};

}  // namespace liftcalc
