#pragma once

#include <string>
#include <vector>

#include "liftcalc/field.hpp"

namespace liftcalc {

/* A pi-adic valuation that may be unresolved: when resolved is false the
 * element vanishes to precision and the true valuation is >= value. */
struct Valuation {
    int value = 0;
    bool resolved = false;

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

/* Minimum of two valuations with sentinel semantics. */
Valuation val_min(Valuation a, Valuation b);

/* Truncated Laurent series sum_{e >= lo} digit(e) * pi^e with digits in
 * F_{q^2}, carried exactly for exponents in [lo, prec). Immutable value
 * semantics; every operation returns a fresh value with the correct
 * precision window. Digits at exponents >= prec are unknown, not zero.
 *
 * Invariant: either digits is empty and lo == prec (zero to precision),
 * or digits.front() != 0 and lo + digits.size() == prec.
 */
class Series {
public:
    explicit Series(const FieldParams& fp);  // zero at default precision

    static Series zero(const FieldParams& fp, int prec);
    static Series one(const FieldParams& fp);
    static Series from_int(const FieldParams& fp, std::int64_t v);
    static Series delta(const FieldParams& fp);              // j
    static Series pi_pow(const FieldParams& fp, int k);      // pi^k
    static Series monomial(const FieldParams& fp, QuadExt coeff, int e);
    static Series from_digits(const FieldParams& fp, int lo,
                              std::vector<QuadExt> digits, int prec);

    const FieldParams& fp() const { return fp_; }
    int precision() const { return prec_; }
    bool is_zero() const { return digits_.empty(); }

    /* Digit at exponent e; exact for e < precision (zero below lo). */
    QuadExt digit(int e) const;

    Valuation val() const {
        return digits_.empty() ? Valuation{prec_, false} : Valuation{lo_, true};
    }

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);

    Series inv() const;                 // throws InversionOfZero
    Series frobenius() const;           // digit-wise conjugation
    Series shifted(int k) const;        // multiply by pi^k
    Series truncated(int prec) const;   // weaken precision to min(prec, current)
    /* Zero out digits at exponents >= e, keeping the precision window:
     * rounds an exact representative to its ball-defining digits. */
    Series dropped_above(int e) const;

    /* True when the series is F-rational (all digits in the prime field). */
    bool f_rational() const;

    /* Digit-wise equality below the smaller precision window. */
    friend bool same_to_precision(const Series& a, const Series& b);
    friend bool operator==(const Series& a, const Series& b) {
        return same_to_precision(a, b);
    }

    std::string str() const;  // literal form "shift:c+d*j,..."

private:
    Series(const FieldParams& fp, int lo, std::vector<QuadExt> digits, int prec);
    void normalize();

    FieldParams fp_;
    int lo_;
    std::vector<QuadExt> digits_;
    int prec_;
};

/* Literal grammar: "shift:t0,t1,..." with term "c" or "c+d*j", meaning
 * sum_i (c_i + d_i j) pi^(shift+i); coefficients are decimal integers
 * reduced mod q. Example: "0:1+0*j,0+1*j" is 1 + j*pi. */
Series parse_series(const FieldParams& fp, const std::string& text);
std::string format_series(const Series& x);

}  // namespace liftcalc
