#pragma once

#include <stdexcept>
#include <string>

namespace liftcalc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Inversion of an element that is zero to working precision. */
struct InversionOfZero : Error {
    InversionOfZero() : Error("inversion of zero (to precision)") {}
};

/* Operation requested for the wrong extension case (e.g. sigma_element
 * on an unramified order). */
struct WrongCase : Error {
    explicit WrongCase(const std::string& what) : Error(what) {}
};

/* shallow_closed_form called on a deep automorphism. */
struct NotShallow : Error {
    NotShallow() : Error("closed form requires a shallow automorphism") {}
};

/* Input outside the stated hypotheses of the formula being evaluated. */
struct Unsupported : Error {
    explicit Unsupported(const std::string& what) : Error(what) {}
};

/* Enumeration would exceed the configured budget. */
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

/* A comparison or minimum could not be resolved strictly below the
 * working precision. */
struct InsufficientPrecisionError : Error {
    explicit InsufficientPrecisionError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace liftcalc
