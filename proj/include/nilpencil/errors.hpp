#pragma once

#include <stdexcept>
#include <string>

namespace nilpencil {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact-mode factorization hit an irrational root; retry with Mode::Numeric.
struct UnsupportedError : Error {
    using Error::Error;
};

// J1, J2 linearly dependent: not a type-(2,q) algebra.
struct DegenerateError : Error {
    using Error::Error;
};

struct SpecInvalidError : Error {
    using Error::Error;
};

struct NotNiceError : Error {
    using Error::Error;
};

struct WrongCaseError : Error {
    using Error::Error;
};

struct MetricInvalidError : Error {
    using Error::Error;
};

struct ConditionHoldsError : Error {
    using Error::Error;
};

struct NotConvergedError : Error {
    using Error::Error;
};

struct BadDimensionsError : Error {
    using Error::Error;
};

struct NonDiagonalTorusError : Error {
    using Error::Error;
};

struct FullTypeError : Error {
    using Error::Error;
};

struct NotCertifiedError : Error {
    using Error::Error;
};

// A structural guarantee failed (e.g. odd elementary-divisor multiplicity).
struct InternalError : Error {
    using Error::Error;
};

}  // namespace nilpencil
