#pragma once

// Homogeneous binary forms f(x, y) over Q.
// Coefficient of x^(degree-t) y^t is stored at index t.

#include <optional>
#include <string>
#include <vector>

#include "nilpencil/rational.hpp"

namespace nilpencil {

struct BinaryForm {
    int degree = 0;
    std::vector<Rat> coeffs;  // size degree + 1

    BinaryForm() : coeffs{Rat(0)} {}
    BinaryForm(int deg, std::vector<Rat> c);

    static BinaryForm zero() { return BinaryForm(); }
    static BinaryForm constant(const Rat& v) { return BinaryForm(0, {v}); }
    static BinaryForm x() { return BinaryForm(1, {Rat(1), Rat(0)}); }
    static BinaryForm y() { return BinaryForm(1, {Rat(0), Rat(1)}); }
    /// x + a*y
    static BinaryForm linear(const Rat& a) { return BinaryForm(1, {Rat(1), a}); }
    /// x^2 + 2*mu*x*y + (mu^2 + nu2)*y^2, the real-irreducible quadratic with
    /// roots -mu +- i*sqrt(nu2)
    static BinaryForm quadratic(const Rat& mu, const Rat& nu2);

    bool is_zero() const;
    /// Index of the first nonzero coefficient, or -1 for the zero form.
    int leading_index() const;

    std::string str() const;  // human-readable, e.g. "x^2 + 2xy + y^2"
};

bool operator==(const BinaryForm& a, const BinaryForm& b);
BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
BinaryForm operator*(const Rat& c, const BinaryForm& a);
BinaryForm form_pow(const BinaryForm& a, int e);

Rat form_eval(const BinaryForm& f, const Rat& x0, const Rat& y0);

/// Divides by the coefficient of the highest power of x (first nonzero
/// coefficient); pure powers of y get leading coefficient 1 in y.
BinaryForm form_normalize(const BinaryForm& f);

/// Exact quotient, or nullopt when g does not divide f (or g = 0).
std::optional<BinaryForm> form_divide_exact(const BinaryForm& f, const BinaryForm& g);

/// Monic-normalized GCD; gcd(f, 0) = normalized f, gcd(0, 0) = 0.
BinaryForm gcd_forms(const BinaryForm& a, const BinaryForm& b);

enum class FactorMode { Exact, Numeric };

struct FormFactor {
    BinaryForm factor;
    int multiplicity = 0;
};

struct Factorization {
    Rat scale;  // scale * product(factor^multiplicity) = f
    std::vector<FormFactor> factors;
};

/// Splits f into normalized factors: y, x + a*y, or x^2 + 2*mu*xy +
/// (mu^2+nu^2)*y^2. Exact mode requires rational a, mu, nu^2 and throws
/// UnsupportedError otherwise; numeric mode clusters floating roots within tol.
Factorization factor_form(const BinaryForm& f, FactorMode mode = FactorMode::Exact,
                          double tol = 1e-9);

}  // namespace nilpencil
