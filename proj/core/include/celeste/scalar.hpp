#pragma once

#include "celeste/poly.hpp"

#include <string>

namespace celeste {

// Element of the rational-function field Q(m). Canonical form: numerator and
// denominator coprime, denominator monic, zero stored as 0/1. All engine
// coefficients, integrals and zeta values live in this field; there is no
// floating point anywhere.
class Scalar {
public:
    Scalar() : num_(), den_(Rational(1)) {}
    Scalar(long v) : num_(v), den_(Rational(1)) {}
    Scalar(const Rational& v) : num_(v), den_(Rational(1)) {}
    Scalar(const Poly& p) : num_(p), den_(Rational(1)) {}

    static Scalar var(); // the scalar m
    static Scalar ratio(const Poly& num, const Poly& den); // den != 0

    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return den_.degree() == 0 && num_.degree() <= 0; }
    bool is_polynomial() const { return den_.degree() == 0; }
    Rational as_rational() const; // requires is_rational()
    Poly as_polynomial() const;   // requires is_polynomial()

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // o != 0
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Rational eval(const Rational& x) const; // x must not be a pole

    // Reduced display with the denominator in factored form:
    // "3", "-1/2", "2m+2", "1/(m+1)", "(4m+5)/((m+1)(6m+5))", "1/(m+1)^2".
    std::string str() const;

private:
    Scalar(Poly n, Poly d, bool) : num_(std::move(n)), den_(std::move(d)) {}
    void normalize();
    Poly num_;
    Poly den_;
};

// Parses an m-linear coefficient: "3", "-1/2", "m", "2m", "(1/2)m", "2m+1",
// "3-m", "1/2*m". Returns false on malformed input.
bool parse_linear_scalar(const std::string& text, Scalar& out);

} // namespace celeste
