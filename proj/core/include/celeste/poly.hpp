#pragma once

#include "celeste/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace celeste {

// Dense univariate polynomial over Q in the formal variable m.
// Coefficient i multiplies m^i; no trailing zero coefficients are stored.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& constant);
    Poly(long constant) : Poly(Rational(constant)) {}
    explicit Poly(std::vector<Rational> coeffs);

    static Poly var(); // the polynomial m

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for zero
    Rational coeff(int i) const;
    const Rational& lead() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& r) const;
    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

    // Euclidean division; o must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& o) const;

    Poly monic() const;
    static Poly gcd(Poly a, Poly b); // monic normal form

    Rational eval(const Rational& x) const;

    // "4m+5", "m^2-2m+1", "(1/2)m", "0"
    std::string str() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

// Splits a nonzero polynomial into rational-root linear factors.
// Returns {(root, multiplicity)...} sorted ascending by root, plus the
// rootless remainder (constant when the input splits completely).
std::pair<std::vector<std::pair<Rational, int>>, Poly> factor_rational_roots(const Poly& p);

} // namespace celeste
