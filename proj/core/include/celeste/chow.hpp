#pragma once

#include "celeste/fan.hpp"
#include "celeste/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace celeste {

// Mixed-degree cycle class on a toric model, written in the cone-class
// spanning set: terms maps a cone sigma to the coefficient of [V(sigma)].
// Scalars live in Q(m). Ring operations require a smooth model; classes on
// singular (simplicial) models occur only as pushforward targets.
struct ChowClass {
    FanPtr model;
    std::map<ConeKey, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    Scalar coeff(const ConeKey& c) const;
    void add_term(const ConeKey& c, const Scalar& s); // drops zeros

    ChowClass& operator+=(const ChowClass& o); // same model
    ChowClass operator+(const ChowClass& o) const;
    ChowClass operator-(const ChowClass& o) const;
    ChowClass operator*(const Scalar& s) const;
};

// [V(cone)] with coefficient 1. Errors: UnknownCone.
ChowClass cycle_class(const FanPtr& model, const ConeKey& cone);

// Product in the Chow ring, in squarefree cone-class normal form.
// Errors: ModelMismatch, NotSmooth.
ChowClass multiply(const ChowClass& a, const ChowClass& b);

// Sum of point-class coefficients. Errors: NonProperDegree when a nonzero
// coefficient sits on a non-compact orbit closure of a non-complete model.
Scalar degree(const ChowClass& a);

// Poincare-duality equality test on a smooth complete model.
// Errors: ModelMismatch, NotSmooth, NotComplete.
bool chow_equal(const ChowClass& a, const ChowClass& b);

// c(TX) cap [X] = prod_rho (1 + [D_rho]). Errors: NotSmooth, NotComplete.
ChowClass total_chern(const FanPtr& model);

// c(Omega(log E)^dual) cap [X] = c(TX) / prod_j (1 + E_j) for prime invariant
// divisors E_j given by their rays. Errors: NotSmooth, NotSNC.
ChowClass log_chern(const FanPtr& model, const std::vector<Vec>& atom_rays);

// Proper pushforward along one star subdivision: [V(sigma')] maps to
// [V(sigma)] for sigma the smallest pre-subdivision cone containing sigma'
// when dimensions agree, else to zero. Errors: ModelMismatch.
ChowClass pushforward(const StarSubdivision& sub, const ChowClass& a);

// Piecewise-linear pullback of an invariant Q-divisor (map ray -> coeff).
// Errors: ModelMismatch.
std::map<Vec, Scalar> pullback_divisor(const StarSubdivision& sub, const std::map<Vec, Scalar>& divisor);

// Serialization: one line per term, "codim k: coeff * [V(...)]", sorted by
// codimension then cone. The zero class prints "0".
std::string to_text(const ChowClass& a);

} // namespace celeste
