#pragma once

#include "celeste/celestial.hpp"

#include <string>
#include <utility>
#include <vector>

namespace celeste {

// Rational function of m with its candidate-pole list (roots of the reduced
// denominator, ascending, with multiplicities).
struct ZetaFunction {
    Scalar value;
    std::vector<std::pair<Rational, int>> poles;

    // "Z(m) = (4m+5)/((m+1)(6m+5)); poles: [-1 (mult 1), -5/6 (mult 1)]"
    std::string str() const;
};

ZetaFunction make_zeta(const Scalar& value); // factors the denominator

// deg of the identity manifestation of the integral of m*D over the whole
// system. Base must be smooth and complete.
ZetaFunction zeta_global(const ResolutionTower& tower, const SystemDivisor& D);

// Local topological zeta of a plane-curve germ at the fixed point p of the
// affine base: local value of the integral of m*div(f) over the system.
ZetaFunction zeta_local(const ResolutionTower& tower, const NewtonPolygon& germ, const ConeKey& p);

// Identity manifestation of the integral of 0 over the whole system of a
// (possibly singular) log-terminal base, with its degree.
struct StringyClass {
    ChowClass cls;      // lives on the base; spanning-set coefficients
    Rational euler;     // stringy Euler number

    std::string str() const;
};

// Errors: NonConvergent when some discrepancy is <= -1 (not log terminal),
// NotSmooth when the top level is singular.
StringyClass stringy_chern(const ResolutionTower& tower);

// CSM class of a union of invariant closed strata (each given by the cone of
// its orbit closure; the empty cone means the whole variety):
// sum of [V(gamma)] over all cones gamma containing a stratum cone.
ChowClass csm_class(const FanPtr& model, const std::vector<ConeKey>& strata);

// Exact intersection numbers c_1^i . c_{n-i} for i = 0..n.
std::vector<Scalar> chern_numbers(const FanPtr& model);

} // namespace celeste
