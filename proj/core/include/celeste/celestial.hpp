#pragma once

#include "celeste/chow.hpp"
#include "celeste/models.hpp"

#include <string>
#include <vector>

namespace celeste {

// Compatible manifestations of one integral at every tower level; the
// defining invariant is pushforward(level k+1) == level k, exactly.
struct CelestialClass {
    ResolutionTower tower;
    std::vector<ChowClass> manifestations; // index = level

    const ChowClass& at(int level) const { return manifestations[static_cast<size_t>(level)]; }
    const ChowClass& identity() const { return manifestations.front(); }
    void verify_compatibility() const; // ValidationError on violation
};

struct ReportLine {
    std::string label;
    std::string lhs;
    std::string rhs;
    bool pass = false;
    std::string note;
};

struct Report {
    std::string title;
    std::vector<ReportLine> lines;

    bool pass() const;
    std::string str() const; // "check: ..." block with one PASS/FAIL per line
};

// The class c(Omega(log E)^dual) cap sum over I subset J (I meeting J_S,
// vacuous for ambient S) of [cap E_i] / prod (1+m_i), in normal form.
// Errors: NonToricAtom when a strict transform is present, NotComplete.
ChowClass evaluate_manifestation(const ResolvedData& rd);

// Verbose variant: appends one line per contributing cone to `trace`.
ChowClass evaluate_manifestation(const ResolvedData& rd, std::vector<std::string>* trace);

// Evaluates at the top level and fills every lower level by pushforward;
// the compatibility invariant is re-verified before returning.
CelestialClass integrate(const ResolutionTower& tower, const SystemDivisor& D, const ConstructibleSet& S);

// Theorem check: the level-i manifestation computed directly equals the
// pushforward of the level-j evaluation of D + K_{i->j}. Toric complete data
// is compared as Chow classes; all data is additionally compared through the
// fixed-point local values of level i.
Report check_change_of_variables(const ResolutionTower& tower, const SystemDivisor& D,
                                 const ConstructibleSet& S, int i, int j);

// deg of the integral over S cap p: the chi-weighted stratum sum over the
// fiber of the fixed point p. Errors: EmptyFiber, NonConvergent.
// Pass `trace` for a stratum-by-stratum breakdown.
Scalar local_value(const ResolutionTower& tower, const SystemDivisor& D, const ConstructibleSet& S,
                   const ConeKey& p, std::vector<std::string>* trace = nullptr);

// Asserts integrate(D, S1 u S2) = integrate(D, S1) + integrate(D, S2)
// manifestation-wise. Errors: NotDisjoint when the supports meet.
Report additivity_check(const ResolutionTower& tower, const SystemDivisor& D,
                        const ConstructibleSet& S1, const ConstructibleSet& S2);

} // namespace celeste
