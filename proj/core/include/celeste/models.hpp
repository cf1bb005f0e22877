#pragma once

#include "celeste/chow.hpp"
#include "celeste/fan.hpp"
#include "celeste/scalar.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace celeste {

// Monomial support of a plane-curve germ. Rank 2 only; the derived Newton
// boundary drives multiplicities and strict-transform incidence.
struct NewtonPolygon {
    std::vector<Vec> exponents; // sorted, deduplicated, componentwise >= 0

    static NewtonPolygon make(std::vector<Vec> pts); // ValidationError on bad input

    // Vertices of the Newton boundary (lower-left hull), sorted by x.
    std::vector<Vec> vertices() const;
    // Primitive inner normals of the compact edges of the boundary.
    std::vector<Vec> facet_normals() const;
    // Single vertex <=> monomial germ <=> empty strict transform.
    bool trivial() const { return vertices().size() <= 1; }
};

// N = min_e <v,e> (multiplicity along E_v), face_length = lattice length of
// the face attaining the minimum (0 when that face is a vertex).
std::pair<long long, long long> newton_data(const NewtonPolygon& p, const Vec& v);

// Prime building block of divisors and constructible sets of a tower.
struct Atom {
    enum class Kind { boundary, germ, ambient };
    Kind kind = Kind::boundary;
    Vec ray;                    // boundary only
    std::string germ_name;      // germ only
    NewtonPolygon polygon;      // germ only
    bool nondegenerate = false; // germ only

    static Atom boundary(Vec ray);
    static Atom germ(std::string name, NewtonPolygon polygon, bool nondegenerate = true);
    static Atom ambient();

    bool operator<(const Atom& o) const;
    bool operator==(const Atom& o) const;
    std::string str() const; // "ray:(1,1)", "germ:cusp", "ambient"
};

// Finite rational (or m-linear) combination of atoms. Never contains the
// ambient atom.
struct SystemDivisor {
    std::map<Atom, Scalar> terms;

    void add(const Atom& atom, const Scalar& coeff);
    bool has_germ() const;
};

// Finite union of atom supports; {ambient} means the whole system.
struct ConstructibleSet {
    std::set<Atom> atoms;

    static ConstructibleSet ambient();
    static ConstructibleSet of(std::vector<Atom> list); // ValidationError on empty
    bool is_ambient() const;
    bool has_germ() const;
};

// Base fan plus an ordered chain of star subdivisions; level 0 is the base.
class ResolutionTower {
public:
    explicit ResolutionTower(FanPtr base);

    ResolutionTower extended(const Vec& v) const; // appends one subdivision
    int top() const { return static_cast<int>(levels_.size()) - 1; }
    const FanPtr& fan(int level) const;
    const StarSubdivision& step(int i) const; // step i maps level i+1 -> level i
    // First level whose fan contains the ray; -1 when absent everywhere.
    int creation_level(const Vec& ray) const;

    // Discrepancy of a top-level ray over the given level: sum of barycentric
    // coordinates over the minimal level-`level` cone containing it, minus 1.
    // Zero for rays already present at that level.
    Rational discrepancy_over(int level, const Vec& ray) const;

    // Piecewise-linear pullback multiplicity of the prime divisor `atom_ray`
    // (taken at its creation level) at the ray `at` of a later level.
    Rational pullback_multiplicity(const Vec& atom_ray, const Vec& at) const;

private:
    std::vector<FanPtr> levels_;
    std::vector<StarSubdivision> steps_;
};

// Discrepancies over level i of the rays created in levels (i, j].
std::map<Vec, Rational> relative_canonical(const ResolutionTower& tower, int i, int j);

// One resolved component: an atom at the evaluation level with its
// coefficient m in D + K and its S-membership.
struct ResolvedComponent {
    Atom atom;
    Scalar m;
    bool in_S = false;
};

// Normal-crossing data (J, J_S, m_j) of (D, S) on a tower level, with
// discrepancies taken over `base_level`.
struct ResolvedData {
    ResolutionTower tower;
    int base_level = 0;
    int level = 0; // evaluation level
    std::vector<ResolvedComponent> comps;
    bool ambient_S = false;

    const FanPtr& fan() const { return tower.fan(level); }
    bool has_germ_component() const;
};

// Checks that the tower resolves (D, S) at its top level and assembles the
// resolved data. Errors: NotSmooth, NotResolved, NotSNC, NonConvergent.
ResolvedData resolve(const ResolutionTower& tower, const SystemDivisor& D, const ConstructibleSet& S);

// General form: discrepancies over `base_level`, data assembled at
// `eval_level`; `forced_atom_rays` are included in J regardless of their
// coefficient (used by the stringy evaluation, which lists every
// exceptional ray).
ResolvedData resolve_at(const ResolutionTower& tower, const SystemDivisor& D, const ConstructibleSet& S,
                        int base_level, int eval_level,
                        const std::vector<Vec>& forced_atom_rays = {});

// Atoms of S over the torus-fixed point p (a maximal cone of the base-level
// fan): the exceptional prime divisors of the top level interior to p's cone
// that lie in the pullback of S. Errors: EmptyFiber, UnknownCone.
ConstructibleSet restrict_to_point(const ResolutionTower& tower, const ConstructibleSet& S,
                                   const ConeKey& p, int base_level = 0);

} // namespace celeste
