#pragma once

#include "celeste/lattice.hpp"
#include "celeste/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace celeste {

// A cone is the sorted list of its ray indices in the owning fan.
using ConeKey = std::vector<int>;

// Raw fan data as read from input, before normalization. Flags, when
// declared, are cross-checked by validate_fan.
struct FanInput {
    int rank = 0;
    std::vector<Vec> rays;
    std::vector<ConeKey> cones; // maximal cones
    std::optional<bool> declared_smooth;
    std::optional<bool> declared_complete;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
    std::string str() const;
};

// Checks rank bounds, ray primitivity, simpliciality, the face property
// (pairwise intersections of cones are faces: disjoint relative interiors),
// and declared-flag consistency. Never throws.
ValidationReport validate_fan(const FanInput& input);

class Fan;
using FanPtr = std::shared_ptr<const Fan>;

// Simplicial fan of rank 1..3. Immutable after construction; rays sorted
// lexicographically, cones stored as sorted ray-index lists.
class Fan {
public:
    // Normalizes and validates; throws ValidationError with the report text
    // when the input is not a well-formed simplicial fan.
    static FanPtr make(FanInput input);

    int rank() const { return rank_; }
    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<ConeKey>& max_cones() const { return max_cones_; }
    // All cones (face closure), sorted by dimension then lexicographically.
    // Includes the zero cone {}.
    const std::vector<ConeKey>& cones() const { return cones_; }

    bool smooth() const { return smooth_; }
    bool complete() const { return complete_; }

    bool has_cone(const ConeKey& c) const { return cone_set_.count(c) > 0; }
    int ray_index(const Vec& ray) const; // -1 when absent
    std::string cone_str(const ConeKey& c) const; // "V((1,0),(0,1))"

    bool operator==(const Fan& o) const {
        return rank_ == o.rank_ && rays_ == o.rays_ && max_cones_ == o.max_cones_;
    }

private:
    friend struct FanAccess;
    int rank_ = 0;
    std::vector<Vec> rays_;
    std::vector<ConeKey> max_cones_;
    std::vector<ConeKey> cones_;
    std::set<ConeKey> cone_set_;
    bool smooth_ = false;
    bool complete_ = false;
};

inline bool same_model(const FanPtr& a, const FanPtr& b) {
    return a == b || (a && b && *a == *b);
}

// One toric blow-up step. Records both fans so that transport along the step
// is self-contained; target_rays is the minimal cone of `before` containing
// new_ray in its relative interior, and coords the barycentric coefficients
// with respect to it.
struct StarSubdivision {
    Vec new_ray;
    std::vector<Vec> target_rays;
    std::vector<Rational> coords;
    FanPtr before;
    FanPtr after;

    // (sum of coords) - 1; > -1 for simplicial targets.
    Rational discrepancy() const;
};

// --- fan operations ------------------------------------------------------

// True iff the cone's rays extend to a lattice basis. Errors: UnknownCone.
bool is_smooth_cone(const Fan& fan, const ConeKey& cone);

// Minimal cone containing v and the coefficients of v over its rays
// (all strictly positive). Errors: OutsideSupport.
std::pair<ConeKey, std::vector<Rational>> barycentric_coords(const Fan& fan, const Vec& v);

bool support_contains(const Fan& fan, const Vec& v);

// Star subdivision at primitive v. Errors: RayExists, OutsideSupport.
std::pair<FanPtr, StarSubdivision> star_subdivide(const FanPtr& fan, const Vec& v);

// chi of the orbit closure V(cone) = number of maximal cones containing it.
// Errors: UnknownCone; NotComplete when V(cone) is not compact.
long long orbit_euler(const Fan& fan, const ConeKey& cone);

// True iff V(cone) is compact (the star is complete in the quotient).
bool orbit_closure_complete(const Fan& fan, const ConeKey& cone);

// Smallest cone of `fan` containing every vector of `vs` (vectors must lie in
// the support). Returns nullopt if the spanned set is not a cone of the fan.
std::optional<ConeKey> minimal_cone_containing(const Fan& fan, const std::vector<Vec>& vs);

} // namespace celeste
