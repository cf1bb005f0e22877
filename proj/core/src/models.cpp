#include "celeste/models.hpp"

#include "celeste/errors.hpp"

#include <algorithm>

namespace celeste {

// ------------------------------------------------------------- NewtonPolygon

NewtonPolygon NewtonPolygon::make(std::vector<Vec> pts) {
    if (pts.empty()) fail(errc::validation_error, "empty Newton polygon");
    for (const auto& p : pts) {
        if (p.size() != 2) fail(errc::validation_error, "Newton exponents must have rank 2");
        if (p[0] < 0 || p[1] < 0) fail(errc::validation_error, "Newton exponent with negative coordinate");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    NewtonPolygon out;
    out.exponents = std::move(pts);
    return out;
}

std::vector<Vec> NewtonPolygon::vertices() const {
    // lower-left hull: points minimal for some positive linear functional
    std::vector<Vec> verts;
    for (const auto& p : exponents) {
        bool dominated = false;
        for (const auto& q : exponents) {
            if (q == p) continue;
            // p is redundant if it lies in q + R^2_{>=0} or on a segment of the hull;
            // keep the exact test: p is a vertex iff some v > 0 attains its
            // minimum uniquely at p. Small sets: test candidate normals below.
            if (q[0] <= p[0] && q[1] <= p[1]) {
                dominated = true;
                break;
            }
        }
        if (!dominated) verts.push_back(p);
    }
    // among non-dominated points, keep extreme ones of the staircase hull:
    // sort by x ascending (y then descends); drop points on segments.
    std::sort(verts.begin(), verts.end());
    if (verts.size() <= 2) return verts;
    std::vector<Vec> hull;
    for (const auto& p : verts) {
        while (hull.size() >= 2) {
            const Vec& a = hull[hull.size() - 2];
            const Vec& b = hull[hull.size() - 1];
            long long cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            if (cross <= 0) hull.pop_back(); // b on or above the chord a-p: not a vertex
            else break;
        }
        hull.push_back(p);
    }
    return hull;
}

std::vector<Vec> NewtonPolygon::facet_normals() const {
    auto verts = vertices();
    std::vector<Vec> normals;
    for (size_t i = 0; i + 1 < verts.size(); ++i) {
        const Vec& a = verts[i];
        const Vec& b = verts[i + 1];
        // inner normal of segment a-b: positive, orthogonal to b - a
        Vec n{a[1] - b[1], b[0] - a[0]};
        if (n[0] < 0 || n[1] < 0) { n[0] = -n[0]; n[1] = -n[1]; }
        normals.push_back(primitive_vector(n));
    }
    return normals;
}

std::pair<long long, long long> newton_data(const NewtonPolygon& p, const Vec& v) {
    if (v.size() != 2 || v[0] < 0 || v[1] < 0 || is_zero(v))
        fail(errc::validation_error, "newton_data needs a vector in the positive quadrant");
    if (!is_primitive(v)) fail(errc::validation_error, "newton_data needs a primitive vector");
    long long n = dot(v, p.exponents[0]);
    for (const auto& e : p.exponents) n = std::min(n, dot(v, e));
    // lattice length of the minimizing face
    std::vector<Vec> face;
    for (const auto& e : p.exponents)
        if (dot(v, e) == n) face.push_back(e);
    long long len = 0;
    if (face.size() >= 2) {
        std::sort(face.begin(), face.end());
        const Vec& a = face.front();
        const Vec& b = face.back();
        len = igcd(b[0] - a[0], b[1] - a[1]);
    }
    return {n, len};
}

// ----------------------------------------------------------------- Atom

Atom Atom::boundary(Vec ray) {
    Atom a;
    a.kind = Kind::boundary;
    a.ray = std::move(ray);
    return a;
}

Atom Atom::germ(std::string name, NewtonPolygon polygon, bool nondegenerate) {
    Atom a;
    a.kind = Kind::germ;
    a.germ_name = std::move(name);
    a.polygon = std::move(polygon);
    a.nondegenerate = nondegenerate;
    return a;
}

Atom Atom::ambient() {
    Atom a;
    a.kind = Kind::ambient;
    return a;
}

bool Atom::operator<(const Atom& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (kind == Kind::boundary) return ray < o.ray;
    if (kind == Kind::germ) return germ_name < o.germ_name;
    return false;
}

bool Atom::operator==(const Atom& o) const { return !(*this < o) && !(o < *this); }

std::string Atom::str() const {
    switch (kind) {
    case Kind::boundary: return "ray:" + vec_str(ray);
    case Kind::germ: return "germ:" + germ_name;
    case Kind::ambient: return "ambient";
    }
    return "?";
}

void SystemDivisor::add(const Atom& atom, const Scalar& coeff) {
    if (atom.kind == Atom::Kind::ambient)
        fail(errc::validation_error, "the ambient atom cannot appear in a divisor");
    if (coeff.is_zero()) return;
    auto it = terms.find(atom);
    if (it == terms.end()) {
        terms.emplace(atom, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms.erase(it);
}

bool SystemDivisor::has_germ() const {
    for (const auto& [a, c] : terms)
        if (a.kind == Atom::Kind::germ) return true;
    return false;
}

ConstructibleSet ConstructibleSet::ambient() {
    ConstructibleSet s;
    s.atoms.insert(Atom::ambient());
    return s;
}

ConstructibleSet ConstructibleSet::of(std::vector<Atom> list) {
    if (list.empty()) fail(errc::validation_error, "constructible set must be nonempty");
    ConstructibleSet s;
    for (auto& a : list) {
        if (a.kind == Atom::Kind::ambient) return ambient(); // union with everything
        s.atoms.insert(std::move(a));
    }
    return s;
}

bool ConstructibleSet::is_ambient() const {
    return atoms.size() == 1 && atoms.begin()->kind == Atom::Kind::ambient;
}

bool ConstructibleSet::has_germ() const {
    for (const auto& a : atoms)
        if (a.kind == Atom::Kind::germ) return true;
    return false;
}

// ------------------------------------------------------- ResolutionTower

ResolutionTower::ResolutionTower(FanPtr base) { levels_.push_back(std::move(base)); }

ResolutionTower ResolutionTower::extended(const Vec& v) const {
    ResolutionTower out(*this);
    auto [fan, sub] = star_subdivide(out.levels_.back(), v);
    out.levels_.push_back(fan);
    out.steps_.push_back(sub);
    return out;
}

const FanPtr& ResolutionTower::fan(int level) const {
    if (level < 0 || level > top()) fail(errc::validation_error, "tower level out of range");
    return levels_[static_cast<size_t>(level)];
}

const StarSubdivision& ResolutionTower::step(int i) const {
    if (i < 0 || i >= static_cast<int>(steps_.size()))
        fail(errc::validation_error, "tower step out of range");
    return steps_[static_cast<size_t>(i)];
}

int ResolutionTower::creation_level(const Vec& ray) const {
    for (int k = 0; k <= top(); ++k)
        if (levels_[static_cast<size_t>(k)]->ray_index(ray) >= 0) return k;
    return -1;
}

Rational ResolutionTower::discrepancy_over(int level, const Vec& ray) const {
    const Fan& f = *fan(level);
    if (f.ray_index(ray) >= 0) return Rational(0);
    auto [cone, coords] = barycentric_coords(f, ray);
    Rational sum(0);
    for (const auto& c : coords) sum += c;
    return sum - 1;
}

Rational ResolutionTower::pullback_multiplicity(const Vec& atom_ray, const Vec& at) const {
    int lvl = creation_level(atom_ray);
    if (lvl < 0) fail(errc::validation_error, "atom ray " + vec_str(atom_ray) + " never appears in the tower");
    const Fan& f = *fan(lvl);
    if (f.ray_index(at) >= 0) return at == atom_ray ? Rational(1) : Rational(0);
    auto [cone, coords] = barycentric_coords(f, at);
    for (size_t i = 0; i < cone.size(); ++i)
        if (f.rays()[static_cast<size_t>(cone[i])] == atom_ray) return coords[i];
    return Rational(0);
}

std::map<Vec, Rational> relative_canonical(const ResolutionTower& tower, int i, int j) {
    if (i > j) fail(errc::validation_error, "relative_canonical needs i <= j");
    tower.fan(j); // range check
    std::map<Vec, Rational> out;
    const Fan& fi = *tower.fan(i);
    for (const auto& ray : tower.fan(j)->rays()) {
        if (fi.ray_index(ray) >= 0) continue;
        out[ray] = tower.discrepancy_over(i, ray);
    }
    return out;
}

// ----------------------------------------------------------------- resolve

bool ResolvedData::has_germ_component() const {
    for (const auto& c : comps)
        if (c.atom.kind == Atom::Kind::germ) return true;
    return false;
}

namespace {

void check_germ_base(const ResolutionTower& tower) {
    const Fan& base = *tower.fan(0);
    if (base.rank() != 2 || base.max_cones().size() != 1 ||
        static_cast<int>(base.max_cones()[0].size()) != 2 || !base.smooth())
        fail(errc::not_snc, "germ atoms require the base to be a single smooth full-dimensional cone of rank 2");
}

// Rays of the eval fan lying in the pullback of the atom's support.
bool ray_in_atom_pullback(const ResolutionTower& tower, const Atom& atom, const Vec& ray) {
    if (atom.kind == Atom::Kind::boundary) return tower.pullback_multiplicity(atom.ray, ray) > 0;
    // germ: exceptional rays over the origin, axis rays inside the curve,
    // and nothing else (the strict transform is handled separately)
    const Fan& origin_base = *tower.fan(0);
    bool interior = false;
    if (origin_base.ray_index(ray) < 0)
        interior = static_cast<int>(barycentric_coords(origin_base, ray).first.size()) == origin_base.rank();
    long long n = newton_data(atom.polygon, ray).first;
    bool unit_germ = false;
    for (const auto& e : atom.polygon.exponents)
        if (e[0] == 0 && e[1] == 0) unit_germ = true;
    if (unit_germ) return false;
    return n > 0 || interior;
}

} // namespace

ResolvedData resolve_at(const ResolutionTower& tower, const SystemDivisor& D, const ConstructibleSet& S,
                        int base_level, int eval_level, const std::vector<Vec>& forced_atom_rays) {
    const FanPtr& fan = tower.fan(eval_level);
    if (!fan->smooth())
        fail(errc::not_smooth, "evaluation level " + std::to_string(eval_level) + " is not smooth");

    // germ atoms, deduplicated by name
    std::map<std::string, Atom> germs;
    for (const auto& [a, c] : D.terms)
        if (a.kind == Atom::Kind::germ) germs.emplace(a.germ_name, a);
    if (!S.is_ambient())
        for (const auto& a : S.atoms)
            if (a.kind == Atom::Kind::germ) germs.emplace(a.germ_name, a);
    if (!germs.empty()) check_germ_base(tower);
    for (const auto& [name, g] : germs) {
        if (!g.nondegenerate)
            fail(errc::not_snc, "germ " + name + " is not flagged Newton-nondegenerate");
        for (const auto& e : g.polygon.exponents)
            if (e[0] == 0 && e[1] == 0)
                fail(errc::not_snc, "germ " + name + " is a unit (its polygon contains the origin)");
        for (const auto& nrm : g.polygon.facet_normals())
            if (fan->ray_index(nrm) < 0)
                fail(errc::not_resolved, "facet normal " + vec_str(nrm) + " of germ " + name +
                                             " is not a ray at level " + std::to_string(eval_level));
    }
    for (const auto& [a, c] : D.terms) {
        if (a.kind != Atom::Kind::boundary) continue;
        int lvl = tower.creation_level(a.ray);
        if (lvl < 0 || lvl > eval_level)
            fail(errc::validation_error,
                 "divisor atom " + a.str() + " is not representable at level " + std::to_string(eval_level));
    }

    ResolvedData rd;
    rd.tower = tower;
    rd.base_level = base_level;
    rd.level = eval_level;
    rd.ambient_S = S.is_ambient();

    std::set<Vec> forced(forced_atom_rays.begin(), forced_atom_rays.end());

    for (const auto& ray : fan->rays()) {
        // coefficient of the ray in D + K over base_level
        Scalar coeff(0);
        for (const auto& [a, c] : D.terms) {
            if (a.kind == Atom::Kind::boundary)
                coeff += c * Scalar(tower.pullback_multiplicity(a.ray, ray));
            else
                coeff += c * Scalar(Rational(newton_data(a.polygon, ray).first));
        }
        coeff += Scalar(tower.discrepancy_over(base_level, ray));

        bool in_S = false;
        if (!S.is_ambient())
            for (const auto& a : S.atoms)
                in_S = in_S || ray_in_atom_pullback(tower, a, ray);
        if (coeff.is_zero() && !in_S && !forced.count(ray)) continue;
        rd.comps.push_back({Atom::boundary(ray), coeff, in_S});
    }

    for (const auto& [name, g] : germs) {
        if (g.polygon.trivial()) continue; // monomial germ: no strict transform
        Scalar coeff(0);
        for (const auto& [a, c] : D.terms)
            if (a.kind == Atom::Kind::germ && a.germ_name == name) coeff += c;
        bool in_S = false;
        if (!S.is_ambient())
            for (const auto& a : S.atoms)
                in_S = in_S || (a.kind == Atom::Kind::germ && a.germ_name == name);
        rd.comps.push_back({g, coeff, in_S});
    }

    // convergence: m_j != -1 always; numeric m_j must be > -1
    for (const auto& comp : rd.comps) {
        Scalar one_plus = comp.m + Scalar(1);
        if (one_plus.is_zero())
            fail(errc::non_convergent, "m_j = -1 on " + comp.atom.str());
        if (comp.m.is_rational() && comp.m.as_rational() <= -1)
            fail(errc::non_convergent,
                 "m_j = " + comp.m.str() + " <= -1 on " + comp.atom.str());
    }
    return rd;
}

ResolvedData resolve(const ResolutionTower& tower, const SystemDivisor& D, const ConstructibleSet& S) {
    return resolve_at(tower, D, S, 0, tower.top());
}

ConstructibleSet restrict_to_point(const ResolutionTower& tower, const ConstructibleSet& S,
                                   const ConeKey& p, int base_level) {
    const Fan& base = *tower.fan(base_level);
    if (!base.has_cone(p)) fail(errc::unknown_cone, "point cone not in the base fan");
    if (static_cast<int>(p.size()) != base.rank())
        fail(errc::validation_error, "point must be a maximal (full-dimensional) cone");
    const Fan& topfan = *tower.fan(tower.top());

    std::vector<Atom> fiber;
    for (const auto& ray : topfan.rays()) {
        if (base.ray_index(ray) >= 0) continue;
        if (barycentric_coords(base, ray).first != p) continue; // not interior to p's cone
        bool in_S = S.is_ambient();
        if (!in_S) {
            for (const auto& a : S.atoms)
                in_S = in_S || ray_in_atom_pullback(tower, a, ray);
        }
        if (in_S) fiber.push_back(Atom::boundary(ray));
    }
    if (fiber.empty())
        fail(errc::empty_fiber, "no exceptional divisor lies over the point; extend the tower first");
    return ConstructibleSet::of(std::move(fiber));
}

} // namespace celeste
