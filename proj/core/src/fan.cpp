#include "celeste/fan.hpp"

#include "celeste/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace celeste {

std::string ValidationReport::str() const {
    std::string out;
    for (const auto& p : problems) out += p + "\n";
    return out;
}

namespace {

std::vector<ConeKey> face_closure(const std::vector<ConeKey>& max_cones) {
    std::set<ConeKey> faces;
    faces.insert(ConeKey{});
    for (const auto& c : max_cones) {
        size_t k = c.size();
        for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
            ConeKey f;
            for (size_t i = 0; i < k; ++i)
                if (mask & (size_t(1) << i)) f.push_back(c[i]);
            faces.insert(f);
        }
    }
    std::vector<ConeKey> out(faces.begin(), faces.end());
    std::sort(out.begin(), out.end(), [](const ConeKey& a, const ConeKey& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<Vec> cone_rays(const std::vector<Vec>& rays, const ConeKey& c) {
    std::vector<Vec> out;
    out.reserve(c.size());
    for (int i : c) out.push_back(rays[static_cast<size_t>(i)]);
    return out;
}

// |det| of the square matrix with the given columns.
long long abs_det(const std::vector<Vec>& cols) {
    size_t n = cols.size();
    if (n == 1) return std::llabs(cols[0][0]);
    if (n == 2) return std::llabs(cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]);
    long long d = cols[0][0] * (cols[1][1] * cols[2][2] - cols[1][2] * cols[2][1])
                - cols[1][0] * (cols[0][1] * cols[2][2] - cols[0][2] * cols[2][1])
                + cols[2][0] * (cols[0][1] * cols[1][2] - cols[0][2] * cols[1][1]);
    return std::llabs(d);
}

bool smooth_rays(const std::vector<Vec>& cr, int rank) {
    if (cr.empty()) return true;
    size_t k = cr.size();
    if (static_cast<int>(k) == rank) return abs_det(cr) == 1;
    // gcd of all k x k minors must be 1
    std::vector<int> idx(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) idx[static_cast<size_t>(i)] = i;
    long long g = 0;
    std::vector<int> pick(k);
    // enumerate k-subsets of the rank coordinates
    std::vector<int> comb(k);
    for (size_t i = 0; i < k; ++i) comb[i] = static_cast<int>(i);
    for (;;) {
        std::vector<Vec> sq(k, Vec(k, 0));
        for (size_t j = 0; j < k; ++j)
            for (size_t i = 0; i < k; ++i) sq[j][i] = cr[j][static_cast<size_t>(comb[i])];
        g = igcd(g, abs_det(sq));
        // next combination
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && comb[static_cast<size_t>(i)] == rank - static_cast<int>(k) + i) --i;
        if (i < 0) break;
        ++comb[static_cast<size_t>(i)];
        for (size_t j = static_cast<size_t>(i) + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    return g == 1;
}

// Facet pairing completeness certificate for simplicial fans of rank 1..3:
// all maximal cones full-dimensional and each facet shared by exactly two.
bool facet_paired_complete(int rank, const std::vector<Vec>& rays, const std::vector<ConeKey>& max_cones) {
    if (max_cones.empty()) return false;
    for (const auto& c : max_cones)
        if (static_cast<int>(c.size()) != rank) return false;
    if (rank == 1) {
        // two opposite rays
        return max_cones.size() == 2 && rays.size() == 2 && is_zero({rays[0][0] + rays[1][0]});
    }
    std::map<ConeKey, int> facet_count;
    for (const auto& c : max_cones) {
        for (size_t drop = 0; drop < c.size(); ++drop) {
            ConeKey f;
            for (size_t i = 0; i < c.size(); ++i)
                if (i != drop) f.push_back(c[i]);
            ++facet_count[f];
        }
    }
    for (const auto& [f, n] : facet_count)
        if (n != 2) return false;
    return true;
}

} // namespace

ValidationReport validate_fan(const FanInput& input) {
    ValidationReport rep;
    if (input.rank < 1 || input.rank > 3) {
        rep.problems.push_back("rank must be 1, 2 or 3");
        return rep;
    }
    for (size_t i = 0; i < input.rays.size(); ++i) {
        const Vec& r = input.rays[i];
        if (static_cast<int>(r.size()) != input.rank) {
            rep.problems.push_back("ray " + std::to_string(i) + " has wrong length");
            return rep;
        }
        if (is_zero(r)) {
            rep.problems.push_back("ray " + std::to_string(i) + " is zero");
            continue;
        }
        if (!is_primitive(r))
            rep.problems.push_back("non-primitive ray " + vec_str(r));
    }
    for (size_t i = 0; i < input.rays.size(); ++i)
        for (size_t j = i + 1; j < input.rays.size(); ++j)
            if (input.rays[i] == input.rays[j])
                rep.problems.push_back("duplicate ray " + vec_str(input.rays[i]));
    if (!rep.ok()) return rep;

    for (const auto& c : input.cones) {
        for (int i : c)
            if (i < 0 || i >= static_cast<int>(input.rays.size())) {
                rep.problems.push_back("cone references unknown ray index " + std::to_string(i));
                return rep;
            }
        ConeKey s(c);
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            rep.problems.push_back("cone with repeated ray index");
            return rep;
        }
        auto cr = cone_rays(input.rays, s);
        if (int_rank(cr) != static_cast<int>(cr.size()))
            rep.problems.push_back("non-simplicial cone (dependent rays): " + vec_str(cr[0]) + "...");
    }
    if (!rep.ok()) return rep;

    // face property: relative interiors of distinct cones are disjoint
    std::vector<ConeKey> sorted_max;
    for (const auto& c : input.cones) {
        ConeKey s(c);
        std::sort(s.begin(), s.end());
        sorted_max.push_back(s);
    }
    auto faces = face_closure(sorted_max);
    for (size_t i = 0; i < faces.size(); ++i) {
        for (size_t j = i + 1; j < faces.size(); ++j) {
            if (faces[i].empty() || faces[j].empty()) continue;
            if (relint_intersect(cone_rays(input.rays, faces[i]), cone_rays(input.rays, faces[j]), input.rank))
                rep.problems.push_back("cones intersect off their common face: {" +
                                       vec_str(input.rays[static_cast<size_t>(faces[i][0])]) + "...} and {" +
                                       vec_str(input.rays[static_cast<size_t>(faces[j][0])]) + "...}");
        }
    }
    if (!rep.ok()) return rep;

    bool smooth = true;
    for (const auto& c : sorted_max)
        smooth = smooth && smooth_rays(cone_rays(input.rays, c), input.rank);
    bool complete = facet_paired_complete(input.rank, input.rays, sorted_max);
    if (input.declared_smooth && *input.declared_smooth != smooth)
        rep.problems.push_back(std::string("smoothness flag mismatch: fan is ") + (smooth ? "smooth" : "singular"));
    if (input.declared_complete && *input.declared_complete != complete)
        rep.problems.push_back(std::string("completeness flag mismatch: fan is ") + (complete ? "complete" : "not complete"));
    return rep;
}

struct FanAccess {
    static FanPtr build(FanInput input) {
        auto rep = validate_fan(input);
        if (!rep.ok()) fail(errc::validation_error, "invalid fan:\n" + rep.str());
        auto fan = std::make_shared<Fan>();
        fan->rank_ = input.rank;

        // normalize: rays sorted lex, cones remapped and sorted
        std::vector<size_t> order(input.rays.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return input.rays[a] < input.rays[b]; });
        std::vector<int> new_index(input.rays.size());
        for (size_t pos = 0; pos < order.size(); ++pos) {
            fan->rays_.push_back(input.rays[order[pos]]);
            new_index[order[pos]] = static_cast<int>(pos);
        }
        for (const auto& c : input.cones) {
            ConeKey mapped;
            for (int i : c) mapped.push_back(new_index[static_cast<size_t>(i)]);
            std::sort(mapped.begin(), mapped.end());
            fan->max_cones_.push_back(std::move(mapped));
        }
        std::sort(fan->max_cones_.begin(), fan->max_cones_.end());
        fan->max_cones_.erase(std::unique(fan->max_cones_.begin(), fan->max_cones_.end()),
                              fan->max_cones_.end());
        // drop cones that are faces of others
        std::vector<ConeKey> maximal;
        for (const auto& c : fan->max_cones_) {
            bool face = false;
            for (const auto& d : fan->max_cones_)
                if (c != d && std::includes(d.begin(), d.end(), c.begin(), c.end())) face = true;
            if (!face) maximal.push_back(c);
        }
        fan->max_cones_ = std::move(maximal);
        fan->cones_ = face_closure(fan->max_cones_);
        fan->cone_set_ = std::set<ConeKey>(fan->cones_.begin(), fan->cones_.end());
        fan->smooth_ = true;
        for (const auto& c : fan->max_cones_)
            fan->smooth_ = fan->smooth_ && smooth_rays(cone_rays(fan->rays_, c), fan->rank_);
        fan->complete_ = facet_paired_complete(fan->rank_, fan->rays_, fan->max_cones_);
        return fan;
    }
};

FanPtr Fan::make(FanInput input) { return FanAccess::build(std::move(input)); }

int Fan::ray_index(const Vec& ray) const {
    auto it = std::lower_bound(rays_.begin(), rays_.end(), ray);
    if (it == rays_.end() || *it != ray) return -1;
    return static_cast<int>(it - rays_.begin());
}

std::string Fan::cone_str(const ConeKey& c) const {
    std::string s = "V(";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += vec_str(rays_[static_cast<size_t>(c[i])]);
    }
    return s + ")";
}

Rational StarSubdivision::discrepancy() const {
    Rational sum(0);
    for (const auto& c : coords) sum += c;
    return sum - 1;
}

bool is_smooth_cone(const Fan& fan, const ConeKey& cone) {
    if (!fan.has_cone(cone)) fail(errc::unknown_cone, "cone not in fan: " + fan.cone_str(cone));
    return smooth_rays(cone_rays(fan.rays(), cone), fan.rank());
}

bool support_contains(const Fan& fan, const Vec& v) {
    for (const auto& c : fan.max_cones()) {
        auto sol = solve_columns(cone_rays(fan.rays(), c), v);
        if (!sol) continue;
        bool nonneg = std::all_of(sol->begin(), sol->end(), [](const Rational& r) { return r >= 0; });
        if (nonneg) return true;
    }
    return false;
}

std::pair<ConeKey, std::vector<Rational>> barycentric_coords(const Fan& fan, const Vec& v) {
    if (static_cast<int>(v.size()) != fan.rank())
        fail(errc::validation_error, "vector rank mismatch");
    for (const auto& c : fan.max_cones()) {
        auto sol = solve_columns(cone_rays(fan.rays(), c), v);
        if (!sol) continue;
        if (!std::all_of(sol->begin(), sol->end(), [](const Rational& r) { return r >= 0; })) continue;
        ConeKey minimal;
        std::vector<Rational> coords;
        for (size_t i = 0; i < c.size(); ++i) {
            if ((*sol)[i] > 0) {
                minimal.push_back(c[i]);
                coords.push_back((*sol)[i]);
            }
        }
        return {minimal, coords};
    }
    fail(errc::outside_support, "vector " + vec_str(v) + " lies outside the fan support");
}

std::pair<FanPtr, StarSubdivision> star_subdivide(const FanPtr& fan, const Vec& v) {
    Vec ray = primitive_vector(v);
    if (ray != v) fail(errc::validation_error, "subdivision ray must be primitive: " + vec_str(v));
    if (fan->ray_index(ray) >= 0) fail(errc::ray_exists, "ray already in fan: " + vec_str(ray));
    auto [target, coords] = barycentric_coords(*fan, ray); // throws OutsideSupport

    FanInput input;
    input.rank = fan->rank();
    input.rays = fan->rays();
    input.rays.push_back(ray);
    int vi = static_cast<int>(input.rays.size()) - 1;
    for (const auto& c : fan->max_cones()) {
        bool contains_target = std::includes(c.begin(), c.end(), target.begin(), target.end());
        if (!contains_target) {
            input.cones.push_back(c);
            continue;
        }
        for (int drop : target) {
            ConeKey nc;
            for (int i : c)
                if (i != drop) nc.push_back(i);
            nc.push_back(vi);
            std::sort(nc.begin(), nc.end());
            input.cones.push_back(std::move(nc));
        }
    }
    FanPtr out = Fan::make(std::move(input));

    StarSubdivision sub;
    sub.new_ray = ray;
    sub.target_rays = cone_rays(fan->rays(), target);
    sub.coords = coords;
    sub.before = fan;
    sub.after = out;
    return {out, sub};
}

bool orbit_closure_complete(const Fan& fan, const ConeKey& cone) {
    if (!fan.has_cone(cone)) fail(errc::unknown_cone, "cone not in fan: " + fan.cone_str(cone));
    int q = fan.rank() - static_cast<int>(cone.size());
    if (q == 0) return true; // a point
    // project the star of `cone` to the quotient lattice
    auto cr = cone_rays(fan.rays(), cone);
    std::vector<Vec> u = cone.empty() ? std::vector<Vec>() : unimodular_clear(cr, fan.rank());
    auto project = [&](const Vec& x) {
        Vec out;
        if (cone.empty()) return x;
        for (int r = static_cast<int>(cone.size()); r < fan.rank(); ++r) {
            long long s = 0;
            for (int c = 0; c < fan.rank(); ++c)
                s += u[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
            out.push_back(s);
        }
        return out;
    };
    std::vector<Vec> qrays;
    std::vector<ConeKey> qcones;
    std::map<Vec, int> index;
    for (const auto& mc : fan.max_cones()) {
        if (!std::includes(mc.begin(), mc.end(), cone.begin(), cone.end())) continue;
        ConeKey qc;
        for (int i : mc) {
            if (std::binary_search(cone.begin(), cone.end(), i)) continue;
            Vec p = project(fan.rays()[static_cast<size_t>(i)]);
            if (is_zero(p)) continue;
            p = primitive_vector(p);
            auto it = index.find(p);
            int id;
            if (it == index.end()) {
                id = static_cast<int>(qrays.size());
                index[p] = id;
                qrays.push_back(p);
            } else {
                id = it->second;
            }
            qc.push_back(id);
        }
        std::sort(qc.begin(), qc.end());
        qc.erase(std::unique(qc.begin(), qc.end()), qc.end());
        qcones.push_back(std::move(qc));
    }
    if (qcones.empty()) return false;
    for (const auto& qc : qcones)
        if (static_cast<int>(qc.size()) != q) return false;
    if (q == 1) {
        std::set<Vec> dirs;
        for (const auto& qc : qcones) dirs.insert(qrays[static_cast<size_t>(qc[0])]);
        if (dirs.size() != 2) return false;
        Vec a = *dirs.begin(), b = *std::next(dirs.begin());
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] + b[i] != 0) return false;
        return true;
    }
    std::sort(qcones.begin(), qcones.end());
    qcones.erase(std::unique(qcones.begin(), qcones.end()), qcones.end());
    return facet_paired_complete(q, qrays, qcones);
}

long long orbit_euler(const Fan& fan, const ConeKey& cone) {
    if (!fan.has_cone(cone)) fail(errc::unknown_cone, "cone not in fan: " + fan.cone_str(cone));
    if (!orbit_closure_complete(fan, cone))
        fail(errc::not_complete, "orbit closure of " + fan.cone_str(cone) + " is not compact");
    long long count = 0;
    for (const auto& mc : fan.max_cones())
        if (std::includes(mc.begin(), mc.end(), cone.begin(), cone.end())) ++count;
    return count;
}

std::optional<ConeKey> minimal_cone_containing(const Fan& fan, const std::vector<Vec>& vs) {
    std::set<int> rays;
    for (const auto& v : vs) {
        auto [cone, coords] = barycentric_coords(fan, v);
        rays.insert(cone.begin(), cone.end());
    }
    ConeKey key(rays.begin(), rays.end());
    if (!fan.has_cone(key)) return std::nullopt;
    return key;
}

} // namespace celeste
