#include "celeste/chow.hpp"

#include "celeste/errors.hpp"

#include <algorithm>
#include <sstream>

namespace celeste {

Scalar ChowClass::coeff(const ConeKey& c) const {
    auto it = terms.find(c);
    return it == terms.end() ? Scalar(0) : it->second;
}

void ChowClass::add_term(const ConeKey& c, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = terms.find(c);
    if (it == terms.end()) {
        terms.emplace(c, s);
        return;
    }
    it->second += s;
    if (it->second.is_zero()) terms.erase(it);
}

ChowClass& ChowClass::operator+=(const ChowClass& o) {
    if (!same_model(model, o.model)) fail(errc::model_mismatch, "adding classes on different models");
    for (const auto& [c, s] : o.terms) add_term(c, s);
    return *this;
}

ChowClass ChowClass::operator+(const ChowClass& o) const {
    ChowClass r(*this);
    r += o;
    return r;
}

ChowClass ChowClass::operator-(const ChowClass& o) const {
    ChowClass r(*this);
    r += o * Scalar(-1);
    return r;
}

ChowClass ChowClass::operator*(const Scalar& s) const {
    ChowClass r;
    r.model = model;
    if (s.is_zero()) return r;
    for (const auto& [c, t] : terms) r.terms.emplace(c, t * s);
    return r;
}

ChowClass cycle_class(const FanPtr& model, const ConeKey& cone) {
    if (!model->has_cone(cone)) fail(errc::unknown_cone, "cone not in fan: " + model->cone_str(cone));
    ChowClass r;
    r.model = model;
    r.terms.emplace(cone, Scalar(1));
    return r;
}

namespace {

std::vector<Vec> cone_rays(const Fan& fan, const ConeKey& c) {
    std::vector<Vec> out;
    for (int i : c) out.push_back(fan.rays()[static_cast<size_t>(i)]);
    return out;
}

// Integer covector m with <m, u_rho> = 1 and <m, u_s> = 0 for the other rays
// of the smooth cone S, extended by zero on the fixed lattice complement.
Vec dual_covector(const Fan& fan, const ConeKey& s, int rho) {
    auto basis = extend_to_basis(cone_rays(fan, s), fan.rank());
    size_t idx = 0;
    while (s[idx] != rho) ++idx;
    // solve B^T m = e_idx
    size_t n = static_cast<size_t>(fan.rank());
    QMat aug(n, std::vector<Rational>(n + 1, Rational(0)));
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) aug[r][c] = Rational(basis[r][c]); // row r: basis vector r
        aug[r][n] = (r == idx) ? Rational(1) : Rational(0);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t p = col;
        while (p < n && aug[p][col] == 0) ++p;
        std::swap(aug[p], aug[col]);
        Rational inv = Rational(1) / aug[col][col];
        for (auto& x : aug[col]) x *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rational f = aug[r][col];
            for (size_t c = 0; c <= n; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    Vec m(n);
    for (size_t i = 0; i < n; ++i) m[i] = static_cast<long long>(aug[i][n].get_num().get_si());
    return m;
}

// x_ray * cls, one ray at a time.
ChowClass ray_mult(const FanPtr& model, int ray, const ChowClass& cls) {
    ChowClass out;
    out.model = model;
    for (const auto& [cone, coeff] : cls.terms) {
        bool member = std::binary_search(cone.begin(), cone.end(), ray);
        if (!member) {
            ConeKey ext(cone);
            ext.insert(std::lower_bound(ext.begin(), ext.end(), ray), ray);
            if (model->has_cone(ext)) out.add_term(ext, coeff);
            continue;
        }
        // rewrite x_ray via the linear relation chosen by the dual covector
        Vec m = dual_covector(*model, cone, ray);
        for (int w = 0; w < static_cast<int>(model->rays().size()); ++w) {
            if (std::binary_search(cone.begin(), cone.end(), w)) continue;
            long long val = dot(m, model->rays()[static_cast<size_t>(w)]);
            if (val == 0) continue;
            ConeKey ext(cone);
            ext.insert(std::lower_bound(ext.begin(), ext.end(), w), w);
            if (model->has_cone(ext)) out.add_term(ext, coeff * Scalar(Rational(-val)));
        }
    }
    return out;
}

} // namespace

ChowClass multiply(const ChowClass& a, const ChowClass& b) {
    if (!same_model(a.model, b.model)) fail(errc::model_mismatch, "multiplying classes on different models");
    if (!a.model->smooth()) fail(errc::not_smooth, "chow multiplication requires a smooth model");
    ChowClass out;
    out.model = a.model;
    for (const auto& [tau, tcoeff] : b.terms) {
        ChowClass cur = a * tcoeff;
        for (int r : tau) cur = ray_mult(a.model, r, cur);
        out += cur;
    }
    return out;
}

Scalar degree(const ChowClass& a) {
    Scalar sum(0);
    for (const auto& [cone, coeff] : a.terms) {
        if (static_cast<int>(cone.size()) == a.model->rank()) {
            sum += coeff;
            continue;
        }
        if (!a.model->complete() && !orbit_closure_complete(*a.model, cone))
            fail(errc::non_proper_degree,
                 "class has a coefficient on the non-compact orbit closure " + a.model->cone_str(cone));
    }
    return sum;
}

bool chow_equal(const ChowClass& a, const ChowClass& b) {
    if (!same_model(a.model, b.model)) fail(errc::model_mismatch, "comparing classes on different models");
    if (!a.model->smooth()) fail(errc::not_smooth, "equality test requires a smooth model");
    if (!a.model->complete()) fail(errc::not_complete, "equality test requires a complete model");
    ChowClass d = a - b;
    if (d.is_zero()) return true;
    for (const auto& cone : a.model->cones()) {
        ChowClass pairing = multiply(d, cycle_class(a.model, cone));
        if (!degree(pairing).is_zero()) return false;
    }
    return true;
}

ChowClass total_chern(const FanPtr& model) {
    if (!model->smooth()) fail(errc::not_smooth, "total chern class requires a smooth model");
    if (!model->complete()) fail(errc::not_complete, "total chern class requires a complete model");
    ChowClass c;
    c.model = model;
    c.terms.emplace(ConeKey{}, Scalar(1));
    for (int r = 0; r < static_cast<int>(model->rays().size()); ++r)
        c += ray_mult(model, r, c);
    return c;
}

ChowClass log_chern(const FanPtr& model, const std::vector<Vec>& atom_rays) {
    if (!model->smooth()) fail(errc::not_smooth, "log chern class requires a smooth model");
    // c(TX) without the completeness gate: the product formula is local
    ChowClass c;
    c.model = model;
    c.terms.emplace(ConeKey{}, Scalar(1));
    for (int r = 0; r < static_cast<int>(model->rays().size()); ++r)
        c += ray_mult(model, r, c);
    std::vector<int> seen;
    for (const auto& ray : atom_rays) {
        int idx = model->ray_index(ray);
        if (idx < 0) fail(errc::not_snc, "atom ray " + vec_str(ray) + " is not a prime divisor of the model");
        if (std::find(seen.begin(), seen.end(), idx) != seen.end())
            fail(errc::not_snc, "repeated atom ray " + vec_str(ray));
        seen.push_back(idx);
        // multiply by (1 + E)^{-1} = sum_k (-E)^k, a terminating series
        ChowClass acc = c;
        ChowClass power = c;
        Scalar sign(1);
        for (int k = 0; k < model->rank(); ++k) {
            power = ray_mult(model, idx, power);
            sign = sign * Scalar(-1);
            acc += power * sign;
        }
        c = acc;
    }
    return c;
}

ChowClass pushforward(const StarSubdivision& sub, const ChowClass& a) {
    if (!same_model(a.model, sub.after))
        fail(errc::model_mismatch, "class does not live on the subdivided model");
    const Fan& pre = *sub.before;
    const Fan& post = *sub.after;
    int vi = post.ray_index(sub.new_ray);
    ConeKey target;
    for (const auto& tr : sub.target_rays) target.push_back(pre.ray_index(tr));
    std::sort(target.begin(), target.end());

    ChowClass out;
    out.model = sub.before;
    for (const auto& [cone, coeff] : a.terms) {
        ConeKey image;
        if (!std::binary_search(cone.begin(), cone.end(), vi)) {
            for (int i : cone) image.push_back(pre.ray_index(post.rays()[static_cast<size_t>(i)]));
            std::sort(image.begin(), image.end());
        } else {
            std::set<int> img(target.begin(), target.end());
            for (int i : cone) {
                if (i == vi) continue;
                img.insert(pre.ray_index(post.rays()[static_cast<size_t>(i)]));
            }
            image.assign(img.begin(), img.end());
            if (image.size() != cone.size()) continue; // dimension drops: pushes to zero
        }
        if (!pre.has_cone(image))
            fail(errc::model_mismatch, "pushforward image is not a cone of the coarser fan");
        out.add_term(image, coeff);
    }
    return out;
}

std::map<Vec, Scalar> pullback_divisor(const StarSubdivision& sub, const std::map<Vec, Scalar>& divisor) {
    for (const auto& [ray, c] : divisor)
        if (sub.before->ray_index(ray) < 0)
            fail(errc::model_mismatch, "divisor ray " + vec_str(ray) + " not on the pre-subdivision model");
    std::map<Vec, Scalar> out(divisor);
    Scalar val(0);
    for (size_t i = 0; i < sub.target_rays.size(); ++i) {
        auto it = divisor.find(sub.target_rays[i]);
        if (it != divisor.end()) val += Scalar(sub.coords[i]) * it->second;
    }
    if (!val.is_zero()) out[sub.new_ray] = val;
    return out;
}

std::string to_text(const ChowClass& a) {
    if (a.terms.empty()) return "0\n";
    std::vector<std::pair<ConeKey, Scalar>> sorted(a.terms.begin(), a.terms.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        return x.first < y.first;
    });
    std::string out;
    for (const auto& [cone, coeff] : sorted) {
        out += "codim " + std::to_string(cone.size()) + ": " + coeff.str() + " * [" +
               a.model->cone_str(cone) + "]\n";
    }
    return out;
}

} // namespace celeste
