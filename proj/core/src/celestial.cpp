#include "celeste/celestial.hpp"

#include "celeste/errors.hpp"

#include <algorithm>
#include <sstream>

namespace celeste {

void CelestialClass::verify_compatibility() const {
    for (int k = 0; k < tower.top(); ++k) {
        ChowClass pushed = pushforward(tower.step(k), manifestations[static_cast<size_t>(k) + 1]);
        if (!(pushed.terms == manifestations[static_cast<size_t>(k)].terms))
            fail(errc::validation_error,
                 "inverse-limit compatibility violated between levels " + std::to_string(k + 1) +
                     " and " + std::to_string(k));
    }
}

bool Report::pass() const {
    return std::all_of(lines.begin(), lines.end(), [](const ReportLine& l) { return l.pass; });
}

std::string Report::str() const {
    std::string out = "check: " + title + "\n";
    for (const auto& l : lines) {
        out += "  " + l.label + ":\n";
        if (!l.lhs.empty()) out += "    lhs: " + l.lhs + "\n";
        if (!l.rhs.empty()) out += "    rhs: " + l.rhs + "\n";
        if (!l.note.empty()) out += "    note: " + l.note + "\n";
        out += l.pass ? "    PASS\n" : "    FAIL\n";
    }
    out += std::string("overall: ") + (pass() ? "PASS" : "FAIL") + "\n";
    return out;
}

namespace {

std::string inline_class(const ChowClass& c) {
    std::string t = to_text(c);
    std::replace(t.begin(), t.end(), '\n', ';');
    if (!t.empty() && t.back() == ';') t.pop_back();
    return t;
}

} // namespace

ChowClass evaluate_manifestation(const ResolvedData& rd, std::vector<std::string>* trace) {
    if (rd.has_germ_component())
        fail(errc::non_toric_atom,
             "a strict transform has no Chow class on the toric model; use local_value");
    const FanPtr& fan = rd.fan();
    if (!fan->complete())
        fail(errc::not_complete, "manifestations require a complete evaluation level");

    std::vector<int> atom_rays;     // ray indices of J
    std::vector<Scalar> inv_factor; // 1/(1+m) aligned with fan rays
    inv_factor.assign(fan->rays().size(), Scalar(1));
    std::vector<char> in_J(fan->rays().size(), 0), in_S(fan->rays().size(), 0);
    std::vector<Vec> j_ray_vecs;
    for (const auto& comp : rd.comps) {
        int idx = fan->ray_index(comp.atom.ray);
        in_J[static_cast<size_t>(idx)] = 1;
        in_S[static_cast<size_t>(idx)] = comp.in_S ? 1 : 0;
        inv_factor[static_cast<size_t>(idx)] = Scalar(1) / (comp.m + Scalar(1));
        j_ray_vecs.push_back(comp.atom.ray);
    }

    ChowClass sum;
    sum.model = fan;
    for (const auto& cone : fan->cones()) {
        bool inside = true, meets_S = false;
        for (int r : cone) {
            inside = inside && in_J[static_cast<size_t>(r)];
            meets_S = meets_S || in_S[static_cast<size_t>(r)];
        }
        if (!inside) continue;
        if (!rd.ambient_S && !meets_S) continue; // needs I cap J_S nonempty
        Scalar coeff(1);
        for (int r : cone) coeff *= inv_factor[static_cast<size_t>(r)];
        sum.add_term(cone, coeff);
        if (trace)
            trace->push_back("stratum [" + fan->cone_str(cone) + "] weight " + coeff.str());
    }
    return multiply(log_chern(fan, j_ray_vecs), sum);
}

ChowClass evaluate_manifestation(const ResolvedData& rd) { return evaluate_manifestation(rd, nullptr); }

CelestialClass integrate(const ResolutionTower& tower, const SystemDivisor& D, const ConstructibleSet& S) {
    ResolvedData rd = resolve(tower, D, S);
    CelestialClass out{tower, {}};
    out.manifestations.resize(static_cast<size_t>(tower.top()) + 1);
    out.manifestations[static_cast<size_t>(tower.top())] = evaluate_manifestation(rd);
    for (int k = tower.top() - 1; k >= 0; --k)
        out.manifestations[static_cast<size_t>(k)] =
            pushforward(tower.step(k), out.manifestations[static_cast<size_t>(k) + 1]);
    out.verify_compatibility();
    return out;
}

// ---------------------------------------------------------------- local

namespace {

struct StratumData {
    const ResolvedData* rd;
    const Fan* eval_fan;
    const Fan* fiber_base;     // fan of the level defining the fiber
    ConeKey p;                 // fixed point (maximal cone of fiber_base)
    std::set<Vec> fiber_rays;  // J_{S cap p}
};

// chi-weighted stratum sum of Definition-style local values.
Scalar stratum_sum(const StratumData& sd, std::vector<std::string>* trace) {
    const ResolvedData& rd = *sd.rd;
    const Fan& fan = *sd.eval_fan;

    // split components
    std::vector<const ResolvedComponent*> toric, germs;
    for (const auto& c : rd.comps)
        (c.atom.kind == Atom::Kind::boundary ? toric : germs).push_back(&c);

    // which maximal cones lie over p, and which rays
    auto over_p = [&](const std::vector<Vec>& vs) {
        auto mc = minimal_cone_containing(*sd.fiber_base, vs);
        return mc.has_value() && *mc == sd.p;
    };
    std::vector<char> ray_over_p(fan.rays().size(), 0);
    for (size_t i = 0; i < fan.rays().size(); ++i)
        ray_over_p[i] = over_p({fan.rays()[i]}) ? 1 : 0;
    std::vector<ConeKey> max_over_p;
    for (const auto& mc : fan.max_cones()) {
        std::vector<Vec> vs;
        for (int i : mc) vs.push_back(fan.rays()[static_cast<size_t>(i)]);
        if (over_p(vs)) max_over_p.push_back(mc);
    }

    size_t nt = toric.size(), ng = germs.size();
    Scalar total(0);
    // subsets: lower bits toric atoms, upper bits germ strict transforms
    for (size_t mask = 1; mask < (size_t(1) << (nt + ng)); ++mask) {
        std::vector<size_t> ti, gi;
        for (size_t b = 0; b < nt; ++b)
            if (mask & (size_t(1) << b)) ti.push_back(b);
        for (size_t b = 0; b < ng; ++b)
            if (mask & (size_t(1) << (nt + b))) gi.push_back(b);

        // I must meet J_{S cap p}
        bool meets = false;
        for (size_t b : ti) meets = meets || sd.fiber_rays.count(toric[b]->atom.ray) > 0;
        if (!meets) continue;

        long long chi = 0;
        if (gi.size() >= 2) {
            chi = 0; // distinct strict transforms never meet
        } else if (gi.size() == 1) {
            const auto& g = germs[gi[0]]->atom;
            if (ti.size() == 1) {
                const Vec& v = toric[ti[0]]->atom.ray;
                int idx = fan.ray_index(v);
                if (ray_over_p[static_cast<size_t>(idx)])
                    chi = newton_data(g.polygon, v).second; // transversal points on E_v
            } else {
                chi = 0; // C only: its fiber points all sit on exceptionals; triples are empty
            }
        } else {
            // purely toric stratum: count fixed points over p on E_I avoiding the other atoms
            ConeKey need;
            for (size_t b : ti) need.push_back(fan.ray_index(toric[b]->atom.ray));
            std::sort(need.begin(), need.end());
            std::set<int> other;
            for (size_t b = 0; b < nt; ++b)
                if (std::find(ti.begin(), ti.end(), b) == ti.end())
                    other.insert(fan.ray_index(toric[b]->atom.ray));
            for (const auto& mc : max_over_p) {
                if (!std::includes(mc.begin(), mc.end(), need.begin(), need.end())) continue;
                bool clean = true;
                for (int r : mc) clean = clean && !other.count(r);
                if (clean) ++chi;
            }
            // remove strict-transform points lying on the open stratum of a divisor
            if (ti.size() == 1) {
                const Vec& v = toric[ti[0]]->atom.ray;
                int idx = fan.ray_index(v);
                if (ray_over_p[static_cast<size_t>(idx)])
                    for (size_t b = 0; b < ng; ++b)
                        chi -= newton_data(germs[b]->atom.polygon, v).second;
            }
        }
        if (chi == 0) continue;
        Scalar weight(Rational(chi));
        std::string label;
        for (size_t b : ti) {
            weight = weight / (toric[b]->m + Scalar(1));
            label += (label.empty() ? "" : " ^ ") + toric[b]->atom.str();
        }
        for (size_t b : gi) {
            weight = weight / (germs[b]->m + Scalar(1));
            label += (label.empty() ? "" : " ^ ") + germs[b]->atom.str();
        }
        if (trace)
            trace->push_back("stratum " + label + ": chi = " + std::to_string(chi) +
                             ", term = " + weight.str());
        total += weight;
    }
    return total;
}

StratumData make_stratum_data(const ResolvedData& rd, const ConstructibleSet& fiber, int fiber_base_level,
                              const ConeKey& p) {
    StratumData sd;
    sd.rd = &rd;
    sd.eval_fan = rd.fan().get();
    sd.fiber_base = rd.tower.fan(fiber_base_level).get();
    sd.p = p;
    for (const auto& a : fiber.atoms) sd.fiber_rays.insert(a.ray);
    return sd;
}

} // namespace

Scalar local_value(const ResolutionTower& tower, const SystemDivisor& D, const ConstructibleSet& S,
                   const ConeKey& p, std::vector<std::string>* trace) {
    ConstructibleSet fiber = restrict_to_point(tower, S, p);
    ResolvedData rd = resolve(tower, D, fiber);
    StratumData sd = make_stratum_data(rd, fiber, 0, p);
    return stratum_sum(sd, trace);
}

Report check_change_of_variables(const ResolutionTower& tower, const SystemDivisor& D,
                                 const ConstructibleSet& S, int i, int j) {
    if (i < 0 || i > j || j > tower.top())
        fail(errc::validation_error, "change-of-variables levels must satisfy 0 <= i <= j <= top");
    Report rep;
    rep.title = "change-of-variables level " + std::to_string(i) + " vs " + std::to_string(j);

    auto K = relative_canonical(tower, i, j);
    SystemDivisor D_aug = D;
    for (const auto& [ray, a] : K) D_aug.add(Atom::boundary(ray), Scalar(a));

    bool has_germ = D.has_germ() || S.has_germ();
    bool class_route = !has_germ && tower.fan(i)->complete() && tower.fan(j)->complete() &&
                       tower.fan(i)->smooth() && tower.fan(j)->smooth();
    if (class_route) {
        ChowClass lhs = evaluate_manifestation(resolve_at(tower, D, S, i, i));
        ChowClass rhs = evaluate_manifestation(resolve_at(tower, D_aug, S, j, j));
        for (int k = j - 1; k >= i; --k) rhs = pushforward(tower.step(k), rhs);
        ReportLine line;
        line.label = "manifestation at level " + std::to_string(i);
        line.lhs = inline_class(lhs);
        line.rhs = inline_class(rhs);
        line.pass = chow_equal(lhs, rhs);
        rep.lines.push_back(std::move(line));
    }

    // local values over every fixed point of level i
    const Fan& fi = *tower.fan(i);
    for (const auto& p : fi.max_cones()) {
        if (static_cast<int>(p.size()) != fi.rank()) continue;
        ReportLine line;
        line.label = "local value at " + fi.cone_str(p);
        ConstructibleSet fiber;
        try {
            fiber = restrict_to_point(tower, S, p, i);
        } catch (const error& e) {
            if (e.code() == errc::empty_fiber) {
                line.note = "no divisorial fiber over this point; skipped";
                line.pass = true;
                rep.lines.push_back(std::move(line));
                continue;
            }
            throw;
        }
        ResolvedData lhs_rd = resolve_at(tower, D, fiber, i, tower.top());
        ResolvedData rhs_rd = resolve_at(tower, D_aug, fiber, j, tower.top());
        StratumData lsd = make_stratum_data(lhs_rd, fiber, i, p);
        StratumData rsd = make_stratum_data(rhs_rd, fiber, i, p);
        Scalar lhs = stratum_sum(lsd, nullptr);
        Scalar rhs = stratum_sum(rsd, nullptr);
        line.lhs = lhs.str();
        line.rhs = rhs.str();
        line.pass = lhs == rhs;
        rep.lines.push_back(std::move(line));
    }
    return rep;
}

namespace {

// Closed supports of the resolved atoms of S at the top level, for the
// disjointness test of additivity.
struct Support {
    std::set<Vec> rays;
    std::vector<const Atom*> germs;
};

Support resolved_support(const ResolutionTower& tower, const ConstructibleSet& S) {
    Support sup;
    if (S.is_ambient()) fail(errc::not_disjoint, "the ambient set meets every nonempty set");
    ResolvedData rd = resolve_at(tower, SystemDivisor{}, S, 0, tower.top());
    for (const auto& comp : rd.comps) {
        if (!comp.in_S) continue;
        if (comp.atom.kind == Atom::Kind::boundary) sup.rays.insert(comp.atom.ray);
        else
            for (const auto& a : S.atoms)
                if (a.kind == Atom::Kind::germ && a.germ_name == comp.atom.germ_name)
                    sup.germs.push_back(&a);
    }
    return sup;
}

} // namespace

Report additivity_check(const ResolutionTower& tower, const SystemDivisor& D,
                        const ConstructibleSet& S1, const ConstructibleSet& S2) {
    const Fan& topfan = *tower.fan(tower.top());
    Support a = resolved_support(tower, S1);
    Support b = resolved_support(tower, S2);
    for (const auto& v : a.rays)
        for (const auto& w : b.rays) {
            if (v == w) fail(errc::not_disjoint, "shared prime divisor " + vec_str(v));
            ConeKey pair{topfan.ray_index(v), topfan.ray_index(w)};
            std::sort(pair.begin(), pair.end());
            if (topfan.has_cone(pair))
                fail(errc::not_disjoint,
                     "supports meet: " + vec_str(v) + " and " + vec_str(w) + " span a cone");
        }
    auto germ_ray_meet = [&](const std::vector<const Atom*>& germs, const std::set<Vec>& rays) {
        for (const Atom* g : germs)
            for (const auto& v : rays)
                if (newton_data(g->polygon, v).second > 0)
                    fail(errc::not_disjoint, "strict transform of " + g->germ_name + " meets " + vec_str(v));
    };
    germ_ray_meet(a.germs, b.rays);
    germ_ray_meet(b.germs, a.rays);
    for (const Atom* g : a.germs)
        for (const Atom* h : b.germs)
            if (g->germ_name == h->germ_name)
                fail(errc::not_disjoint, "shared germ " + g->germ_name);

    ConstructibleSet both;
    both.atoms = S1.atoms;
    both.atoms.insert(S2.atoms.begin(), S2.atoms.end());

    CelestialClass iu = integrate(tower, D, both);
    CelestialClass i1 = integrate(tower, D, S1);
    CelestialClass i2 = integrate(tower, D, S2);

    Report rep;
    rep.title = "additivity over disjoint union";
    for (int k = 0; k <= tower.top(); ++k) {
        ChowClass sum = i1.at(k) + i2.at(k);
        ReportLine line;
        line.label = "manifestation at level " + std::to_string(k);
        line.lhs = inline_class(iu.at(k));
        line.rhs = inline_class(sum);
        line.pass = chow_equal(iu.at(k), sum);
        rep.lines.push_back(std::move(line));
    }
    return rep;
}

} // namespace celeste
