#include "celeste/scalar.hpp"

#include "celeste/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace celeste {

const char* errc_name(errc code) {
    switch (code) {
    case errc::zero_vector: return "ZeroVector";
    case errc::unknown_cone: return "UnknownCone";
    case errc::ray_exists: return "RayExists";
    case errc::outside_support: return "OutsideSupport";
    case errc::not_complete: return "NotComplete";
    case errc::model_mismatch: return "ModelMismatch";
    case errc::not_smooth: return "NotSmooth";
    case errc::not_snc: return "NotSNC";
    case errc::non_proper_degree: return "NonProperDegree";
    case errc::not_resolved: return "NotResolved";
    case errc::non_convergent: return "NonConvergent";
    case errc::empty_fiber: return "EmptyFiber";
    case errc::not_disjoint: return "NotDisjoint";
    case errc::non_toric_atom: return "NonToricAtom";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    }
    return "UnknownError";
}

bool parse_rational(const std::string& text, Rational& out) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) return false;
    auto digits_ok = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den)) return false;
    mpz_class n(num), d(den);
    if (d == 0) return false;
    out = Rational(n, d);
    out.canonicalize();
    return true;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& constant) {
    if (constant != 0) coeffs_ = {constant};
}

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::var() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<size_t>(i)];
}

const Rational& Poly::lead() const { return coeffs_.back(); }

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rational> c(coeffs_);
    for (auto& x : c) x = -x;
    return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(c));
}

Poly Poly::operator*(const Rational& r) const {
    if (r == 0) return Poly();
    std::vector<Rational> c(coeffs_);
    for (auto& x : c) x *= r;
    return Poly(std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
    if (o.is_zero()) fail(errc::validation_error, "polynomial division by zero");
    std::vector<Rational> rem(coeffs_);
    int dn = static_cast<int>(rem.size()) - 1;
    int dd = o.degree();
    if (dn < dd) return {Poly(), *this};
    std::vector<Rational> quot(static_cast<size_t>(dn - dd + 1), Rational(0));
    for (int k = dn - dd; k >= 0; --k) {
        Rational q = rem[static_cast<size_t>(k + dd)] / o.coeffs_[static_cast<size_t>(dd)];
        quot[static_cast<size_t>(k)] = q;
        if (q == 0) continue;
        for (int i = 0; i <= dd; ++i)
            rem[static_cast<size_t>(k + i)] -= q * o.coeffs_[static_cast<size_t>(i)];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::monic() const {
    if (is_zero()) return Poly();
    return *this * (Rational(1) / lead());
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = r.monic(); // keeps coefficient growth down
    }
    return a.monic();
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

namespace {

std::string coeff_str(const Rational& c) {
    std::string s = c.get_str();
    if (s.find('/') != std::string::npos) return "(" + s + ")";
    return s;
}

} // namespace

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeff(i);
        if (c == 0) continue;
        bool first = out.empty();
        Rational a = c < 0 ? Rational(-c) : c;
        std::string sign = first ? (c < 0 ? "-" : "") : (c < 0 ? "-" : "+");
        std::string mono = i == 0 ? "" : (i == 1 ? "m" : "m^" + std::to_string(i));
        std::string body;
        if (i == 0 || a != 1) body = coeff_str(a);
        out += sign + body + mono;
    }
    return out;
}

std::pair<std::vector<std::pair<Rational, int>>, Poly> factor_rational_roots(const Poly& p) {
    if (p.is_zero()) fail(errc::validation_error, "cannot factor the zero polynomial");
    // Clear denominators to a primitive integer polynomial, then use the
    // rational root theorem on it.
    Poly work = p;
    std::vector<std::pair<Rational, int>> roots;
    while (work.degree() >= 1) {
        mpz_class lcm(1);
        for (int i = 0; i <= work.degree(); ++i) {
            mpz_class d = work.coeff(i).get_den();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
            lcm = lcm / g * d;
        }
        Poly zp = work * Rational(lcm);
        mpz_class a0 = zp.coeff(0).get_num();
        mpz_class an = zp.lead().get_num();
        Rational found;
        bool have = false;
        if (a0 == 0) {
            found = Rational(0);
            have = true;
        } else {
            // enumerate divisors p | a0, q | an
            mpz_class pa = abs(a0), qa = abs(an);
            std::vector<mpz_class> ps, qs;
            for (mpz_class d(1); d * d <= pa; ++d)
                if (pa % d == 0) { ps.push_back(d); ps.push_back(pa / d); }
            for (mpz_class d(1); d * d <= qa; ++d)
                if (qa % d == 0) { qs.push_back(d); qs.push_back(qa / d); }
            for (const auto& pn : ps) {
                for (const auto& qn : qs) {
                    for (int sgn : {1, -1}) {
                        Rational cand(sgn * pn, qn);
                        cand.canonicalize();
                        if (zp.eval(cand) == 0) {
                            found = cand;
                            have = true;
                            break;
                        }
                    }
                    if (have) break;
                }
                if (have) break;
            }
        }
        if (!have) break;
        // divide out (m - found) with multiplicity
        Poly lin(std::vector<Rational>{-found, Rational(1)});
        int mult = 0;
        for (;;) {
            auto [q, r] = work.divmod(lin);
            if (!r.is_zero()) break;
            work = q;
            ++mult;
        }
        roots.emplace_back(found, mult);
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return {roots, work};
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::var() { return Scalar(Poly::var()); }

Scalar Scalar::ratio(const Poly& num, const Poly& den) {
    if (den.is_zero()) fail(errc::validation_error, "scalar with zero denominator");
    Scalar s(num, den, true);
    s.normalize();
    return s;
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    Rational lead = den_.lead();
    num_ = num_ * (Rational(1) / lead);
    den_ = den_ * (Rational(1) / lead);
}

Rational Scalar::as_rational() const {
    if (!is_rational()) fail(errc::validation_error, "scalar is not a plain rational: " + str());
    return num_.coeff(0);
}

Poly Scalar::as_polynomial() const {
    if (!is_polynomial()) fail(errc::validation_error, "scalar is not polynomial: " + str());
    return num_;
}

Scalar Scalar::operator+(const Scalar& o) const {
    return ratio(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar s(-num_, den_, true);
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    return ratio(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) fail(errc::validation_error, "scalar division by zero");
    return ratio(num_ * o.den_, den_ * o.num_);
}

Rational Scalar::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d == 0) fail(errc::validation_error, "evaluated scalar at a pole");
    return num_.eval(x) / d;
}

std::string Scalar::str() const {
    if (den_.degree() == 0) return num_.str();
    auto [roots, rest] = factor_rational_roots(den_);
    // Rescale each monic factor (m + p/q) to the primitive form (q*m + p),
    // folding the scale into the numerator.
    Poly num = num_;
    std::vector<std::pair<Poly, int>> factors;
    for (const auto& [root, mult] : roots) {
        mpz_class q = root.get_den();
        Poly fac(std::vector<Rational>{Rational(-root.get_num()), Rational(q)});
        factors.emplace_back(fac, mult);
        for (int i = 0; i < mult; ++i) num = num * Rational(q);
    }
    // Clear numerator denominators: num = ni / d with ni integer.
    mpz_class lcm(1);
    for (int i = 0; i <= num.degree(); ++i) {
        mpz_class d = num.coeff(i).get_den(), g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
        lcm = lcm / g * d;
    }
    Poly ni = num * Rational(lcm);
    mpz_class dscale = lcm;
    if (!rest.is_zero() && rest.degree() == 0) {
        // constant leftover folds into the numerator scale
        Rational c = rest.coeff(0);
        ni = ni * Rational(c.get_den());
        dscale *= c.get_num();
        rest = Poly();
    }
    std::string nstr = ni.str();
    bool multi_term = false;
    {
        int terms = 0;
        for (int i = 0; i <= ni.degree(); ++i)
            if (ni.coeff(i) != 0) ++terms;
        multi_term = terms > 1;
    }
    if (multi_term) nstr = "(" + nstr + ")";
    std::vector<std::string> units;
    if (dscale != 1) units.push_back(dscale.get_str());
    for (const auto& [fac, mult] : factors) {
        std::string u = "(" + fac.str() + ")";
        if (mult > 1) u += "^" + std::to_string(mult);
        units.push_back(u);
    }
    if (!rest.is_zero() && rest.degree() > 0) units.push_back("(" + rest.str() + ")");
    std::string dstr;
    if (units.size() == 1) {
        dstr = units[0];
        if (dstr.empty() || dstr[0] != '(') dstr = "(" + dstr + ")";
    } else {
        std::string body;
        for (const auto& u : units) body += u;
        dstr = "(" + body + ")";
    }
    return nstr + "/" + dstr;
}

bool parse_linear_scalar(const std::string& text, Scalar& out) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) return false;
    // split into signed terms at top level (parentheses only wrap rationals)
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '+' || c == '-') && depth == 0 && i > 0 && s[i - 1] != '(' && s[i - 1] != '+' && s[i - 1] != '-') {
            terms.push_back(cur);
            cur.clear();
        }
        cur += c;
    }
    if (depth != 0) return false;
    terms.push_back(cur);
    Scalar acc(0);
    for (auto term : terms) {
        if (term.empty()) return false;
        bool neg = term[0] == '-';
        if (term[0] == '+' || term[0] == '-') term = term.substr(1);
        if (term.empty()) return false;
        bool has_m = false;
        if (term.back() == 'm') {
            has_m = true;
            term.pop_back();
            if (!term.empty() && term.back() == '*') term.pop_back();
        }
        if (!term.empty() && term.front() == '(' && term.back() == ')')
            term = term.substr(1, term.size() - 2);
        Rational c(1);
        if (!term.empty() && !parse_rational(term, c)) return false;
        Scalar t = has_m ? Scalar(Rational(c)) * Scalar::var() : Scalar(Rational(c));
        acc = neg ? acc - t : acc + t;
    }
    out = acc;
    return true;
}

} // namespace celeste
