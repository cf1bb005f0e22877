#include "celeste/lattice.hpp"

#include "celeste/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace celeste {

long long igcd(long long a, long long b) {
    return std::gcd(std::llabs(a), std::llabs(b));
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

Vec primitive_vector(const Vec& v) {
    if (is_zero(v)) fail(errc::zero_vector, "cannot normalize the zero vector");
    long long g = 0;
    for (long long x : v) g = igcd(g, x);
    Vec out(v);
    for (auto& x : out) x /= g;
    return out;
}

bool is_primitive(const Vec& v) {
    if (is_zero(v)) return false;
    long long g = 0;
    for (long long x : v) g = igcd(g, x);
    return g == 1;
}

long long dot(const Vec& a, const Vec& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string vec_str(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

bool parse_vec(const std::string& text, Vec& out) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
    s = s.substr(1, s.size() - 2);
    out.clear();
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) return false;
        size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (size_t j = i; j < part.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(part[j]))) return false;
        out.push_back(std::stoll(part));
    }
    return !out.empty();
}

std::optional<std::vector<Rational>> solve_columns(const std::vector<Vec>& cols, const Vec& target) {
    size_t n = target.size(), k = cols.size();
    QMat aug(n, std::vector<Rational>(k + 1, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) aug[i][j] = Rational(cols[j][i]);
        aug[i][k] = Rational(target[i]);
    }
    std::vector<int> pivot_row(k, -1);
    size_t row = 0;
    for (size_t col = 0; col < k && row < n; ++col) {
        size_t p = row;
        while (p < n && aug[p][col] == 0) ++p;
        if (p == n) continue;
        std::swap(aug[p], aug[row]);
        Rational inv = Rational(1) / aug[row][col];
        for (auto& x : aug[row]) x *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == row || aug[r][col] == 0) continue;
            Rational f = aug[r][col];
            for (size_t c = col; c <= k; ++c) aug[r][c] -= f * aug[row][c];
        }
        pivot_row[col] = static_cast<int>(row);
        ++row;
    }
    // consistency: rows without pivots must have zero rhs
    for (size_t r = row; r < n; ++r)
        if (aug[r][k] != 0) return std::nullopt;
    std::vector<Rational> x(k, Rational(0));
    for (size_t col = 0; col < k; ++col) {
        if (pivot_row[col] < 0) return std::nullopt; // dependent columns unsupported
        x[col] = aug[static_cast<size_t>(pivot_row[col])][k];
    }
    return x;
}

int int_rank(const std::vector<Vec>& cols) {
    if (cols.empty()) return 0;
    size_t n = cols[0].size();
    QMat m(n, std::vector<Rational>(cols.size()));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < cols.size(); ++j) m[i][j] = Rational(cols[j][i]);
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols.size() && row < n; ++col) {
        size_t p = row;
        while (p < n && m[p][col] == 0) ++p;
        if (p == n) continue;
        std::swap(m[p], m[row]);
        for (size_t r = row + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[row][col];
            for (size_t c = col; c < cols.size(); ++c) m[r][c] -= f * m[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<Vec> unimodular_clear(const std::vector<Vec>& cols, int n) {
    size_t k = cols.size(), nn = static_cast<size_t>(n);
    // working copy of A by rows, U starts as identity
    std::vector<Vec> a(nn, Vec(k, 0));
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < nn; ++i) a[i][j] = cols[j][i];
    std::vector<Vec> u(nn, Vec(nn, 0));
    for (size_t i = 0; i < nn; ++i) u[i][i] = 1;

    auto negate_row = [&](size_t r) {
        for (auto& x : a[r]) x = -x;
        for (auto& x : u[r]) x = -x;
    };
    auto swap_rows = [&](size_t r1, size_t r2) {
        std::swap(a[r1], a[r2]);
        std::swap(u[r1], u[r2]);
    };
    auto addmul = [&](size_t dst, size_t src, long long q) {
        for (size_t c = 0; c < k; ++c) a[dst][c] += q * a[src][c];
        for (size_t c = 0; c < nn; ++c) u[dst][c] += q * u[src][c];
    };

    size_t pivot = 0;
    for (size_t col = 0; col < k && pivot < nn; ++col) {
        for (;;) {
            size_t best = nn;
            for (size_t r = pivot; r < nn; ++r)
                if (a[r][col] != 0 && (best == nn || std::llabs(a[r][col]) < std::llabs(a[best][col])))
                    best = r;
            if (best == nn) break;
            if (best != pivot) swap_rows(pivot, best);
            bool reduced = true;
            for (size_t r = pivot + 1; r < nn; ++r) {
                if (a[r][col] == 0) continue;
                addmul(r, pivot, -(a[r][col] / a[pivot][col]));
                if (a[r][col] != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (pivot < nn && a[pivot][col] != 0) {
            if (a[pivot][col] < 0) negate_row(pivot);
            ++pivot;
        }
    }
    return u;
}

std::vector<Vec> unimodular_inverse(const std::vector<Vec>& rows) {
    size_t n = rows.size();
    QMat aug(n, std::vector<Rational>(2 * n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = Rational(rows[i][j]);
        aug[i][n + i] = Rational(1);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t p = col;
        while (p < n && aug[p][col] == 0) ++p;
        if (p == n) fail(errc::validation_error, "matrix not invertible");
        std::swap(aug[p], aug[col]);
        Rational inv = Rational(1) / aug[col][col];
        for (auto& x : aug[col]) x *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Rational f = aug[r][col];
            for (size_t c = 0; c < 2 * n; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    std::vector<Vec> out(n, Vec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Rational v = aug[i][n + j];
            if (v.get_den() != 1) fail(errc::validation_error, "matrix inverse is not integral");
            out[i][j] = static_cast<long long>(v.get_num().get_si());
        }
    return out;
}

std::vector<Vec> extend_to_basis(const std::vector<Vec>& cols, int n) {
    size_t k = cols.size();
    std::vector<Vec> u = unimodular_clear(cols, n);
    std::vector<Vec> uinv = unimodular_inverse(u);
    // B = [cols | last n-k columns of U^{-1}]
    std::vector<Vec> basis(cols);
    for (size_t j = k; j < static_cast<size_t>(n); ++j) {
        Vec w(static_cast<size_t>(n));
        for (size_t i = 0; i < static_cast<size_t>(n); ++i) w[i] = uinv[i][j];
        basis.push_back(std::move(w));
    }
    return basis;
}

namespace {

// Linear expression c0 + sum c_i x_i with rational coefficients.
using LinExpr = std::vector<Rational>; // index 0 = constant term

bool fourier_motzkin(std::vector<LinExpr> ge, size_t nvars) {
    // constraints: expr >= 0. Eliminate variables one by one.
    for (size_t v = nvars; v-- > 0;) {
        std::vector<LinExpr> pos, neg, zero;
        for (auto& e : ge) {
            Rational c = e[v + 1];
            if (c > 0) pos.push_back(e);
            else if (c < 0) neg.push_back(e);
            else zero.push_back(e);
        }
        std::vector<LinExpr> next = std::move(zero);
        for (const auto& p : pos)
            for (const auto& q : neg) {
                // q has negative coeff: combine to eliminate x_v
                Rational cp = p[v + 1], cq = -q[v + 1];
                LinExpr e(v + 1, Rational(0));
                for (size_t i = 0; i <= v; ++i) e[i] = p[i] * cq + q[i] * cp;
                next.push_back(std::move(e));
            }
        for (auto& e : next) e.resize(v + 1);
        ge = std::move(next);
    }
    for (const auto& e : ge)
        if (e[0] < 0) return false;
    return true;
}

} // namespace

bool relint_intersect(const std::vector<Vec>& us, const std::vector<Vec>& vs, int n) {
    // feasibility of sum a_i u_i - sum b_j v_j = 0, a_i >= 1, b_j >= 1
    size_t na = us.size(), nb = vs.size(), nv = na + nb;
    // Gaussian elimination on the n equalities to substitute pivot variables.
    QMat eq(static_cast<size_t>(n), std::vector<Rational>(nv + 1, Rational(0)));
    for (int r = 0; r < n; ++r) {
        for (size_t j = 0; j < na; ++j) eq[static_cast<size_t>(r)][j + 1] = Rational(us[j][static_cast<size_t>(r)]);
        for (size_t j = 0; j < nb; ++j) eq[static_cast<size_t>(r)][na + j + 1] = Rational(-vs[j][static_cast<size_t>(r)]);
    }
    // expr layout: [const, x_1..x_nv]; equalities expr == 0
    std::vector<int> pivot_of_row;
    std::vector<bool> is_pivot(nv + 1, false);
    size_t row = 0;
    for (size_t col = 1; col <= nv && row < static_cast<size_t>(n); ++col) {
        size_t p = row;
        while (p < static_cast<size_t>(n) && eq[p][col] == 0) ++p;
        if (p == static_cast<size_t>(n)) continue;
        std::swap(eq[p], eq[row]);
        Rational inv = Rational(1) / eq[row][col];
        for (auto& x : eq[row]) x *= inv;
        for (size_t r = 0; r < static_cast<size_t>(n); ++r) {
            if (r == row || eq[r][col] == 0) continue;
            Rational f = eq[r][col];
            for (size_t c = 0; c <= nv; ++c) eq[r][c] -= f * eq[row][c];
        }
        pivot_of_row.push_back(static_cast<int>(col));
        is_pivot[col] = true;
        ++row;
    }
    for (size_t r = row; r < static_cast<size_t>(n); ++r)
        if (eq[r][0] != 0) return false; // inconsistent (cannot happen here: rhs 0)

    // inequalities x_i - 1 >= 0, substituting pivot variables
    std::vector<size_t> free_vars;
    for (size_t v = 1; v <= nv; ++v)
        if (!is_pivot[v]) free_vars.push_back(v);
    std::vector<LinExpr> ge;
    for (size_t v = 1; v <= nv; ++v) {
        LinExpr e(free_vars.size() + 1, Rational(0));
        if (is_pivot[v]) {
            // find its row: x_v = -const - sum free coeffs
            size_t r = 0;
            while (pivot_of_row[r] != static_cast<int>(v)) ++r;
            e[0] = -eq[r][0];
            for (size_t f = 0; f < free_vars.size(); ++f) e[f + 1] = -eq[r][free_vars[f]];
        } else {
            size_t f = 0;
            while (free_vars[f] != v) ++f;
            e[f + 1] = Rational(1);
        }
        e[0] -= 1; // x_v >= 1
        ge.push_back(std::move(e));
    }
    return fourier_motzkin(std::move(ge), free_vars.size());
}

} // namespace celeste
