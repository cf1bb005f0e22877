#pragma once

#include "celeste/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace celeste {

// Lattice vector in Z^n, n = fan rank (1..3). Rays are stored primitive.
using Vec = std::vector<long long>;

long long igcd(long long a, long long b);

bool is_zero(const Vec& v);

// v / gcd(|v_i|); errors with ZeroVector on v = 0. Idempotent.
Vec primitive_vector(const Vec& v);

bool is_primitive(const Vec& v);

long long dot(const Vec& a, const Vec& b);

std::string vec_str(const Vec& v); // "(1,0)" / "(2,-3,1)"
bool parse_vec(const std::string& text, Vec& out);

// --- exact linear algebra on small matrices -----------------------------

using QMat = std::vector<std::vector<Rational>>;

// Solves sum_j x_j * cols[j] = target exactly (cols linearly independent,
// possibly fewer columns than rows). Returns nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_columns(const std::vector<Vec>& cols, const Vec& target);

// Rank of an integer matrix given by columns.
int int_rank(const std::vector<Vec>& cols);

// Unimodular U (n x n, |det| = 1) with U * A upper triangular: (U*A)[i][j] = 0
// for i > j. A is given by k columns of length n with independent columns.
std::vector<Vec> unimodular_clear(const std::vector<Vec>& cols, int n);

// Inverse of a unimodular integer matrix (rows), again integer.
std::vector<Vec> unimodular_inverse(const std::vector<Vec>& rows);

// Extends the columns of a smooth-cone matrix to a lattice basis: returns the
// full n x n unimodular matrix [cols | complement] by columns. The complement
// is chosen deterministically via the unimodular_clear decomposition.
std::vector<Vec> extend_to_basis(const std::vector<Vec>& cols, int n);

// Feasibility of { x : sum a_i u_i = sum b_j v_j, a_i >= 1, b_j >= 1 }.
// Used for the pairwise relative-interior test of fan validation.
bool relint_intersect(const std::vector<Vec>& us, const std::vector<Vec>& vs, int n);

} // namespace celeste
