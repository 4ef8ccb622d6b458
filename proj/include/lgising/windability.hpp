#pragma once

#include "lgising/bigmath.hpp"
#include "lgising/signature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lgising {

// Dense matrix of exact rationals.
struct RationalMatrix {
    int rows = 0, cols = 0;
    std::vector<BigRat> a;

    RationalMatrix() = default;
    RationalMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
    BigRat& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const BigRat& operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }
    bool lower_triangular_positive_diagonal() const;
};

// The (n+1)x(n+1) pairing matrix, n = floor(m/2): entry (i,j) counts the
// perfect pairings of m objects, i of one type and m-i of the other (one
// singleton allowed when m is odd), with exactly j mixed pairs.  Row sums are
// (2n-1)!! for m = 2n and (2n+1)!! for m = 2n+1.
RationalMatrix matrix_A(int m);

// Reduced form: entries C(n-j, floor((i-j)/2)), zeroed for even m when i and
// j have opposite parity.  Related to matrix_A entrywise by
//   a_{ij} * C(m,i) = s_m * 2^j * C(n,j) * b_{ij},
// s_m the matrix_A row-sum constant.
RationalMatrix matrix_B(int m);

// Involution analogue of matrix_A: entry (i,j) counts the partitions of the m
// objects into pairs AND singletons with exactly j mixed pairs,
//   w_{ij} = C(i,j) C(m-i,j) j! I(i-j) I(m-i-j),
// I the telephone numbers.  Row sums are I(m).  This is the system behind
// the windability verdicts; see README for the distinction from matrix_A.
RationalMatrix windability_matrix(int m);

// Cone generators v_k[i] = C(m-2k, i-k) for k in [0,n]; as columns they form
// a lower-triangular matrix with unit diagonal.
std::vector<std::vector<BigInt>> cone_generators(int m);

// Exact check of the generator recurrence
//   i(m-i) v_{i,k} = (m-2k)(m-2k-1) v_{i,k+1} + k(m-k) v_{i,k}
// for all i,k in [0,n], with the k=n term carrying a zero coefficient, and of
// the nonnegativity of both coefficients.
bool verify_recurrence(int m);

// Builds the degree-J Taylor truncation of z(h)_i = C(m,i) e^{beta i(m-i)} as
// a nonnegative combination of the cone generators by iterating the
// recurrence, and checks the reconstruction against direct evaluation.
bool verify_cone_membership(double beta, int m, int truncation_order,
                            double rel_tol = 1e-8);

struct WindabilityCertificate {
    int m = 0;
    int a = 0, b = 0;  // pinning slice [f_a..f_b]
    std::vector<double> h;  // half-vector fed to the solver (K-normalized in float mode)
    std::vector<double> x;  // solution of the lower-triangular system
    bool feasible = false;
    double margin = 0.0;  // smallest entry of x
    std::optional<std::vector<BigRat>> exact_x;
    double residual = 0.0;  // max |Mx - h| / max|h|
};

// Unique solution of A_m x = h by forward substitution (A_m is lower
// triangular with positive diagonal); feasible iff min_i x_i >= -tol with
// tol = 0 in exact mode and 1e-12 in float mode.
WindabilityCertificate solve_pinning(int m, const std::vector<BigRat>& h);
WindabilityCertificate solve_pinning(int m, const std::vector<double>& h);

// Same solve against an arbitrary lower-triangular system (used with
// windability_matrix by is_windable).
WindabilityCertificate solve_lower_triangular(const RationalMatrix& M,
                                              const std::vector<BigRat>& h);
WindabilityCertificate solve_lower_triangular(const RationalMatrix& M,
                                              const std::vector<double>& h,
                                              double feas_tol = 1e-12);

enum class WindMode { exact, floating };

struct WindabilityReport {
    bool windable = false;
    WindabilityCertificate worst;  // pinning with the smallest margin
    std::vector<WindabilityCertificate> certificates;
    WindMode mode = WindMode::floating;
};

// Iterates every pinning (a,b), 0 <= a <= b <= d with m = b-a >= 1, forms the
// self-complementary product H(x) = G(x)G(x-bar) and solves the windability
// system for its half-vector; windable iff every pinning is feasible.  Exact
// mode requires a signature with exact rational values.
WindabilityReport is_windable(const Signature& sig, WindMode mode);

}  // namespace lgising
