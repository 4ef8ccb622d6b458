#include "lgising/windability.hpp"

#include "lgising/bigmath.hpp"

#include <doctest.h>

#include <cmath>

using namespace lgising;
using doctest::Approx;

TEST_CASE("double factorial") {
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(5) == 15);
    CHECK(double_factorial(6) == 48);
    CHECK(double_factorial(25) == BigInt("7905853580625"));
    CHECK_THROWS_AS(double_factorial(-2), std::domain_error);
}

TEST_CASE("telephone numbers") {
    long expect[] = {1, 1, 2, 4, 10, 26, 76, 232, 764};
    for (long q = 0; q <= 8; ++q) CHECK(involution_count(q) == expect[q]);
}

TEST_CASE("pairing matrix small cases") {
    RationalMatrix A2 = matrix_A(2);
    CHECK(A2(0, 0) == 1);
    CHECK(A2(0, 1) == 0);
    CHECK(A2(1, 0) == 0);
    CHECK(A2(1, 1) == 1);

    RationalMatrix A3 = matrix_A(3);
    CHECK(A3(0, 0) == 3);
    CHECK(A3(0, 1) == 0);
    CHECK(A3(1, 0) == 1);
    CHECK(A3(1, 1) == 2);

    RationalMatrix A5 = matrix_A(5);
    CHECK(A5(0, 0) == 15);
    CHECK(A5(1, 0) == 3);
    CHECK(A5(1, 1) == 12);
    CHECK(A5(2, 0) == 3);
    CHECK(A5(2, 1) == 6);
    CHECK(A5(2, 2) == 6);

    CHECK_THROWS_AS(matrix_A(0), std::domain_error);
}

TEST_CASE("pairing matrix row sums are (2n -/+ 1)!!") {
    for (int m = 1; m <= 24; ++m) {
        int n = m / 2;
        RationalMatrix A = matrix_A(m);
        BigRat want{m % 2 == 0 ? double_factorial(2 * n - 1) : double_factorial(2 * n + 1)};
        for (int i = 0; i <= n; ++i) {
            BigRat row = 0;
            for (int j = 0; j <= n; ++j) row += A(i, j);
            CHECK(row == want);
        }
        CHECK(A.lower_triangular_positive_diagonal());
    }
}

TEST_CASE("reduced matrix and the entrywise equivalence") {
    RationalMatrix B2 = matrix_B(2);
    CHECK(B2(0, 0) == 1);
    CHECK(B2(0, 1) == 0);
    CHECK(B2(1, 1) == 1);

    // the off-diagonal entry is forced to zero by the equivalence with the
    // pairing matrix (floor semantics in the binomial index)
    RationalMatrix B3 = matrix_B(3);
    CHECK(B3(0, 0) == 1);
    CHECK(B3(0, 1) == 0);
    CHECK(B3(1, 0) == 1);
    CHECK(B3(1, 1) == 1);

    for (int m = 1; m <= 24; ++m) {
        int n = m / 2;
        RationalMatrix A = matrix_A(m), B = matrix_B(m);
        BigInt s = m % 2 == 0 ? double_factorial(2 * n - 1) : double_factorial(2 * n + 1);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                BigRat lhs = A(i, j) * BigRat(binomial(m, i));
                BigRat rhs = BigRat(s) * BigRat(BigInt(1) << j) * BigRat(binomial(n, j)) * B(i, j);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("shift identity for the reduced matrix") {
    for (int m = 1; m <= 24; ++m) {
        int n = m / 2;
        RationalMatrix B = matrix_B(m);
        for (int k = 1; k <= n && m - 2 * k >= 1; ++k) {
            RationalMatrix Bs = matrix_B(m - 2 * k);
            for (int i = k; i <= n; ++i)
                for (int j = k; j <= n; ++j) {
                    int nn = (m - 2 * k) / 2;
                    if (i - k <= nn && j - k <= nn) CHECK(B(i, j) == Bs(i - k, j - k));
                }
        }
    }
}

TEST_CASE("cone generators") {
    auto v = cone_generators(4);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == std::vector<BigInt>{1, 4, 6});
    CHECK(v[2] == std::vector<BigInt>{0, 0, 1});
    // unit lower-triangular as columns
    for (int m = 1; m <= 24; ++m) {
        auto gens = cone_generators(m);
        int n = m / 2;
        for (int k = 0; k <= n; ++k) {
            CHECK(gens[k][k] == 1);
            for (int i = 0; i < k; ++i) CHECK(gens[k][i] == 0);
        }
        // v_0 is the binomial vector z(1)
        for (int i = 0; i <= n; ++i) CHECK(gens[0][i] == binomial(m, i));
    }
}

TEST_CASE("generator recurrence holds exactly") {
    for (int m = 1; m <= 24; ++m) CHECK(verify_recurrence(m));
}

TEST_CASE("cone membership of z(h) via the truncated expansion") {
    CHECK(verify_cone_membership(0.0, 6, 5));
    CHECK(verify_cone_membership(1.0, 4, 30));
    CHECK(verify_cone_membership(0.3, 5, 20));
}

TEST_CASE("the generators lie in the cone of the reduced matrix") {
    // For each k, the zero-padded witness built from the all-ones solution at
    // arity m-2k reproduces v_k exactly: s_{m-2k} * B_m yhat = v_k, yhat >= 0.
    for (int m = 1; m <= 24; ++m) {
        int n = m / 2;
        RationalMatrix B = matrix_B(m);
        auto gens = cone_generators(m);
        for (int k = 0; k <= n && m - 2 * k >= 1; ++k) {
            int mm = m - 2 * k;
            int nn = mm / 2;
            BigInt sk = mm % 2 == 0 ? double_factorial(2 * nn - 1) : double_factorial(2 * nn + 1);
            std::vector<BigRat> yhat(n + 1, BigRat(0));
            for (int j = k; j <= n; ++j) {
                int jj = j - k;
                if (jj <= nn)
                    yhat[j] = BigRat(BigInt(1) << jj) * BigRat(binomial(nn, jj)) / BigRat(sk);
            }
            for (const auto& y : yhat) CHECK(y >= 0);
            for (int i = 0; i <= n; ++i) {
                BigRat lhs = 0;
                for (int j = 0; j <= n; ++j) lhs += B(i, j) * yhat[j];
                CHECK(lhs * BigRat(sk) == BigRat(gens[k][i]));
            }
        }
    }
}

TEST_CASE("solve_pinning forward substitution") {
    // A_2 is the identity
    auto c1 = solve_pinning(2, std::vector<BigRat>{1, 1});
    CHECK(c1.feasible);
    CHECK(c1.x[0] == Approx(1.0));
    CHECK(c1.x[1] == Approx(1.0));

    double e2b = std::exp(2 * 0.8);
    auto c2 = solve_pinning(2, std::vector<double>{1.0, e2b});
    CHECK(c2.feasible);
    CHECK(c2.x[1] == Approx(e2b));
    CHECK(c2.residual <= 1e-12);

    // A_3 = [[3,0],[1,2]]: x = [1/3, (c - 1/3)/2], feasible iff c >= 1/3
    auto c3 = solve_pinning(3, std::vector<BigRat>{1, BigRat(1, 2)});
    CHECK(c3.feasible);
    CHECK(c3.exact_x.has_value());
    CHECK((*c3.exact_x)[0] == BigRat(1, 3));
    CHECK((*c3.exact_x)[1] == BigRat(1, 12));
    auto c4 = solve_pinning(3, std::vector<BigRat>{1, BigRat(1, 4)});
    CHECK(!c4.feasible);
    CHECK((*c4.exact_x)[1] == BigRat(-1, 24));

    CHECK_THROWS_AS(solve_pinning(3, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("windability matrix row sums are telephone numbers") {
    for (int m = 1; m <= 24; ++m) {
        int n = m / 2;
        RationalMatrix W = windability_matrix(m);
        BigRat want{involution_count(m)};
        for (int i = 0; i <= n; ++i) {
            BigRat row = 0;
            for (int j = 0; j <= n; ++j) row += W(i, j);
            CHECK(row == want);
        }
        CHECK(W.lower_triangular_positive_diagonal());
    }
    RationalMatrix W3 = windability_matrix(3);
    CHECK(W3(0, 0) == 4);
    CHECK(W3(1, 0) == 2);
    CHECK(W3(1, 1) == 2);
}

TEST_CASE("Ising signatures are windable across the grid") {
    double worst_residual = 0.0;
    for (int d = 1; d <= 8; ++d)
        for (double beta : {0.0, 0.5, 2.0})
            for (double mu : {-1.0, 0.0, 1.0}) {
                auto rep = is_windable(ising_signature(beta, mu, d), WindMode::floating);
                CHECK(rep.windable);
                CHECK(rep.worst.margin >= -1e-12);
                for (const auto& cert : rep.certificates)
                    worst_residual = std::max(worst_residual, cert.residual);
            }
    CHECK(worst_residual <= 1e-12);
}

TEST_CASE("arity-0 signature has no pinnings and is windable") {
    auto rep = is_windable(signature_from_values({3.0}), WindMode::floating);
    CHECK(rep.windable);
    CHECK(rep.certificates.empty());
}

TEST_CASE("ferromagnetic arity-3 threshold sits at 2^{-1/2}") {
    auto w = [](double a) {
        return is_windable(signature_from_values({1, a, a, 1}), WindMode::floating).windable;
    };
    CHECK(w(0.71));
    CHECK(!w(0.70));

    // exact arithmetic puts the boundary at a^2 = 1/2
    auto r1 = is_windable(
        signature_from_rationals({BigRat(1), BigRat(71, 100), BigRat(71, 100), BigRat(1)}),
        WindMode::exact);
    CHECK(r1.windable);
    auto r2 = is_windable(
        signature_from_rationals({BigRat(1), BigRat(7, 10), BigRat(7, 10), BigRat(1)}),
        WindMode::exact);
    CHECK(!r2.windable);
    // the failing pinning is the full slice (0,3)
    CHECK(r2.worst.a == 0);
    CHECK(r2.worst.b == 3);
    CHECK(r2.worst.m == 3);
    CHECK((*r2.worst.exact_x)[1] == (BigRat(49, 100) - BigRat(1, 2)) / 2);

    // all-ones signature (beta = 0) is windable
    CHECK(is_windable(signature_from_rationals({BigRat(1), BigRat(1), BigRat(1), BigRat(1)}),
                      WindMode::exact)
              .windable);
}

TEST_CASE("windability margin is positive and continuous over beta >= 0") {
    double prev = 0.0;
    bool first = true;
    for (double beta = 0.0; beta <= 3.0; beta += 0.125) {
        auto rep = is_windable(ising_signature(beta, 0, 6), WindMode::floating);
        CHECK(rep.windable);
        CHECK(rep.worst.margin > 0.0);
        if (!first) CHECK(std::abs(rep.worst.margin - prev) < 0.5);  // no jumps on the grid
        prev = rep.worst.margin;
        first = false;
    }
}
