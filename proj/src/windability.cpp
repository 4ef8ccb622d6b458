#include "lgising/windability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgising {

bool RationalMatrix::lower_triangular_positive_diagonal() const {
    for (int i = 0; i < rows; ++i) {
        if ((*this)(i, i) <= 0) return false;
        for (int j = i + 1; j < cols; ++j)
            if ((*this)(i, j) != 0) return false;
    }
    return true;
}

RationalMatrix matrix_A(int m) {
    if (m < 1) throw std::domain_error("matrix_A: m >= 1 required");
    int n = m / 2;
    RationalMatrix A(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= i; ++j) {
            BigInt base = binomial(i, j) * binomial(m - i, j) * factorial(j);
            if (m % 2 == 0) {
                if ((i - j) % 2 == 0)
                    A(i, j) = base * double_factorial(i - j - 1) *
                              double_factorial(m - i - j - 1);
            } else if ((i - j) % 2 == 0) {
                A(i, j) = base * double_factorial(i - j - 1) * double_factorial(m - i - j);
            } else {
                A(i, j) = base * double_factorial(i - j) * double_factorial(m - i - j - 1);
            }
        }
    }
    return A;
}

RationalMatrix matrix_B(int m) {
    if (m < 1) throw std::domain_error("matrix_B: m >= 1 required");
    int n = m / 2;
    RationalMatrix B(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (m % 2 == 0 && (i - j) % 2 != 0) continue;
            // floor division; i < j gives a negative index and a zero binomial
            long diff = i - j;
            long half = (diff >= 0) ? diff / 2 : -((-diff + 1) / 2);
            B(i, j) = binomial(n - j, half);
        }
    return B;
}

RationalMatrix windability_matrix(int m) {
    if (m < 1) throw std::domain_error("windability_matrix: m >= 1 required");
    int n = m / 2;
    RationalMatrix W(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j)
            W(i, j) = binomial(i, j) * binomial(m - i, j) * factorial(j) *
                      involution_count(i - j) * involution_count(m - i - j);
    return W;
}

std::vector<std::vector<BigInt>> cone_generators(int m) {
    int n = m / 2;
    std::vector<std::vector<BigInt>> v(n + 1, std::vector<BigInt>(n + 1));
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= n; ++i) v[k][i] = binomial(m - 2 * k, i - k);
    return v;
}

bool verify_recurrence(int m) {
    if (m < 1) throw std::domain_error("verify_recurrence: m >= 1 required");
    int n = m / 2;
    auto v = cone_generators(m);
    for (int k = 0; k <= n; ++k) {
        BigInt c_next = BigInt(m - 2 * k) * (m - 2 * k - 1);
        BigInt c_self = BigInt(k) * (m - k);
        // k = n: m-2k is 0 or 1, so the v_{k+1} coefficient vanishes and the
        // negative factor for even m never multiplies a nonzero vector.
        if (k < n && (c_next < 0 || c_self < 0)) return false;
        if (k == n && c_next != 0) return false;
        for (int i = 0; i <= n; ++i) {
            BigInt lhs = BigInt(i) * (m - i) * v[k][i];
            BigInt rhs = c_self * v[k][i];
            if (k < n) rhs += c_next * v[k + 1][i];
            if (k == n && v[k][i] != 0 && BigInt(i) * (m - i) != c_self) return false;
            if (lhs != rhs) return false;
        }
    }
    return true;
}

bool verify_cone_membership(double beta, int m, int truncation_order, double rel_tol) {
    if (beta < 0 || m < 1 || truncation_order < 1) return false;
    int n = m / 2;
    // Accumulate sum_{j<=J} beta^j/j! T^j e_0 in generator coordinates, where
    // T maps c_k to (m-2k)(m-2k-1) c_k on slot k+1 plus k(m-k) c_k on slot k.
    std::vector<double> coeff(n + 1, 0.0), term(n + 1, 0.0);
    term[0] = 1.0;
    double scale = 1.0;  // beta^j / j!
    for (int j = 0; j <= truncation_order; ++j) {
        for (int k = 0; k <= n; ++k) coeff[k] += scale * term[k];
        std::vector<double> next(n + 1, 0.0);
        for (int k = 0; k <= n; ++k) {
            if (k + 1 <= n) next[k + 1] += static_cast<double>(m - 2 * k) * (m - 2 * k - 1) * term[k];
            next[k] += static_cast<double>(k) * (m - k) * term[k];
        }
        term = std::move(next);
        scale *= beta / (j + 1);
    }
    for (double c : coeff)
        if (c < 0) return false;
    auto v = cone_generators(m);
    for (int i = 0; i <= n; ++i) {
        double recon = 0.0;
        for (int k = 0; k <= n; ++k) recon += coeff[k] * static_cast<double>(v[k][i]);
        double want = static_cast<double>(binomial(m, i)) *
                      std::exp(beta * static_cast<double>(i) * (m - i));
        if (std::abs(recon - want) > rel_tol * want) return false;
    }
    return true;
}

WindabilityCertificate solve_lower_triangular(const RationalMatrix& M,
                                              const std::vector<BigRat>& h) {
    if (static_cast<int>(h.size()) != M.rows)
        throw std::invalid_argument("solve: half-vector length mismatch");
    WindabilityCertificate cert;
    cert.m = 0;
    std::vector<BigRat> x(h.size());
    for (int i = 0; i < M.rows; ++i) {
        BigRat s = h[i];
        for (int j = 0; j < i; ++j) s -= M(i, j) * x[j];
        x[i] = s / M(i, i);
    }
    BigRat mn = x[0];
    for (const BigRat& v : x) mn = std::min(mn, v);
    cert.feasible = mn >= 0;
    cert.margin = static_cast<double>(mn);
    cert.h.reserve(h.size());
    cert.x.reserve(x.size());
    for (const BigRat& v : h) cert.h.push_back(static_cast<double>(v));
    for (const BigRat& v : x) cert.x.push_back(static_cast<double>(v));
    cert.exact_x = std::move(x);
    cert.residual = 0.0;
    return cert;
}

WindabilityCertificate solve_lower_triangular(const RationalMatrix& M,
                                              const std::vector<double>& h, double feas_tol) {
    if (static_cast<int>(h.size()) != M.rows)
        throw std::invalid_argument("solve: half-vector length mismatch");
    WindabilityCertificate cert;
    std::vector<double> x(h.size());
    for (int i = 0; i < M.rows; ++i) {
        double s = h[i];
        for (int j = 0; j < i; ++j) s -= static_cast<double>(M(i, j)) * x[j];
        x[i] = s / static_cast<double>(M(i, i));
    }
    double hmax = 0.0;
    for (double v : h) hmax = std::max(hmax, std::abs(v));
    double res = 0.0;
    for (int i = 0; i < M.rows; ++i) {
        double s = -h[i];
        for (int j = 0; j <= i; ++j) s += static_cast<double>(M(i, j)) * x[j];
        res = std::max(res, std::abs(s));
    }
    cert.residual = hmax > 0 ? res / hmax : res;
    cert.margin = *std::min_element(x.begin(), x.end());
    cert.feasible = cert.margin >= -feas_tol;
    cert.h = h;
    cert.x = std::move(x);
    return cert;
}

WindabilityCertificate solve_pinning(int m, const std::vector<BigRat>& h) {
    auto cert = solve_lower_triangular(matrix_A(m), h);
    cert.m = m;
    cert.b = m;
    return cert;
}

WindabilityCertificate solve_pinning(int m, const std::vector<double>& h) {
    auto cert = solve_lower_triangular(matrix_A(m), h);
    cert.m = m;
    cert.b = m;
    return cert;
}

WindabilityReport is_windable(const Signature& sig, WindMode mode) {
    int d = sig.arity;
    if (mode == WindMode::exact && !sig.exact_values)
        throw std::invalid_argument("is_windable: exact mode needs exact signature values");
    WindabilityReport rep;
    rep.mode = mode;
    rep.windable = true;
    bool have_worst = false;
    for (int a = 0; a <= d; ++a) {
        for (int b = a + 1; b <= d; ++b) {
            int m = b - a;
            Signature H = complement_product(pin(sig, a, b));
            RationalMatrix W = windability_matrix(m);
            WindabilityCertificate cert;
            if (mode == WindMode::exact) {
                cert = solve_lower_triangular(W, half_vector_exact(H));
            } else {
                // Normalize by the leading log value so beta=5, d=12 scale
                // pinnings stay inside double range.
                auto hlog = half_vector(H);
                std::vector<double> h(hlog.size());
                double ref = hlog[0];
                if (std::isinf(ref)) ref = 0.0;
                for (std::size_t i = 0; i < h.size(); ++i)
                    h[i] = std::isinf(hlog[i]) ? 0.0 : std::exp(hlog[i] - ref);
                cert = solve_lower_triangular(W, h);
            }
            cert.m = m;
            cert.a = a;
            cert.b = b;
            rep.windable = rep.windable && cert.feasible;
            if (!have_worst || cert.margin < rep.worst.margin) {
                rep.worst = cert;
                have_worst = true;
            }
            rep.certificates.push_back(std::move(cert));
        }
    }
    if (!have_worst) {
        // arity 0: no pinnings to check
        rep.worst = WindabilityCertificate{};
        rep.worst.feasible = true;
    }
    return rep;
}

}  // namespace lgising
