#include "lgising/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace lgising {

namespace {

// Streaming log-sum-exp with a running maximum; O(1) memory.
class LogSum {
  public:
    void add(double lw) {
        if (std::isinf(lw) && lw < 0) return;
        if (lw <= mx_) {
            sum_ += std::exp(lw - mx_);
        } else {
            sum_ = std::isinf(mx_) ? 1.0 : sum_ * std::exp(mx_ - lw) + 1.0;
            mx_ = lw;
        }
    }
    double value() const {
        if (std::isinf(mx_)) return mx_;
        return mx_ + std::log(sum_);
    }

  private:
    double mx_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

HalfEdgeSpins consistent_spins(const Graph& g, std::uint32_t mask) {
    HalfEdgeSpins s(g.half_edge_count());
    for (int e = 0; e < g.edge_count(); ++e) s[2 * e] = s[2 * e + 1] = (mask >> e) & 1;
    return s;
}

}  // namespace

double exact_Z_vertex_model(const Graph& lg, double beta, double nu,
                            const std::vector<double>& fields, int cap) {
    int n = lg.vertex_count();
    if (n > cap) throw OracleCapError("exact_Z_vertex_model: vertex count exceeds cap");
    if (!fields.empty() && static_cast<int>(fields.size()) != n)
        throw std::invalid_argument("fields size must equal vertex count");
    LogSum z;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        long bichromatic = 0;
        for (auto [u, v] : lg.edges()) bichromatic += ((mask >> u) & 1) != ((mask >> v) & 1);
        double lw = beta * static_cast<double>(bichromatic);
        for (int k = 0; k < n; ++k)
            if ((mask >> k) & 1) lw += fields.empty() ? nu : fields[k];
        z.add(lw);
    }
    return z.value();
}

double exact_H0(const Graph& g, const ModelParams& p, int cap) {
    int m = g.edge_count();
    if (m > cap) throw OracleCapError("exact_H0: edge count exceeds cap");
    p.validate(g);
    LogSum z;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
        z.add(log_weight(g, p, consistent_spins(g, mask)));
    return z.value();
}

double exact_H2(const Graph& g, const ModelParams& p, int cap) {
    int m = g.edge_count();
    if (m > cap) throw OracleCapError("exact_H2: edge count exceeds cap");
    if (m < 2) return -std::numeric_limits<double>::infinity();
    p.validate(g);
    LogSum z;
    for (int e = 0; e < m; ++e)
        for (int f = e + 1; f < m; ++f)
            for (int oe = 0; oe < 2; ++oe)
                for (int of = 0; of < 2; ++of)
                    for (std::uint32_t rest = 0; rest < (1u << (m - 2)); ++rest) {
                        HalfEdgeSpins s(g.half_edge_count());
                        int bit = 0;
                        for (int x = 0; x < m; ++x) {
                            if (x == e || x == f) continue;
                            s[2 * x] = s[2 * x + 1] = (rest >> bit) & 1;
                            ++bit;
                        }
                        s[2 * e] = static_cast<std::uint8_t>(oe);
                        s[2 * e + 1] = static_cast<std::uint8_t>(1 - oe);
                        s[2 * f] = static_cast<std::uint8_t>(of);
                        s[2 * f + 1] = static_cast<std::uint8_t>(1 - of);
                        z.add(log_weight(g, p, s));
                    }
    return z.value();
}

double exact_H2_raw(const Graph& g, const ModelParams& p, int cap) {
    int m = g.edge_count();
    if (m > cap) throw OracleCapError("exact_H2_raw: edge count exceeds cap");
    LogSum z;
    for (std::uint64_t mask = 0; mask < (1ULL << (2 * m)); ++mask) {
        HalfEdgeSpins s(2 * m);
        for (int h = 0; h < 2 * m; ++h) s[h] = (mask >> h) & 1;
        int bad = 0;
        for (int e = 0; e < m; ++e) bad += s[2 * e] != s[2 * e + 1];
        if (bad == 2) z.add(log_weight(g, p, s));
    }
    return z.value();
}

namespace {

std::vector<HalfEdgeSpins> omega_states(const Graph& g, int max_inconsistent, int cap_states) {
    int m = g.edge_count();
    if (2 * m > 24) throw OracleCapError("state space too large to enumerate");
    std::vector<HalfEdgeSpins> states;
    for (std::uint64_t mask = 0; mask < (1ULL << (2 * m)); ++mask) {
        HalfEdgeSpins s(2 * m);
        int bad = 0;
        for (int e = 0; e < m; ++e) {
            s[2 * e] = (mask >> (2 * e)) & 1;
            s[2 * e + 1] = (mask >> (2 * e + 1)) & 1;
            bad += s[2 * e] != s[2 * e + 1];
        }
        if (bad == 0 || bad == max_inconsistent) states.push_back(std::move(s));
        if (static_cast<int>(states.size()) > cap_states)
            throw OracleCapError("state space exceeds cap");
    }
    return states;
}

int hamming(const HalfEdgeSpins& a, const HalfEdgeSpins& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace

KernelMatrix assemble_half_edge_kernel(const Graph& g, const ModelParams& p, int cap_states) {
    KernelMatrix K;
    K.states = omega_states(g, 2, cap_states);
    const std::size_t N = K.states.size();
    const double m = g.edge_count();
    K.log_weights.resize(N);
    for (std::size_t i = 0; i < N; ++i) K.log_weights[i] = log_weight(g, p, K.states[i]);
    K.P.assign(N, std::vector<double>(N, 0.0));
    for (std::size_t i = 0; i < N; ++i) {
        double out = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j) continue;
            if (hamming(K.states[i], K.states[j]) != 2) continue;
            double ratio = std::exp(std::min(0.0, K.log_weights[j] - K.log_weights[i]));
            K.P[i][j] = ratio / (4.0 * m * m);
            out += K.P[i][j];
        }
        K.P[i][i] = 1.0 - out;
    }
    return K;
}

KernelMatrix assemble_glauber_kernel(const Graph& g, const ModelParams& p, int cap_states) {
    KernelMatrix K;
    K.states = omega_states(g, 0, cap_states);
    const std::size_t N = K.states.size();
    const double m = g.edge_count();
    K.log_weights.resize(N);
    for (std::size_t i = 0; i < N; ++i) K.log_weights[i] = log_weight(g, p, K.states[i]);
    K.P.assign(N, std::vector<double>(N, 0.0));
    for (std::size_t i = 0; i < N; ++i) {
        double out = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            if (i == j) continue;
            int d = hamming(K.states[i], K.states[j]);
            if (d != 2) continue;
            // the two differing half-edges must form one whole edge
            bool whole_edge = false;
            for (int e = 0; e < g.edge_count(); ++e)
                if (K.states[i][2 * e] != K.states[j][2 * e] &&
                    K.states[i][2 * e + 1] != K.states[j][2 * e + 1])
                    whole_edge = true;
            if (!whole_edge) continue;
            double ratio = std::exp(std::min(0.0, K.log_weights[j] - K.log_weights[i]));
            K.P[i][j] = ratio / (2.0 * m);
            out += K.P[i][j];
        }
        K.P[i][i] = 1.0 - out;
    }
    return K;
}

std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& P,
                                            double residual) {
    const std::size_t N = P.size();
    std::vector<double> pi(N, 1.0 / static_cast<double>(N)), next(N);
    for (int iter = 0; iter < 1000000; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) next[j] += pi[i] * P[i][j];
        double diff = 0.0, total = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            diff += std::abs(next[j] - pi[j]);
            total += next[j];
        }
        for (std::size_t j = 0; j < N; ++j) next[j] /= total;
        pi.swap(next);
        if (diff < residual) return pi;
    }
    throw std::runtime_error("stationary_distribution: power iteration did not converge");
}

std::vector<double> exact_gibbs(const Graph& g, const ModelParams& p, int cap) {
    int m = g.edge_count();
    if (m > cap) throw OracleCapError("exact_gibbs: edge count exceeds cap");
    p.validate(g);
    std::vector<double> lw(1u << m);
    double mx = -std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        lw[mask] = log_weight(g, p, consistent_spins(g, mask));
        mx = std::max(mx, lw[mask]);
    }
    double total = 0.0;
    for (double& v : lw) {
        v = std::exp(v - mx);
        total += v;
    }
    for (double& v : lw) v /= total;
    return lw;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s / 2;
}

}  // namespace lgising
