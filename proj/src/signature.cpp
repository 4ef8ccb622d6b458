#include "lgising/signature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lgising {

double ModelParams::max_abs_mu() const {
    double m = std::abs(nu) / 2;
    for (double f : edge_fields) m = std::max(m, std::abs(f) / 2);
    return m;
}

void ModelParams::validate(const Graph& g) const {
    if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
    if (!std::isfinite(nu)) throw std::invalid_argument("nu must be finite");
    for (double f : edge_fields)
        if (!std::isfinite(f)) throw std::invalid_argument("edge field must be finite");
    if (!edge_fields.empty() && static_cast<int>(edge_fields.size()) != g.edge_count())
        throw std::invalid_argument("edge_fields size must equal edge count");
}

bool Signature::self_complementary(double tol) const {
    for (int i = 0; i <= arity; ++i) {
        double a = log_values[i], b = log_values[arity - i];
        if (std::isinf(a) != std::isinf(b)) return false;
        if (!std::isinf(a) && std::abs(a - b) > tol * std::max(1.0, std::abs(a))) return false;
    }
    if (exact_values) {
        for (int i = 0; i <= arity; ++i)
            if ((*exact_values)[i] != (*exact_values)[arity - i]) return false;
    }
    return true;
}

Signature ising_signature(double beta, double mu, int d) {
    if (d < 0) throw std::invalid_argument("arity must be nonnegative");
    Signature s;
    s.arity = d;
    s.log_values.resize(d + 1);
    for (int i = 0; i <= d; ++i)
        s.log_values[i] = beta * static_cast<double>(i) * (d - i) + mu * i;
    return s;
}

Signature signature_from_values(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("empty signature");
    Signature s;
    s.arity = static_cast<int>(values.size()) - 1;
    for (double v : values) {
        if (v < 0 || !std::isfinite(v)) throw std::invalid_argument("signature values must be finite and >= 0");
        s.log_values.push_back(std::log(v));
    }
    return s;
}

Signature signature_from_rationals(const std::vector<BigRat>& values) {
    if (values.empty()) throw std::invalid_argument("empty signature");
    Signature s;
    s.arity = static_cast<int>(values.size()) - 1;
    for (const BigRat& v : values) {
        if (v < 0) throw std::invalid_argument("signature values must be >= 0");
        s.log_values.push_back(v == 0 ? -std::numeric_limits<double>::infinity()
                                      : std::log(static_cast<double>(v)));
    }
    s.exact_values = values;
    return s;
}

Signature pin(const Signature& sig, int a, int b) {
    if (a < 0 || a > b || b > sig.arity) throw std::out_of_range("pin: need 0 <= a <= b <= d");
    Signature s;
    s.arity = b - a;
    s.log_values.assign(sig.log_values.begin() + a, sig.log_values.begin() + b + 1);
    if (sig.exact_values)
        s.exact_values = std::vector<BigRat>(sig.exact_values->begin() + a,
                                             sig.exact_values->begin() + b + 1);
    return s;
}

Signature complement_product(const Signature& g) {
    Signature h;
    h.arity = g.arity;
    h.log_values.resize(g.arity + 1);
    for (int i = 0; i <= g.arity; ++i)
        h.log_values[i] = g.log_values[i] + g.log_values[g.arity - i];
    if (g.exact_values) {
        std::vector<BigRat> z(g.arity + 1);
        for (int i = 0; i <= g.arity; ++i)
            z[i] = (*g.exact_values)[i] * (*g.exact_values)[g.arity - i];
        h.exact_values = std::move(z);
    }
    return h;
}

std::vector<double> half_vector(const Signature& sig) {
    if (!sig.self_complementary())
        throw std::invalid_argument("half_vector: signature is not self-complementary");
    std::vector<double> h(sig.arity / 2 + 1);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = sig.log_values[i];
    return h;  // log domain
}

std::vector<BigRat> half_vector_exact(const Signature& sig) {
    if (!sig.exact_values) throw std::invalid_argument("half_vector_exact: no exact values");
    if (!sig.self_complementary())
        throw std::invalid_argument("half_vector: signature is not self-complementary");
    return std::vector<BigRat>(sig.exact_values->begin(),
                               sig.exact_values->begin() + sig.arity / 2 + 1);
}

double log_weight(const Graph& g, const ModelParams& p, const HalfEdgeSpins& spins) {
    double lw = 0.0;
    for (int k = 0; k < g.vertex_count(); ++k) {
        long o = 0;
        for (int e : g.incident(k)) o += spins[Graph::half_edge(e, g.edge(e).first == k ? 0 : 1)];
        lw += p.beta * static_cast<double>(o) * (g.degree(k) - o);
    }
    for (int e = 0; e < g.edge_count(); ++e)
        lw += p.field(e) / 2 * (spins[2 * e] + spins[2 * e + 1]);
    return lw;
}

double log_weight_delta(const Graph& g, const ModelParams& p, const HalfEdgeSpins& spins,
                        const std::vector<int>& ones_at_vertex, int h1, int h2) {
    // Flip h1 then h2 against scratch counters so a shared vertex is handled.
    int k1 = g.owner(h1), k2 = g.owner(h2);
    double delta = 0.0;
    int o1 = ones_at_vertex[k1];
    {
        int d = g.degree(k1);
        int o_new = o1 + (spins[h1] ? -1 : +1);
        delta += p.beta * (static_cast<double>(o_new) * (d - o_new) -
                           static_cast<double>(o1) * (d - o1));
        delta += (spins[h1] ? -1 : +1) * p.field(Graph::edge_of(h1)) / 2;
        o1 = o_new;
    }
    {
        int o2 = (k2 == k1) ? o1 : ones_at_vertex[k2];
        int d = g.degree(k2);
        int o_new = o2 + (spins[h2] ? -1 : +1);
        delta += p.beta * (static_cast<double>(o_new) * (d - o_new) -
                           static_cast<double>(o2) * (d - o2));
        delta += (spins[h2] ? -1 : +1) * p.field(Graph::edge_of(h2)) / 2;
    }
    return delta;
}

long bichromatic_count(const Graph& g, const HalfEdgeSpins& spins) {
    long total = 0;
    for (int k = 0; k < g.vertex_count(); ++k) {
        long o = 0;
        for (int e : g.incident(k)) o += spins[Graph::half_edge(e, g.edge(e).first == k ? 0 : 1)];
        total += o * (g.degree(k) - o);
    }
    return total;
}

}  // namespace lgising
