#pragma once

#include "lgising/bigmath.hpp"
#include "lgising/graph.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace lgising {

// Interaction energy beta (antiferromagnetic when beta > 0) and external
// field nu on the vertices of L(Gamma), i.e. the edges of Gamma.  The holant
// signatures absorb half the field per half-edge: mu = nu/2.
struct ModelParams {
    double beta = 0.0;
    double nu = 0.0;
    std::vector<double> edge_fields;  // optional per-edge nu_e; empty = uniform

    double field(int e) const { return edge_fields.empty() ? nu : edge_fields[e]; }
    double max_abs_mu() const;
    void validate(const Graph& g) const;
};

// Symmetric function of arity d given by its signature vector [f_0..f_d],
// f_i the value on inputs with i ones.  Values live in the log domain
// (log_values[i] = log f_i, -inf encodes f_i = 0).  Signatures built from
// rational data additionally carry exact values for the exact-arithmetic
// windability path.
struct Signature {
    int arity = 0;
    std::vector<double> log_values;
    std::optional<std::vector<BigRat>> exact_values;

    double value(int i) const { return std::exp(log_values[i]); }
    bool self_complementary(double tol = 1e-9) const;
};

// F_{beta,mu,d}: signature vector [e^{beta*i*(d-i) + mu*i} : 0 <= i <= d].
Signature ising_signature(double beta, double mu, int d);

Signature signature_from_values(const std::vector<double>& values);
Signature signature_from_rationals(const std::vector<BigRat>& values);

// Slice [f_a..f_b]: the pinning with a variables set to 1 and d-b set to 0.
Signature pin(const Signature& sig, int a, int b);

// H(x) = G(x) G(x-bar): z_i = g_i * g_{m-i}.  Always self-complementary.
Signature complement_product(const Signature& g);

// First floor(m/2)+1 values of a self-complementary signature, in the log
// domain (exp can overflow for the signatures the certifier meets).
std::vector<double> half_vector(const Signature& sig);
std::vector<BigRat> half_vector_exact(const Signature& sig);

// A spin assignment to all 2m half-edges, packed as bytes.
using HalfEdgeSpins = std::vector<std::uint8_t>;

// log w-hat(sigma) = sum_k beta*o_k*(d(k)-o_k) + sum_e (nu_e/2)*(s_{2e}+s_{2e+1})
// where o_k counts the 1-spins on half-edges at k.  On consistent states the
// field term is sum_e nu_e sigma(e), matching the vertex model on L(Gamma).
double log_weight(const Graph& g, const ModelParams& p, const HalfEdgeSpins& spins);

// log_weight(state with h1,h2 flipped) - log_weight(state), touching only the
// affected vertex factors and field terms.  ones_at_vertex must agree with
// spins.  O(1).
double log_weight_delta(const Graph& g, const ModelParams& p, const HalfEdgeSpins& spins,
                        const std::vector<int>& ones_at_vertex, int h1, int h2);

// Number of bichromatic edges of L(Gamma) under a consistent configuration,
// sum_k o_k (d(k) - o_k); the observable whose exponential estimates the
// annealing ratios.
long bichromatic_count(const Graph& g, const HalfEdgeSpins& spins);

}  // namespace lgising
