#pragma once

#include "lgising/chain.hpp"
#include "lgising/graph.hpp"
#include "lgising/signature.hpp"

#include <vector>

namespace lgising {

struct OracleCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// log Z of the vertex model on lg by direct 2^|V| enumeration in
// log-sum-exp form.  fields empty = uniform nu.
double exact_Z_vertex_model(const Graph& lg, double beta, double nu,
                            const std::vector<double>& fields = {}, int cap = 24);

// log H_0: sum of w-hat over consistent half-edge states (2^m terms).
double exact_H0(const Graph& g, const ModelParams& p, int cap = 20);

// log H_2: sum over nearly consistent states, enumerated as (pair of
// inconsistent edges) x (2x2 orientations) x (2^{m-2} consistent rest).
double exact_H2(const Graph& g, const ModelParams& p, int cap = 16);

// Same value by raw enumeration of all 4^m half-edge states; small m only.
double exact_H2_raw(const Graph& g, const ModelParams& p, int cap = 8);

// Explicit transition matrix of a chain kernel together with its state list
// (packed half-edge spins) and unnormalized weights.
struct KernelMatrix {
    std::vector<std::vector<double>> P;
    std::vector<HalfEdgeSpins> states;
    std::vector<double> log_weights;
};

// Half-edge Metropolis kernel on Omega_0 union Omega_2.
KernelMatrix assemble_half_edge_kernel(const Graph& g, const ModelParams& p, int cap_states = 1 << 16);
// Censored whole-edge kernel on Omega_0.
KernelMatrix assemble_glauber_kernel(const Graph& g, const ModelParams& p, int cap_states = 1 << 16);

// Stationary distribution by power iteration to the given residual.
std::vector<double> stationary_distribution(const std::vector<std::vector<double>>& P,
                                            double residual = 1e-12);

// Gibbs distribution over the 2^m edge configurations of g (equivalently the
// vertex model on L(g)), by enumeration.
std::vector<double> exact_gibbs(const Graph& g, const ModelParams& p, int cap = 20);

double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace lgising
