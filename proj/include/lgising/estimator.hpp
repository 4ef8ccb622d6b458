#pragma once

#include "lgising/chain.hpp"
#include "lgising/graph.hpp"
#include "lgising/signature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lgising {

// Annealing grid 0 = beta_0 < ... < beta_r = beta with uniform spacing
// bounded by 1/|E(L(Gamma))|, so every telescoping ratio term lies in [1, e].
struct AnnealSchedule {
    std::vector<double> betas;
    double step_bound = 0.0;
    int levels() const { return static_cast<int>(betas.size()) - 1; }
};

AnnealSchedule make_schedule(double beta, long line_graph_edges);

// log Z_{0,nu}(L(Gamma)) = sum_e log(1 + e^{nu_e}); the factorized base of the
// telescoping product.
double base_partition(const Graph& g, const ModelParams& p);

struct RatioEstimate {
    double mean = 1.0;    // estimate of Z_{beta+d}/Z_beta
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
};

// Mean of exp(delta_beta * D(sigma)) over Gibbs samples at the params' beta,
// D the bichromatic-edge count of L(Gamma); unbiased for the ratio.
RatioEstimate estimate_ratio(const Graph& g, const ModelParams& p, double delta_beta,
                             std::uint64_t samples, Rng& rng, ChainKind kind,
                             std::uint64_t burn_in, std::uint64_t spacing);

struct LevelStats {
    double beta_lo = 0.0, beta_hi = 0.0;
    double ratio_mean = 1.0;
    double ratio_stderr = 0.0;
    std::uint64_t samples = 0;
};

struct EstimateConfig {
    std::uint64_t seed = 1;
    double epsilon = 0.1;
    int replicas = 4;
    int threads = 1;
    ChainKind kind = ChainKind::glauber;
    std::uint64_t samples_per_level = 0;  // 0 = derive from epsilon
    std::uint64_t burn_in_per_level = 0;  // 0 = default 8 m^2 |E(L)|
    std::uint64_t sample_spacing = 0;     // 0 = default m
    bool allow_negative_beta = false;
};

struct EstimateReport {
    double log_z = 0.0;
    double log_base = 0.0;
    std::vector<LevelStats> levels;
    std::uint64_t total_steps = 0;
    std::uint64_t seed = 0;
    int replicas = 0;
    std::string chain;
    double wall_seconds = 0.0;  // excluded from the canonical JSON (stderr only)
};

// Telescoping-product estimator of log Z_{beta,nu}(L(Gamma)): anneals beta up
// from 0 on the uniform grid, estimating each ratio from MCMC samples.
// Deterministic given (g, p, cfg.seed, cfg.replicas); independent of
// cfg.threads.
EstimateReport estimate_Z(const Graph& g, const ModelParams& p, const EstimateConfig& cfg);

struct OmegaRatioEstimate {
    double ratio = 0.0;    // time in Omega_2 / time in Omega_0
    double stderr_ = 0.0;
    double omega0_fraction = 0.0;
    std::uint64_t steps = 0;
};

// Long-run occupancy estimate of H_2/H_0 from the half-edge chain, with a
// batch-means standard error.
OmegaRatioEstimate measure_omega_ratio(const Graph& g, const ModelParams& p,
                                       std::uint64_t steps, std::uint64_t seed,
                                       std::uint64_t burn_in = 0, int batches = 50);

// Analytic occupancy bound 2 m^2 e^{2 (beta*Delta + max|mu|)}: flipping one
// half-edge on each inconsistent edge reaches Omega_0 while changing at most
// two vertex factors and two field terms, and a consistent state has at most
// 2m^2 such preimages.
double omega_ratio_bound(const Graph& g, const ModelParams& p);

}  // namespace lgising
