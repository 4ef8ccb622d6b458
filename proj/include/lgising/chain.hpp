#pragma once

#include "lgising/graph.hpp"
#include "lgising/rng.hpp"
#include "lgising/signature.hpp"

#include <cstdint>
#include <vector>

namespace lgising {

// Half-edge configuration together with the running quantities the chains
// need: per-vertex 1-counts, the inconsistent-edge bookkeeping and a cached
// log weight.  The state space is Omega_0 (consistent) union Omega_2
// (inconsistent on exactly two edges); the half-edge chain never leaves it.
class HalfEdgeState {
  public:
    HalfEdgeState(const Graph& g, const ModelParams& p);

    const HalfEdgeSpins& spins() const { return spins_; }
    const std::vector<int>& ones_at_vertex() const { return ones_; }
    int inconsistent_count() const { return inconsistent_count_; }
    bool consistent() const { return inconsistent_count_ == 0; }
    bool edge_inconsistent(int e) const { return spins_[2 * e] != spins_[2 * e + 1]; }
    double cached_log_weight() const { return log_weight_; }

    // Toggles one half-edge, maintaining all counters.
    void flip(int h);

    // Prospective inconsistent-edge count if {h1,h2} were flipped (h1 != h2).
    int inconsistent_after(int h1, int h2) const;

    double delta(int h1, int h2) const {
        return log_weight_delta(g_, p_, spins_, ones_, h1, h2);
    }
    void apply_pair(int h1, int h2, double delta_lw);

    // Consistent states read as an edge configuration.
    std::vector<std::uint8_t> edge_spins() const;

    // Recompute the cached log weight from scratch; returns the drift that
    // was absorbed.
    double refresh_log_weight();
    void check_counters() const;  // throws if counters disagree with spins

    const Graph& graph() const { return g_; }
    const ModelParams& params() const { return p_; }

  private:
    const Graph& g_;
    ModelParams p_;
    HalfEdgeSpins spins_;
    std::vector<int> ones_;
    int inconsistent_count_ = 0;
    double log_weight_ = 0.0;
};

// One Metropolis transition of the half-edge chain: an ordered pair of
// half-edge indices is drawn uniformly from (2m)^2, a fair coin keeps the
// chain lazy, proposals that would leave Omega are censored, and the flip is
// accepted with probability min{w(sigma')/w(sigma), 1}.  Every unordered pair
// is proposed with probability 1/(4 m^2).  Returns true on an accepted move.
bool half_edge_step(HalfEdgeState& state, Rng& rng);

// Censored whole-edge dynamics on Omega_0: with probability 1/2 stay, else
// flip both half-edges of a uniformly chosen edge with Metropolis acceptance.
// Per-transition probability (1/2m) min{w'/w, 1}.
bool glauber_step(HalfEdgeState& state, Rng& rng);

enum class ChainKind { half_edge, glauber };

struct ChainConfig {
    ChainKind kind = ChainKind::half_edge;
    std::uint64_t steps = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t seed = 1;
    std::uint64_t thin = 0;            // 0 = keep no samples
    std::uint64_t sample_target = 0;   // >0: keep stepping until this many samples
    std::uint64_t cache_refresh = 10000;
    HalfEdgeSpins initial_spins;       // empty = all-zeros (always consistent)
};

struct ChainStats {
    std::uint64_t steps = 0;
    std::uint64_t accepted = 0;
    std::uint64_t steps_in_omega0 = 0;
    std::uint64_t steps_in_omega2 = 0;
    double max_cache_drift = 0.0;
    double acceptance_rate() const { return steps ? double(accepted) / double(steps) : 0.0; }
    double omega0_fraction() const {
        return steps ? double(steps_in_omega0) / double(steps) : 1.0;
    }
};

struct ChainResult {
    ChainStats stats;
    std::vector<std::vector<std::uint8_t>> samples;  // edge configurations (thinned)
};

// Runs burn_in + steps transitions from the all-zeros state; deterministic
// given (g, params, cfg).  Samples are read at every cfg.thin-step boundary
// that lands in Omega_0; inconsistent boundaries are skipped.  With a
// sample_target the walk continues past cfg.steps until the quota is met.
ChainResult run_chain(const Graph& g, const ModelParams& p, const ChainConfig& cfg);

// One-shot Gibbs sampler: runs the half-edge chain for total_steps and
// returns the edge configuration.  A walk ending nearly consistent continues
// in blocks of 2m^2 steps until a block boundary lands in Omega_0.
std::vector<std::uint8_t> sample_gibbs(const Graph& g, const ModelParams& p,
                                       std::uint64_t total_steps, Rng& rng,
                                       std::uint64_t* extra_steps = nullptr);

}  // namespace lgising
