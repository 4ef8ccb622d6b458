#include "lgising/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace lgising {

HalfEdgeState::HalfEdgeState(const Graph& g, const ModelParams& p) : g_(g), p_(p) {
    p_.validate(g);
    spins_.assign(g.half_edge_count(), 0);
    ones_.assign(g.vertex_count(), 0);
    log_weight_ = log_weight(g_, p_, spins_);  // all-zeros: 0, but keep it honest
}

void HalfEdgeState::flip(int h) {
    int k = g_.owner(h);
    int deg = g_.degree(k);
    int o = ones_[k];
    int o_new = o + (spins_[h] ? -1 : +1);
    log_weight_ += p_.beta * (static_cast<double>(o_new) * (deg - o_new) -
                              static_cast<double>(o) * (deg - o));
    log_weight_ += (spins_[h] ? -1 : +1) * p_.field(Graph::edge_of(h)) / 2;
    ones_[k] = o_new;
    int e = Graph::edge_of(h);
    bool was = edge_inconsistent(e);
    spins_[h] ^= 1;
    bool now = edge_inconsistent(e);
    inconsistent_count_ += (now ? 1 : 0) - (was ? 1 : 0);
}

int HalfEdgeState::inconsistent_after(int h1, int h2) const {
    int e1 = Graph::edge_of(h1), e2 = Graph::edge_of(h2);
    if (e1 == e2) return inconsistent_count_;  // both halves toggle together
    int c = inconsistent_count_;
    c += edge_inconsistent(e1) ? -1 : +1;
    c += edge_inconsistent(e2) ? -1 : +1;
    return c;
}

void HalfEdgeState::apply_pair(int h1, int h2, double delta_lw) {
    int k1 = g_.owner(h1), k2 = g_.owner(h2);
    ones_[k1] += spins_[h1] ? -1 : +1;
    ones_[k2] += spins_[h2] ? -1 : +1;
    int e1 = Graph::edge_of(h1), e2 = Graph::edge_of(h2);
    bool w1 = edge_inconsistent(e1), w2 = edge_inconsistent(e2);
    spins_[h1] ^= 1;
    spins_[h2] ^= 1;
    inconsistent_count_ += (edge_inconsistent(e1) ? 1 : 0) - (w1 ? 1 : 0);
    if (e2 != e1) inconsistent_count_ += (edge_inconsistent(e2) ? 1 : 0) - (w2 ? 1 : 0);
    log_weight_ += delta_lw;
}

std::vector<std::uint8_t> HalfEdgeState::edge_spins() const {
    if (!consistent()) throw std::logic_error("edge_spins: state is not consistent");
    std::vector<std::uint8_t> s(g_.edge_count());
    for (int e = 0; e < g_.edge_count(); ++e) s[e] = spins_[2 * e];
    return s;
}

double HalfEdgeState::refresh_log_weight() {
    double fresh = log_weight(g_, p_, spins_);
    double drift = std::abs(fresh - log_weight_);
    log_weight_ = fresh;
    return drift;
}

void HalfEdgeState::check_counters() const {
    int bad = 0;
    for (int e = 0; e < g_.edge_count(); ++e) bad += edge_inconsistent(e);
    if (bad != inconsistent_count_)
        throw std::logic_error("inconsistent-edge counter out of sync");
    for (int k = 0; k < g_.vertex_count(); ++k) {
        int o = 0;
        for (int e : g_.incident(k))
            o += spins_[Graph::half_edge(e, g_.edge(e).first == k ? 0 : 1)];
        if (o != ones_[k]) throw std::logic_error("ones_at_vertex out of sync");
    }
}

bool half_edge_step(HalfEdgeState& state, Rng& rng) {
    const int two_m = state.graph().half_edge_count();
    if (two_m == 0) return false;
    int h1 = static_cast<int>(rng.below(two_m));
    int h2 = static_cast<int>(rng.below(two_m));
    if (h1 == h2) return false;
    if (rng.coin()) return false;
    if (state.inconsistent_after(h1, h2) > 2) return false;  // stay inside Omega
    double d = state.delta(h1, h2);
    if (d < 0 && rng.uniform() >= std::exp(d)) return false;
    state.apply_pair(h1, h2, d);
    return true;
}

bool glauber_step(HalfEdgeState& state, Rng& rng) {
    if (!state.consistent()) throw std::logic_error("glauber_step: state outside Omega_0");
    const int m = state.graph().edge_count();
    if (m == 0) return false;
    if (rng.coin()) return false;
    int e = static_cast<int>(rng.below(m));
    double d = state.delta(2 * e, 2 * e + 1);
    if (d < 0 && rng.uniform() >= std::exp(d)) return false;
    state.apply_pair(2 * e, 2 * e + 1, d);
    return true;
}

ChainResult run_chain(const Graph& g, const ModelParams& p, const ChainConfig& cfg) {
    HalfEdgeState state(g, p);
    if (!cfg.initial_spins.empty()) {
        if (static_cast<int>(cfg.initial_spins.size()) != g.half_edge_count())
            throw std::invalid_argument("run_chain: initial_spins length mismatch");
        for (int h = 0; h < g.half_edge_count(); ++h)
            if (cfg.initial_spins[h]) state.flip(h);
        if (cfg.kind == ChainKind::glauber && !state.consistent())
            throw std::invalid_argument("run_chain: Glauber initial state must be consistent");
    }
    Rng rng(cfg.seed);
    ChainResult res;
    auto step = [&](HalfEdgeState& s, Rng& r) {
        return cfg.kind == ChainKind::half_edge ? half_edge_step(s, r) : glauber_step(s, r);
    };
    for (std::uint64_t t = 0; t < cfg.burn_in; ++t) step(state, rng);
    std::uint64_t since_refresh = 0;
    std::uint64_t t = 0;
    std::uint64_t next_sample_at = cfg.thin;
    auto want_more_samples = [&] {
        return cfg.thin && cfg.sample_target && res.samples.size() < cfg.sample_target;
    };
    while (t < cfg.steps || want_more_samples()) {
        res.stats.accepted += step(state, rng);
        ++t;
        ++res.stats.steps;
        if (state.consistent())
            ++res.stats.steps_in_omega0;
        else
            ++res.stats.steps_in_omega2;
        if (cfg.cache_refresh && ++since_refresh >= cfg.cache_refresh) {
            res.stats.max_cache_drift =
                std::max(res.stats.max_cache_drift, state.refresh_log_weight());
            since_refresh = 0;
        }
        // Samples are read only at thinning boundaries that land in Omega_0;
        // an inconsistent boundary is skipped and the next one tried.
        // Reading at the first Omega_0 *hit* instead would draw from the
        // entry distribution, which is measurably far from Gibbs.
        if (cfg.thin && t >= next_sample_at) {
            if (state.consistent() &&
                (!cfg.sample_target || res.samples.size() < cfg.sample_target))
                res.samples.push_back(state.edge_spins());
            next_sample_at += cfg.thin;
        }
    }
    return res;
}

std::vector<std::uint8_t> sample_gibbs(const Graph& g, const ModelParams& p,
                                       std::uint64_t total_steps, Rng& rng,
                                       std::uint64_t* extra_steps) {
    HalfEdgeState state(g, p);
    for (std::uint64_t t = 0; t < total_steps; ++t) half_edge_step(state, rng);
    // A walk ending in Omega_2 keeps going, but is re-read only at block
    // boundaries: reading at the first return itself would bias the output
    // toward the Omega_0 entry states.
    const std::uint64_t m = g.edge_count();
    const std::uint64_t block = std::max<std::uint64_t>(1, 2 * m * m);
    std::uint64_t extra = 0;
    while (!state.consistent()) {
        for (std::uint64_t i = 0; i < block; ++i) half_edge_step(state, rng);
        extra += block;
    }
    if (extra_steps) *extra_steps = extra;
    return state.edge_spins();
}

}  // namespace lgising
