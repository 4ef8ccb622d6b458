#include "lgising/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace lgising {

AnnealSchedule make_schedule(double beta, long line_graph_edges) {
    AnnealSchedule s;
    s.step_bound = line_graph_edges > 0 ? 1.0 / static_cast<double>(line_graph_edges) : 1.0;
    double mag = std::abs(beta);
    int r = mag == 0.0 ? 0 : static_cast<int>(std::ceil(mag / s.step_bound - 1e-12));
    s.betas.resize(r + 1);
    for (int i = 0; i <= r; ++i) s.betas[i] = beta * (r == 0 ? 0.0 : double(i) / r);
    s.betas[0] = 0.0;
    if (r > 0) s.betas[r] = beta;
    return s;
}

double base_partition(const Graph& g, const ModelParams& p) {
    double lz = 0.0;
    for (int e = 0; e < g.edge_count(); ++e) {
        double nu = p.field(e);
        // log(1 + e^nu), stable for both signs
        lz += nu > 0 ? nu + std::log1p(std::exp(-nu)) : std::log1p(std::exp(nu));
    }
    return lz;
}

RatioEstimate estimate_ratio(const Graph& g, const ModelParams& p, double delta_beta,
                             std::uint64_t samples, Rng& rng, ChainKind kind,
                             std::uint64_t burn_in, std::uint64_t spacing) {
    RatioEstimate est;
    est.samples = samples;
    if (samples == 0) return est;
    if (delta_beta == 0.0) {
        est.mean = 1.0;
        return est;
    }
    HalfEdgeState state(g, p);
    auto step = [&](HalfEdgeState& s) {
        return kind == ChainKind::half_edge ? half_edge_step(s, rng) : glauber_step(s, rng);
    };
    for (std::uint64_t t = 0; t < burn_in; ++t) step(state);
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        for (std::uint64_t t = 0; t < spacing; ++t) step(state);
        // half-edge chain: read only at spacing boundaries that are in
        // Omega_0 (first-hit reading is entry-biased)
        if (kind == ChainKind::half_edge)
            while (!state.consistent())
                for (std::uint64_t t = 0; t < spacing; ++t) step(state);
        double term = std::exp(delta_beta *
                               static_cast<double>(bichromatic_count(g, state.spins())));
        sum += term;
        sumsq += term * term;
    }
    double n = static_cast<double>(samples);
    est.mean = sum / n;
    double var = std::max(0.0, (sumsq - n * est.mean * est.mean) / std::max(1.0, n - 1));
    est.stderr_ = std::sqrt(var / n);
    return est;
}

namespace {

struct ReplicaLevelResult {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t count = 0;
    std::uint64_t steps = 0;
};

}  // namespace

EstimateReport estimate_Z(const Graph& g, const ModelParams& p, const EstimateConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    p.validate(g);
    if (p.beta < 0 && !cfg.allow_negative_beta)
        throw std::invalid_argument(
            "estimate_Z: beta < 0 is outside the guaranteed regime; pass the explicit "
            "override to proceed");
    EstimateReport rep;
    rep.seed = cfg.seed;
    rep.replicas = cfg.replicas;
    rep.chain = cfg.kind == ChainKind::glauber ? "glauber" : "half-edge";
    rep.log_base = base_partition(g, p);
    rep.log_z = rep.log_base;

    const long lgE = g.line_graph_edge_count();
    AnnealSchedule sched = make_schedule(p.beta, lgE);
    const int r = sched.levels();
    if (r == 0) return rep;

    const int m = g.edge_count();
    const std::uint64_t burn_per_level =
        cfg.burn_in_per_level
            ? cfg.burn_in_per_level
            : 8ULL * static_cast<std::uint64_t>(m) * m * std::max<long>(lgE, 1);
    const std::uint64_t spacing =
        cfg.sample_spacing ? cfg.sample_spacing : std::max(1, m);
    std::uint64_t total_samples = cfg.samples_per_level;
    if (total_samples == 0) {
        double eps = std::max(1e-3, cfg.epsilon);
        total_samples = std::max<std::uint64_t>(
            1000, static_cast<std::uint64_t>(std::ceil(2.0 * r / (eps * eps))));
    }
    const int R = std::max(1, cfg.replicas);
    const std::uint64_t per_replica = (total_samples + R - 1) / R;

    // One persistent chain per replica; each level burns in at the new beta
    // and then collects its quota.  Replica work is independent, so threads
    // only change scheduling, never the stream.
    std::vector<HalfEdgeSpins> chain_spins(
        R, HalfEdgeSpins(static_cast<std::size_t>(g.half_edge_count()), 0));
    std::vector<Rng> rngs;
    for (int j = 0; j < R; ++j)
        rngs.push_back(Rng::replica(cfg.seed, static_cast<std::uint64_t>(j)));

    for (int level = 1; level <= r; ++level) {
        double beta_lo = sched.betas[level - 1];
        double beta_hi = sched.betas[level];
        double delta = beta_hi - beta_lo;
        ModelParams level_params = p;
        level_params.beta = beta_lo;

        std::vector<ReplicaLevelResult> results(R);
        auto work = [&](int j) {
            // Chains carry spins only; reseat the level's parameters.
            HalfEdgeState fresh(g, level_params);
            for (int h = 0; h < g.half_edge_count(); ++h)
                if (chain_spins[j][h]) fresh.flip(h);
            Rng& rng = rngs[j];
            auto step = [&](HalfEdgeState& s) {
                return cfg.kind == ChainKind::half_edge ? half_edge_step(s, rng)
                                                        : glauber_step(s, rng);
            };
            ReplicaLevelResult& out = results[j];
            for (std::uint64_t t = 0; t < burn_per_level; ++t) step(fresh);
            out.steps += burn_per_level;
            for (std::uint64_t i = 0; i < per_replica; ++i) {
                for (std::uint64_t t = 0; t < spacing; ++t) step(fresh);
                out.steps += spacing;
                if (cfg.kind == ChainKind::half_edge)
                    while (!fresh.consistent()) {
                        for (std::uint64_t t = 0; t < spacing; ++t) step(fresh);
                        out.steps += spacing;
                    }
                double term =
                    std::exp(delta * static_cast<double>(bichromatic_count(g, fresh.spins())));
                out.sum += term;
                out.sumsq += term * term;
                ++out.count;
            }
            chain_spins[j] = fresh.spins();
        };
        int threads = std::max(1, cfg.threads);
        if (threads == 1 || R == 1) {
            for (int j = 0; j < R; ++j) work(j);
        } else {
            std::vector<std::thread> pool;
            for (int j = 0; j < R; ++j) pool.emplace_back(work, j);
            for (auto& t : pool) t.join();
        }

        // Deterministic reduction in replica order.
        double sum = 0.0, sumsq = 0.0;
        std::uint64_t count = 0;
        for (const auto& res : results) {
            sum += res.sum;
            sumsq += res.sumsq;
            count += res.count;
            rep.total_steps += res.steps;
        }
        LevelStats ls;
        ls.beta_lo = beta_lo;
        ls.beta_hi = beta_hi;
        ls.samples = count;
        ls.ratio_mean = sum / static_cast<double>(count);
        double n = static_cast<double>(count);
        double var = std::max(0.0, (sumsq - n * ls.ratio_mean * ls.ratio_mean) /
                                       std::max(1.0, n - 1));
        ls.ratio_stderr = std::sqrt(var / n);
        rep.log_z += std::log(ls.ratio_mean);
        rep.levels.push_back(ls);
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

OmegaRatioEstimate measure_omega_ratio(const Graph& g, const ModelParams& p,
                                       std::uint64_t steps, std::uint64_t seed,
                                       std::uint64_t burn_in, int batches) {
    OmegaRatioEstimate est;
    est.steps = steps;
    HalfEdgeState state(g, p);
    Rng rng(seed);
    for (std::uint64_t t = 0; t < burn_in; ++t) half_edge_step(state, rng);
    std::uint64_t t0 = 0, t2 = 0;
    std::vector<double> batch_ratio;
    std::uint64_t per_batch = std::max<std::uint64_t>(1, steps / std::max(1, batches));
    std::uint64_t b0 = 0, b2 = 0;
    for (std::uint64_t t = 0; t < steps; ++t) {
        half_edge_step(state, rng);
        if (state.consistent()) {
            ++t0;
            ++b0;
        } else {
            ++t2;
            ++b2;
        }
        if ((t + 1) % per_batch == 0) {
            if (b0 > 0) batch_ratio.push_back(static_cast<double>(b2) / b0);
            b0 = b2 = 0;
        }
    }
    est.ratio = t0 ? static_cast<double>(t2) / t0 : 0.0;
    est.omega0_fraction = steps ? static_cast<double>(t0) / steps : 1.0;
    if (batch_ratio.size() > 1) {
        double mean = 0.0;
        for (double v : batch_ratio) mean += v;
        mean /= batch_ratio.size();
        double var = 0.0;
        for (double v : batch_ratio) var += (v - mean) * (v - mean);
        var /= (batch_ratio.size() - 1);
        est.stderr_ = std::sqrt(var / batch_ratio.size());
    }
    return est;
}

double omega_ratio_bound(const Graph& g, const ModelParams& p) {
    double m = g.edge_count();
    return 2.0 * m * m *
           std::exp(2.0 * (std::abs(p.beta) * g.max_degree() + p.max_abs_mu()));
}

}  // namespace lgising
