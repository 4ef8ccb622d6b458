// Command-line surface: exact oracle values, Gibbs sampling, partition
// function estimation and windability certificates, with JSON output for
// batch runs.  Exit codes: 0 ok, 1 infeasible/failed check, 2 usage or cap
// errors.

#include "lgising/estimator.hpp"
#include "lgising/graph.hpp"
#include "lgising/oracle.hpp"
#include "lgising/windability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using nlohmann::json;
using namespace lgising;

namespace {

Graph load_graph(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string name = spec.substr(0, colon);
        int param = 0;
        try {
            param = std::stoi(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw GraphError("bad graph parameter in: " + spec);
        }
        return named_graph(name, param);
    }
    std::ifstream in(spec);
    if (!in) throw GraphError("cannot open graph file: " + spec);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

std::vector<double> load_fields(const std::string& path, int edge_count) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::vector<double> fields(edge_count, 0.0);
    long e;
    double v;
    while (in >> e >> v) {
        if (e < 0 || e >= edge_count) throw std::runtime_error("field file: edge index out of range");
        fields[e] = v;
    }
    return fields;
}

// Decimal literal -> exact rational ("0.70" -> 7/10).
BigRat parse_decimal(const std::string& tok) {
    std::string s = tok;
    bool neg = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < s.size(); ++pos) {
        if (s[pos] == '.') {
            if (seen_dot) throw std::invalid_argument("bad number: " + tok);
            seen_dot = true;
        } else if (s[pos] >= '0' && s[pos] <= '9') {
            digits += s[pos];
            if (seen_dot) ++scale;
            seen_digit = true;
        } else if (s[pos] == '/') {
            // simple fractions like 1/3
            if (digits.empty() || seen_dot) throw std::invalid_argument("bad number: " + tok);
            auto decimal = [](const std::string& d) {  // avoid cpp_int's octal reading of "07"
                auto nz = d.find_first_not_of('0');
                return BigInt(nz == std::string::npos ? "0" : d.substr(nz));
            };
            BigRat num{decimal(digits)};
            BigRat den{decimal(s.substr(pos + 1))};
            if (den == 0) throw std::invalid_argument("zero denominator: " + tok);
            BigRat r = num / den;
            return neg ? -r : r;
        } else {
            throw std::invalid_argument("bad number: " + tok);
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad number: " + tok);
    // strip leading zeros: cpp_int would read "071" as octal
    auto nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    BigRat r{BigInt(digits)};
    for (long i = 0; i < scale; ++i) r /= 10;
    return neg ? -r : r;
}

std::vector<BigRat> parse_signature_literal(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '[') body = body.substr(1);
    if (!body.empty() && body.back() == ']') body.pop_back();
    std::vector<BigRat> values;
    std::string tok;
    std::istringstream in(body);
    while (std::getline(in, tok, ',')) {
        auto b = tok.find_first_not_of(" \t");
        auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        values.push_back(parse_decimal(tok.substr(b, e - b + 1)));
    }
    if (values.empty()) throw std::invalid_argument("empty signature literal");
    return values;
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << payload;
    }
}

json certificate_json(const WindabilityCertificate& c) {
    return json{{"m", c.m},     {"a", c.a},           {"b", c.b},
                {"h", c.h},     {"x", c.x},           {"feasible", c.feasible},
                {"margin", c.margin}};
}

json report_json(const EstimateReport& rep) {
    json levels = json::array();
    for (const auto& l : rep.levels)
        levels.push_back(json{{"beta_lo", l.beta_lo},
                              {"beta_hi", l.beta_hi},
                              {"ratio_mean", l.ratio_mean},
                              {"ratio_stderr", l.ratio_stderr},
                              {"samples", l.samples}});
    // wall time deliberately left out: reports must be byte-identical across
    // reruns and thread counts
    return json{{"log_Z", rep.log_z},     {"log_base", rep.log_base},
                {"levels", levels},       {"total_steps", rep.total_steps},
                {"seed", rep.seed},       {"replicas", rep.replicas},
                {"chain", rep.chain}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Antiferromagnetic Ising toolkit for line graphs"};
    app.require_subcommand(1);

    std::string graph_spec, fields_path, out_path;
    double beta = 0.0, nu = 0.0;
    std::uint64_t seed = 0;
    bool have_seed = false;

    auto add_common = [&](CLI::App* cmd, bool needs_seed) {
        cmd->add_option("--graph", graph_spec, "graph source: file path or generator spec "
                                               "(hex:L, cycle:k, star:d, path:k, complete:k)")
            ->required();
        cmd->add_option("--beta", beta, "interaction energy (antiferromagnetic when > 0)");
        cmd->add_option("--nu", nu, "uniform external field");
        cmd->add_option("--fields", fields_path, "per-edge field file: lines 'edge_index nu'");
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        auto* s = cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { seed = v; have_seed = true; }, "RNG master seed");
        if (needs_seed) s->required();
    };

    auto* cmd_exact = app.add_subcommand("exact", "brute-force log Z / log H0 / log H2");
    add_common(cmd_exact, false);

    auto* cmd_sample = app.add_subcommand("sample", "draw Gibbs samples (one bit-string per line)");
    add_common(cmd_sample, true);
    std::uint64_t n_samples = 1;
    std::uint64_t spacing = 0, burnin = 0;
    std::string chain_name = "half-edge";
    cmd_sample->add_option("--samples", n_samples, "number of samples");
    cmd_sample->add_option("--steps", spacing, "chain steps between samples");
    cmd_sample->add_option("--burnin", burnin, "burn-in steps");
    cmd_sample->add_option("--chain", chain_name, "half-edge | glauber")
        ->check(CLI::IsMember({"half-edge", "glauber"}));

    auto* cmd_estimate = app.add_subcommand("estimate", "telescoping-product estimate of log Z");
    add_common(cmd_estimate, true);
    double epsilon = 0.1;
    std::uint64_t samples_per_level = 0;
    std::uint64_t est_burnin = 0, est_spacing = 0;
    int threads = 1;
    bool allow_neg = false;
    std::string est_chain = "glauber";
    cmd_estimate->add_option("--epsilon", epsilon, "target relative accuracy");
    cmd_estimate->add_option("--samples", samples_per_level, "samples per annealing level");
    cmd_estimate->add_option("--burnin", est_burnin, "burn-in steps per level (0 = default)");
    cmd_estimate->add_option("--steps", est_spacing, "steps between samples (0 = default)");
    cmd_estimate->add_option("--threads", threads, "replica worker threads");
    cmd_estimate->add_option("--chain", est_chain, "glauber | half-edge")
        ->check(CLI::IsMember({"half-edge", "glauber"}));
    cmd_estimate->add_flag("--allow-negative-beta", allow_neg,
                           "permit beta < 0 (outside the guaranteed regime)");

    auto* cmd_wind = app.add_subcommand("windability", "windability certificates");
    std::string signature_literal;
    int arity = -1;
    double w_beta = 0.0, w_mu = 0.0;
    std::string mode_name = "auto";
    std::string wind_out;
    cmd_wind->add_option("--signature", signature_literal,
                         "signature literal, e.g. \"[1,0.7,0.7,1]\" (exact arithmetic)");
    cmd_wind->add_option("--arity", arity, "arity d of F_{beta,mu,d}");
    cmd_wind->add_option("--beta", w_beta, "beta of F_{beta,mu,d}");
    cmd_wind->add_option("--mu", w_mu, "mu of F_{beta,mu,d}");
    cmd_wind->add_option("--mode", mode_name, "exact | float | auto")
        ->check(CLI::IsMember({"exact", "float", "auto"}));
    cmd_wind->add_option("--out", wind_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage problems exit 2; --help exits 0
    }

    try {
        if (*cmd_exact) {
            Graph g = load_graph(graph_spec);
            ModelParams p{beta, nu, {}};
            if (!fields_path.empty()) p.edge_fields = load_fields(fields_path, g.edge_count());
            double h0 = exact_H0(g, p);
            json j{{"log_Z", h0}, {"log_H0", h0}};
            if (g.edge_count() >= 2 && g.edge_count() <= 16)
                j["log_H2"] = exact_H2(g, p);
            else
                j["log_H2"] = nullptr;
            emit(out_path, j.dump(2) + "\n");
            std::cerr << "log_Z = " << h0 << " on " << graph_spec << "\n";
            return 0;
        }
        if (*cmd_sample) {
            Graph g = load_graph(graph_spec);
            ModelParams p{beta, nu, {}};
            if (!fields_path.empty()) p.edge_fields = load_fields(fields_path, g.edge_count());
            const std::uint64_t m = g.edge_count();
            const std::uint64_t lgE = std::max<long>(1, g.line_graph_edge_count());
            ChainConfig cfg;
            cfg.kind = chain_name == "glauber" ? ChainKind::glauber : ChainKind::half_edge;
            cfg.seed = seed;
            cfg.burn_in = burnin ? burnin : 8 * m * m * lgE;
            cfg.thin = spacing ? spacing : std::max<std::uint64_t>(1, 2 * m * m);
            cfg.sample_target = n_samples;
            cfg.steps = cfg.thin * n_samples;
            ChainResult res = run_chain(g, p, cfg);
            std::string lines;
            for (const auto& s : res.samples) {
                for (auto b : s) lines += b ? '1' : '0';
                lines += '\n';
            }
            emit(out_path, lines);
            json side{{"samples", res.samples.size()},
                      {"steps", res.stats.steps},
                      {"burn_in", cfg.burn_in},
                      {"spacing", cfg.thin},
                      {"seed", seed},
                      {"chain", chain_name},
                      {"acceptance_rate", res.stats.acceptance_rate()},
                      {"omega0_fraction", res.stats.omega0_fraction()},
                      {"omega2_fraction", 1.0 - res.stats.omega0_fraction()}};
            if (out_path.empty())
                std::cerr << side.dump(2) << "\n";
            else
                emit(out_path + ".json", side.dump(2) + "\n");
            return 0;
        }
        if (*cmd_estimate) {
            Graph g = load_graph(graph_spec);
            ModelParams p{beta, nu, {}};
            if (!fields_path.empty()) p.edge_fields = load_fields(fields_path, g.edge_count());
            EstimateConfig cfg;
            cfg.seed = seed;
            cfg.epsilon = epsilon;
            cfg.threads = threads;
            cfg.samples_per_level = samples_per_level;
            cfg.burn_in_per_level = est_burnin;
            cfg.sample_spacing = est_spacing;
            cfg.kind = est_chain == "glauber" ? ChainKind::glauber : ChainKind::half_edge;
            cfg.allow_negative_beta = allow_neg;
            EstimateReport rep = estimate_Z(g, p, cfg);
            emit(out_path, report_json(rep).dump(2) + "\n");
            std::cerr << "level        beta range          ratio      stderr    samples\n";
            for (std::size_t i = 0; i < rep.levels.size(); ++i) {
                const auto& l = rep.levels[i];
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%5zu  [%8.5f, %8.5f]  %9.6f  %9.2e  %9llu\n",
                              i + 1, l.beta_lo, l.beta_hi, l.ratio_mean, l.ratio_stderr,
                              static_cast<unsigned long long>(l.samples));
                std::cerr << buf;
            }
            std::cerr << "log_Z ~= " << rep.log_z << "  (base " << rep.log_base << ", "
                      << rep.levels.size() << " levels, " << rep.total_steps << " steps, "
                      << rep.wall_seconds << " s)\n";
            return 0;
        }
        if (*cmd_wind) {
            Signature sig;
            WindMode mode;
            if (!signature_literal.empty()) {
                sig = signature_from_rationals(parse_signature_literal(signature_literal));
                mode = mode_name == "float" ? WindMode::floating : WindMode::exact;
            } else if (arity >= 0) {
                sig = ising_signature(w_beta, w_mu, arity);
                if (mode_name == "exact")
                    throw std::invalid_argument("exact mode needs a rational signature literal");
                mode = WindMode::floating;
            } else {
                throw std::invalid_argument("windability needs --signature or --arity/--beta/--mu");
            }
            WindabilityReport rep = is_windable(sig, mode);
            std::string out;
            for (const auto& c : rep.certificates) out += certificate_json(c).dump() + "\n";
            json verdict{{"windable", rep.windable},
                         {"mode", rep.mode == WindMode::exact ? "exact" : "float"},
                         {"worst", certificate_json(rep.worst)}};
            out += verdict.dump() + "\n";
            emit(wind_out, out);
            std::cerr << (rep.windable ? "windable" : "NOT windable")
                      << "; worst pinning (a=" << rep.worst.a << ", b=" << rep.worst.b
                      << ") margin " << rep.worst.margin << "\n";
            return rep.windable ? 0 : 1;
        }
    } catch (const OracleCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
