#include "lgising/estimator.hpp"
#include "lgising/graph.hpp"
#include "lgising/oracle.hpp"

#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run(const std::string& args) {
    std::string out_file = "cli_test_stdout.tmp";
    std::string cmd = std::string(LGISING_BIN) + " " + args + " > " + out_file + " 2>cli_test_stderr.tmp";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    int code = rc == -1 ? -1 : WEXITSTATUS(rc);
    return {code, buf.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("exact command on small graphs") {
    auto r = run("exact --graph cycle:3 --beta 1");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    // L(C_3) = C_3: Z = 2 + 6 e^{2 beta}
    double want = std::log(2 + 6 * std::exp(2.0));
    CHECK(std::abs(j["log_Z"].get<double>() - want) < 1e-9);
    CHECK(std::abs(j["log_H0"].get<double>() - want) < 1e-9);
    CHECK(j.contains("log_H2"));

    auto r2 = run("exact --graph path:2 --beta 0 --nu 0");
    REQUIRE(r2.exit_code == 0);
    json j2 = json::parse(r2.stdout_text);
    CHECK(std::abs(j2["log_Z"].get<double>() - std::log(2.0)) < 1e-12);
}

TEST_CASE("exact command cap exceeded exits 2") {
    auto r = run("exact --graph complete:8 --beta 0.5");
    CHECK(r.exit_code == 2);
}

TEST_CASE("unknown generator exits 2") {
    auto r = run("exact --graph moebius:4 --beta 0.5");
    CHECK(r.exit_code == 2);
}

TEST_CASE("sample determinism: same seed gives byte-identical output") {
    auto a = run("sample --graph cycle:4 --beta 0.5 --seed 99 --samples 200 --burnin 500 --steps 16 --out cli_a.txt");
    auto b = run("sample --graph cycle:4 --beta 0.5 --seed 99 --samples 200 --burnin 500 --steps 16 --out cli_b.txt");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp("cli_a.txt") == slurp("cli_b.txt"));
    CHECK(slurp("cli_a.txt.json") == slurp("cli_b.txt.json"));
    // bit-strings have one character per edge
    std::istringstream lines(slurp("cli_a.txt"));
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        CHECK(line.size() == 4);
        ++count;
    }
    CHECK(count == 200);
    std::remove("cli_a.txt");
    std::remove("cli_b.txt");
    std::remove("cli_a.txt.json");
    std::remove("cli_b.txt.json");
}

TEST_CASE("estimate reports are byte-identical across threads") {
    std::string base =
        "estimate --graph cycle:6 --beta 0.6 --nu 0.2 --seed 31 --samples 400 --out ";
    auto a = run(base + "cli_e1.json --threads 1");
    auto b = run(base + "cli_e2.json --threads 4");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp("cli_e1.json") == slurp("cli_e2.json"));
    json j = json::parse(slurp("cli_e1.json"));
    CHECK(j.contains("log_Z"));
    CHECK(!j.contains("wall_seconds"));
    std::remove("cli_e1.json");
    std::remove("cli_e2.json");
}

TEST_CASE("estimate honors burn-in and spacing overrides deterministically") {
    std::string base =
        "estimate --graph cycle:4 --beta 0.4 --seed 8 --samples 200 --burnin 500 --steps 3 "
        "--out ";
    auto a = run(base + "cli_o1.json");
    auto b = run(base + "cli_o2.json");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp("cli_o1.json") == slurp("cli_o2.json"));
    json j = json::parse(slurp("cli_o1.json"));
    // ceil(0.4 * |E(L)| = 1.6) = 2 levels x 4 replicas x (500 burn-in + 50 x 3 spacing)
    REQUIRE(j["levels"].size() == 2);
    CHECK(j["total_steps"].get<std::uint64_t>() == 2u * 4u * (500u + 50u * 3u));
    std::remove("cli_o1.json");
    std::remove("cli_o2.json");
}

TEST_CASE("estimate at beta=0 returns the base partition") {
    auto r = run("estimate --graph cycle:4 --beta 0 --nu 0 --seed 5");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(std::abs(j["log_Z"].get<double>() - 4 * std::log(2.0)) < 1e-12);
    CHECK(j["levels"].empty());
}

TEST_CASE("windability subcommand verdicts and exit codes") {
    auto windable = run("windability --arity 6 --beta 1 --mu 0");
    CHECK(windable.exit_code == 0);

    auto not_windable = run("windability --signature \"[1,0.70,0.70,1]\"");
    CHECK(not_windable.exit_code == 1);
    // last line is the verdict, preceding lines are one certificate per pinning
    std::istringstream lines(not_windable.stdout_text);
    std::string line, last;
    int cert_lines = 0;
    while (std::getline(lines, line)) {
        if (!line.empty()) {
            last = line;
            ++cert_lines;
        }
    }
    json verdict = json::parse(last);
    CHECK(verdict["windable"] == false);
    CHECK(verdict["mode"] == "exact");
    CHECK(verdict["worst"]["m"] == 3);
    CHECK(cert_lines == 1 + 3 + 2 + 1);  // pinnings of d=3 plus the verdict

    auto flat = run("windability --signature \"[1,1,1,1]\"");
    CHECK(flat.exit_code == 0);

    auto ferro_ok = run("windability --signature \"[1,0.71,0.71,1]\"");
    CHECK(ferro_ok.exit_code == 0);

    // float mode on a literal, and fraction literals
    auto float_mode = run("windability --signature \"[1,0.71,0.71,1]\" --mode float");
    CHECK(float_mode.exit_code == 0);
    auto fraction = run("windability --signature \"[1,1/2,1/2,1]\"");
    CHECK(fraction.exit_code == 1);  // 1/4 < 1/2: below the threshold

    auto usage = run("windability");
    CHECK(usage.exit_code == 2);
}

TEST_CASE("missing required seed exits 2") {
    auto r = run("sample --graph cycle:4 --beta 0.5 --samples 10");
    CHECK(r.exit_code == 2);
}

TEST_CASE("sampled bit-strings match the exact Gibbs law and the sidecar is honest") {
    auto r = run(
        "sample --graph cycle:4 --beta 0.5 --chain half-edge --seed 424242 "
        "--samples 20000 --burnin 4096 --steps 32 --out cli_tv.txt");
    REQUIRE(r.exit_code == 0);

    lgising::Graph g = lgising::cycle_graph(4);
    lgising::ModelParams p{0.5, 0.0, {}};
    auto gibbs = lgising::exact_gibbs(g, p);
    std::vector<double> freq(gibbs.size(), 0.0);
    std::istringstream lines(slurp("cli_tv.txt"));
    std::string line;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        REQUIRE(line.size() == 4);
        std::size_t idx = 0;
        for (std::size_t e = 0; e < line.size(); ++e)
            if (line[e] == '1') idx |= std::size_t(1) << e;
        freq[idx] += 1.0;
        ++count;
    }
    CHECK(count == 20000);
    for (double& f : freq) f /= count;
    CHECK(lgising::tv_distance(freq, gibbs) <= 0.05);

    // sidecar occupancy agrees with an independent occupancy run within 3
    // combined standard errors
    json side = json::parse(slurp("cli_tv.txt.json"));
    double occ = side["omega0_fraction"].get<double>();
    auto est = lgising::measure_omega_ratio(g, p, 1000000, 929292, 2000);
    double se_ref = est.stderr_ / ((1 + est.ratio) * (1 + est.ratio));  // delta method
    double diff = std::abs(occ - est.omega0_fraction);
    CHECK(diff <= std::max(3 * se_ref + 0.01, 0.02));
    std::remove("cli_tv.txt");
    std::remove("cli_tv.txt.json");
}

TEST_CASE("graph file input with per-edge fields") {
    {
        std::ofstream g("cli_graph.txt");
        g << "p 3 2\n0 1\n1 2\n";
        std::ofstream f("cli_fields.txt");
        f.precision(17);
        f << "0 0.0\n1 " << std::log(3.0) << "\n";
    }
    auto r = run("exact --graph cli_graph.txt --beta 0 --fields cli_fields.txt");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.stdout_text);
    CHECK(std::abs(j["log_Z"].get<double>() - (std::log(2.0) + std::log(4.0))) < 1e-9);
    std::remove("cli_graph.txt");
    std::remove("cli_fields.txt");
}
