// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
//
// idgs: planner, simulator and cost model for two-stage distributed exact
// search. Subcommands: plan, run, noise-sweep, depth, dump-circuit,
// verify-identities, node-worker.
//
// Exit codes: 0 success; 1 finished but the target was not found (noisy
// runs); 2 invalid configuration; 3 infeasible plan.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "idgs/algorithms.hpp"
#include "idgs/bits.hpp"
#include "idgs/depth.hpp"
#include "idgs/distributed.hpp"
#include "idgs/identities.hpp"
#include "idgs/noise.hpp"
#include "idgs/operators.hpp"
#include "idgs/planner.hpp"

using ordered_json = nlohmann::ordered_json;
using namespace idgs;

namespace {

// Relative --output paths land under IDGS_OUTPUT_DIR when it is set.
std::string resolve_output(const std::string& path)
{
    if (path.empty() || path.front() == '/')
        return path;
    const char* dir = std::getenv("IDGS_OUTPUT_DIR");
    if (!dir || !*dir)
        return path;
    return std::string(dir) + "/" + path;
}

void write_text(const std::string& output, const std::string& text)
{
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::string path = resolve_output(output);
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open output file: " + path);
    f << text;
    if (!f)
        throw Error("short write to output file: " + path);
}

std::vector<double> parse_grid(const std::string& csv)
{
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        double v = std::stod(item, &used);
        if (used != item.size())
            throw ParameterError("--grid: cannot parse '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ParameterError("--grid: empty list");
    return out;
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Plan serialization shared by `plan` and the run record; works for k = 0.
ordered_json plan_json(int n, int k, int p, bool mirrored)
{
    PartialParams pp = partial_params(n - k, p);
    auto [theta, phi] = solve_phases(pp.E, pp.F, pp.a_t, n - k, mirrored);
    LongParams lp = long_params(n - k - p);
    ordered_json j;
    j["n"] = n;
    j["k"] = k;
    j["p"] = p;
    j["stage1"] = {{"width", pp.width},     {"p1", pp.p1},
                   {"p2", pp.p2},           {"theta1", pp.theta1},
                   {"theta_prime", pp.theta_prime}, {"gamma_p", pp.gamma},
                   {"eta_p", pp.eta},       {"a_t", pp.a_t},
                   {"a_nt", pp.a_nt},       {"E", pp.E},
                   {"F", pp.F},             {"theta", theta},
                   {"phi", phi},            {"mirrored", mirrored}};
    j["stage2"] = {{"width", lp.m},
                   {"iterations", lp.iterations},
                   {"omega", lp.omega},
                   {"lambda", lp.lambda}};
    return j;
}

struct NoiseCli {
    std::string channel; // "", "ad", "pd"
    double gamma = 0.0;
    std::string backend = "auto";
    long long trajectories = 4000;
};

NoiseSpec resolve_noise(const NoiseCli& nc, int width)
{
    NoiseSpec spec;
    if (nc.channel == "ad")
        spec.channel = amplitude_damping(nc.gamma);
    else if (nc.channel == "pd")
        spec.channel = phase_damping(nc.gamma);
    else
        throw ParameterError("noise channel must be 'ad' or 'pd'");
    if (nc.backend == "density")
        spec.backend = NoiseSpec::Backend::density;
    else if (nc.backend == "trajectories")
        spec.backend = NoiseSpec::Backend::trajectories;
    else if (nc.backend == "auto")
        spec.backend = width <= 11 ? NoiseSpec::Backend::density
                                   : NoiseSpec::Backend::trajectories;
    else
        throw ParameterError("backend must be auto, density or trajectories");
    spec.trajectories = nc.trajectories;
    return spec;
}

struct RunCli {
    int n = 0, k = 1, p = 0;
    std::string target;
    std::uint64_t seed = 0;
    int parallelism = 1;
    bool multiprocess = false;
    bool mirrored = false;
    bool brute = false;
    bool timing = false;
    NoiseCli noise;
    std::string output;
    std::string config;
};

// Merge a config file (bare config object or a full run record) under
// explicitly passed command-line flags.
void merge_config(CLI::App* cmd, RunCli& rc)
{
    if (rc.config.empty())
        return;
    std::ifstream f(rc.config);
    if (!f)
        throw ParameterError("cannot open --config file: " + rc.config);
    ordered_json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("--config: malformed JSON: ") + e.what());
    }
    if (j.contains("config"))
        j = j["config"];
    auto fresh = [&](const char* flag) { return cmd->count(flag) == 0; };
    try {
        if (fresh("-n") && j.contains("n"))
            rc.n = j["n"].get<int>();
        if (fresh("-k") && j.contains("k"))
            rc.k = j["k"].get<int>();
        if (fresh("-p") && j.contains("p"))
            rc.p = j["p"].get<int>();
        if (fresh("--target") && j.contains("target"))
            rc.target = j["target"].get<std::string>();
        if (fresh("--seed") && j.contains("seed"))
            rc.seed = j["seed"].get<std::uint64_t>();
        if (fresh("--parallelism") && j.contains("parallelism"))
            rc.parallelism = j["parallelism"].get<int>();
        if (fresh("--multiprocess") && j.contains("multiprocess"))
            rc.multiprocess = j["multiprocess"].get<bool>();
        if (fresh("--mirrored-phases") && j.contains("mirrored_phases"))
            rc.mirrored = j["mirrored_phases"].get<bool>();
        if (fresh("--brute-force-tail") && j.contains("brute_force_tail"))
            rc.brute = j["brute_force_tail"].get<bool>();
        if (j.contains("noise") && !j["noise"].is_null()) {
            const auto& nj = j["noise"];
            if (fresh("--noise-channel") && nj.contains("channel"))
                rc.noise.channel = nj["channel"].get<std::string>();
            if (fresh("--gamma") && nj.contains("gamma"))
                rc.noise.gamma = nj["gamma"].get<double>();
            if (fresh("--backend") && nj.contains("backend"))
                rc.noise.backend = nj["backend"].get<std::string>();
            if (fresh("--trajectories") && nj.contains("trajectories"))
                rc.noise.trajectories = nj["trajectories"].get<long long>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("--config: bad field type: ") + e.what());
    }
}

void validate_run(const RunCli& rc)
{
    std::vector<std::string> bad;
    if (rc.n < 2)
        bad.push_back("n must be at least 2");
    if (rc.k < 0 || rc.k >= rc.n)
        bad.push_back("k must satisfy 0 <= k < n");
    if (rc.p < 1 || rc.p + rc.k >= rc.n)
        bad.push_back("p must satisfy 1 <= p < n - k");
    if (rc.target.empty())
        bad.push_back("--target is required");
    else if ((int)rc.target.size() != rc.n)
        bad.push_back("--target length must equal n");
    else if (rc.target.find_first_not_of("01") != std::string::npos)
        bad.push_back("--target must be a 0/1 string");
    if (rc.parallelism < 1)
        bad.push_back("--parallelism must be positive");
    if (!rc.noise.channel.empty() && rc.noise.channel != "ad" && rc.noise.channel != "pd")
        bad.push_back("--noise-channel must be ad or pd");
    if (!(rc.noise.gamma >= 0.0 && rc.noise.gamma <= 1.0))
        bad.push_back("--gamma must lie in [0, 1]");
    if (rc.noise.trajectories < 100)
        bad.push_back("--trajectories must be at least 100");
    if (rc.multiprocess && !rc.noise.channel.empty())
        bad.push_back("--multiprocess runs are noiseless");
    if (!bad.empty()) {
        std::string msg = "invalid configuration: ";
        for (std::size_t i = 0; i < bad.size(); ++i)
            msg += (i ? "; " : "") + bad[i];
        throw ParameterError(msg);
    }
}

std::string self_path(const char* argv0)
{
    std::error_code ec;
    auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec)
        return p.string();
    return argv0;
}

int cmd_run(CLI::App* cmd, RunCli& rc, const char* argv0)
{
    merge_config(cmd, rc);
    validate_run(rc);

    ordered_json record;
    ordered_json cfgj;
    cfgj["n"] = rc.n;
    cfgj["k"] = rc.k;
    cfgj["p"] = rc.p;
    cfgj["target"] = rc.target;
    cfgj["seed"] = rc.seed;
    cfgj["parallelism"] = rc.parallelism;
    cfgj["multiprocess"] = rc.multiprocess;
    cfgj["mirrored_phases"] = rc.mirrored;
    cfgj["brute_force_tail"] = rc.brute;
    if (rc.noise.channel.empty()) {
        cfgj["noise"] = nullptr;
    } else {
        cfgj["noise"] = {{"channel", rc.noise.channel},
                         {"gamma", rc.noise.gamma},
                         {"backend", rc.noise.backend},
                         {"trajectories", rc.noise.trajectories}};
    }
    record["config"] = cfgj;
    record["plan"] = plan_json(rc.n, rc.k, rc.p, rc.mirrored);

    MarkedOracle f = marked_oracle(rc.n, rc.target);
    RunConfig cfg;
    cfg.n = rc.n;
    cfg.k = rc.k;
    cfg.p = rc.p;
    cfg.base_seed = rc.seed;
    cfg.parallelism = rc.parallelism;
    cfg.mirrored = rc.mirrored;
    cfg.brute_force_tail = rc.brute;
    if (!rc.noise.channel.empty())
        cfg.noise = resolve_noise(rc.noise, rc.n - rc.k);

    auto t0 = std::chrono::steady_clock::now();
    IdgsOutcome outcome = rc.multiprocess ? run_idgs_multiprocess(f, cfg, self_path(argv0))
                                          : run_idgs(f, cfg);
    auto t1 = std::chrono::steady_clock::now();

    ordered_json reps = ordered_json::array();
    for (const NodeReport& r : outcome.reports)
        reps.push_back({{"i", r.id.i},
                        {"k", r.id.k},
                        {"prefix", r.prefix},
                        {"suffix", r.suffix},
                        {"candidate", r.candidate},
                        {"verified", r.verified}});
    record["reports"] = reps;
    record["found"] = outcome.found;
    record["target"] = outcome.target;
    if (rc.timing)
        record["wall_time_ms"] =
            std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::string text = record.dump(2) + "\n";
    write_text(rc.output, text);
    if (!rc.output.empty()) {
        if (outcome.found)
            std::cout << "found " << outcome.target << " (" << outcome.reports.size()
                      << " node" << (outcome.reports.size() == 1 ? "" : "s") << ")\n";
        else
            std::cout << "target not found\n";
    }
    return outcome.found ? 0 : 1;
}

struct SweepCli {
    int n = 5, k = 1, p = 2;
    std::string target = "01100";
    std::string channel = "ad";
    std::string grid;
    std::string backend = "auto";
    long long trajectories = 4000;
    std::string algorithm = "both";
    std::uint64_t seed = 1234;
    std::string output;
};

int cmd_noise_sweep(const SweepCli& sc)
{
    std::vector<std::string> bad;
    if (sc.n < 2)
        bad.push_back("n must be at least 2");
    if (sc.k < 0 || sc.k >= sc.n)
        bad.push_back("k must satisfy 0 <= k < n");
    if (sc.p < 1 || sc.p + sc.k >= sc.n)
        bad.push_back("p must satisfy 1 <= p < n - k");
    if ((int)sc.target.size() != sc.n || sc.target.find_first_not_of("01") != std::string::npos)
        bad.push_back("--target must be a 0/1 string of length n");
    if (sc.channel != "ad" && sc.channel != "pd")
        bad.push_back("--channel must be ad or pd");
    if (sc.algorithm != "both" && sc.algorithm != "idgs" && sc.algorithm != "long")
        bad.push_back("--algorithm must be both, idgs or long");
    if (sc.trajectories < 100)
        bad.push_back("--trajectories must be at least 100");
    if (!bad.empty()) {
        std::string msg = "invalid configuration: ";
        for (std::size_t i = 0; i < bad.size(); ++i)
            msg += (i ? "; " : "") + bad[i];
        throw ParameterError(msg);
    }

    std::vector<double> grid;
    if (!sc.grid.empty())
        grid = parse_grid(sc.grid);
    else if (sc.channel == "ad")
        grid = {0.0, 0.001, 0.005, 0.007, 0.010, 0.020, 0.030, 0.040, 0.050};
    else
        grid = {0.0, 0.001, 0.003, 0.005, 0.007};
    for (double g : grid)
        if (!(g >= 0.0 && g <= 1.0))
            throw ParameterError("--grid: gamma values must lie in [0, 1]");

    MarkedOracle f = marked_oracle(sc.n, sc.target);
    int w = sc.n - sc.k;
    SubfunctionId id{sc.k, sc.k > 0 ? suffix_of(f.marked[0], sc.k) : 0};
    MarkedOracle fi = subfunction(f, id);
    std::uint64_t xi = fi.marked.at(0);
    std::uint64_t prefix_val = prefix_of(xi, w, sc.p);
    std::string prefix_str = format_bits(prefix_val, sc.p);
    std::uint64_t suffix_val = suffix_of(xi, w - sc.p);
    std::uint64_t target_val = f.marked[0];

    GateSequence seq1 = stage1_circuit(fi, sc.p);
    MarkedOracle tail = restrict_prefix(fi, prefix_str);
    GateSequence seq2 = long_circuit(tail);
    GateSequence seql = long_circuit(f);

    auto backend_name = [](const NoiseSpec& s) {
        return s.backend == NoiseSpec::Backend::density ? "density" : "trajectories";
    };
    auto make_spec = [&](int width, double gamma) {
        NoiseCli nc;
        nc.channel = sc.channel;
        nc.gamma = gamma;
        nc.backend = sc.backend;
        nc.trajectories = sc.trajectories;
        return resolve_noise(nc, width);
    };

    std::string csv = "gamma,algorithm,backend,p1_bar,p2_bar,success,stderr\n";
    for (double gamma : grid) {
        if (sc.algorithm != "long") {
            NoiseSpec s1 = make_spec(w, gamma);
            NoiseSpec s2 = make_spec(w - sc.p, gamma);
            NoisyResult r1 = run_noisy(
                seq1, s1,
                [&](std::uint64_t x) { return (x >> (w - sc.p)) == prefix_val; }, 0, sc.seed);
            NoisyResult r2 = run_noisy(
                seq2, s2, [&](std::uint64_t x) { return x == suffix_val; }, 0, sc.seed);
            double success = r1.success * r2.success;
            double se = std::sqrt(r2.success * r2.success * r1.stderr_est * r1.stderr_est
                                  + r1.success * r1.success * r2.stderr_est * r2.stderr_est);
            bool dens = s1.backend == NoiseSpec::Backend::density
                        && s2.backend == NoiseSpec::Backend::density;
            csv += fmt("%.6g", gamma);
            csv += ",idgs,";
            csv += dens ? "density" : "trajectories";
            csv += "," + fmt("%.9f", r1.success) + "," + fmt("%.9f", r2.success) + ","
                   + fmt("%.9f", success) + "," + fmt("%.9f", se) + "\n";
        }
        if (sc.algorithm != "idgs") {
            NoiseSpec sl = make_spec(sc.n, gamma);
            NoisyResult rl = run_noisy(
                seql, sl, [&](std::uint64_t x) { return x == target_val; }, 0, sc.seed);
            csv += fmt("%.6g", gamma);
            csv += ",long,";
            csv += backend_name(sl);
            csv += ",,," + fmt("%.9f", rl.success) + "," + fmt("%.9f", rl.stderr_est) + "\n";
        }
    }
    write_text(sc.output, csv);
    return 0;
}

int cmd_depth(int n, int k, int p, bool as_json, const std::string& output)
{
    DepthReport r = depth_report(n, k, p);
    TheoremCheck t = check_depth_theorem(n, k, p);
    std::string text;
    if (as_json) {
        ordered_json j;
        j["n"] = r.n;
        j["k"] = r.k;
        j["p"] = r.p;
        j["p1"] = r.p1;
        j["p2"] = r.p2;
        j["stage2_iterations"] = r.stage2_iterations;
        j["d_g2"] = r.d_g2;
        j["d_g3"] = r.d_g3;
        j["d_g4"] = r.d_g4;
        j["d_l"] = r.d_l;
        j["stage1_total"] = r.stage1_total;
        j["stage2_total"] = r.stage2_total;
        j["overall"] = r.overall;
        j["grover_baseline"] = r.grover_baseline;
        j["saving"] = r.saving;
        j["queries_stage1_per_node"] = r.queries_stage1_per_node;
        j["queries_stage2_per_node"] = r.queries_stage2_per_node;
        j["total_query_complexity"] = r.total_query_complexity;
        j["warnings"] = r.warnings;
        j["theorem"] = {{"hypothesis_met", t.hypothesis_met},
                        {"holds", t.holds},
                        {"stage1_total", t.stage1_total},
                        {"stage2_total_floor", t.stage2_total_floor}};
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "depth report for n=" << r.n << " k=" << r.k << " p=" << r.p << "\n"
           << "  stage 1: " << r.p1 << " full steps (depth " << r.d_g2 << " each), " << r.p2
           << " block steps (depth " << r.d_g3 << " each), closing step depth " << r.d_g4
           << "\n"
           << "  stage 1 total: " << r.stage1_total << "\n"
           << "  stage 2: " << r.stage2_iterations << " steps (depth " << r.d_l
           << " each), total " << r.stage2_total << "\n"
           << "  overall (deeper stage): " << r.overall << "\n"
           << "  flat baseline: " << r.grover_baseline << "  saving: " << r.saving << "\n"
           << "  queries/node: stage 1 " << r.queries_stage1_per_node << ", stage 2 "
           << r.queries_stage2_per_node << "\n"
           << "  total query complexity: " << fmt("%.3f", r.total_query_complexity) << "\n"
           << "  stage-1-dominates check: " << (t.holds ? "holds" : "does not hold")
           << (t.hypothesis_met ? "" : " (outside stated hypotheses; informational)") << "\n";
        for (const std::string& wmsg : r.warnings)
            os << "  warning: " << wmsg << "\n";
        text = os.str();
    }
    write_text(output, text);
    return 0;
}

struct DumpCli {
    std::string kind;
    int n = 0;
    std::string target;
    int q = 0;
    double theta = std::nan("");
    double phi = std::nan("");
    double omega = std::nan("");
    double alpha = M_PI;
    int k = 0;
    std::uint64_t i = 0;
    bool mirrored = false;
    std::string output;
};

int cmd_dump(const DumpCli& dc)
{
    if (dc.n < 1)
        throw ParameterError("dump-circuit: -n is required and must be positive");
    MarkedOracle f;
    if (!dc.target.empty()) {
        f = marked_oracle(dc.n, dc.target);
    } else {
        f.m = dc.n;
        if (dc.kind != "g2" && dc.kind != "g4")
            throw ParameterError("dump-circuit: --target is required for kind " + dc.kind);
    }
    GateSequence seq;
    if (dc.kind == "g" || dc.kind == "g2") {
        seq = compile_operator(dc.kind == "g" ? make_g(f) : make_g2(f));
    } else if (dc.kind == "g1" || dc.kind == "g3") {
        if (dc.q < 1 || dc.q >= dc.n)
            throw ParameterError("dump-circuit: needs a prefix width -q in [1, n)");
        seq = compile_operator(dc.kind == "g1" ? make_g1(f, dc.q) : make_g3(f, dc.q));
    } else if (dc.kind == "g4" || dc.kind == "gg") {
        double th = dc.theta, ph = dc.phi;
        if (std::isnan(th) || std::isnan(ph)) {
            if (dc.kind == "gg" || dc.q < 1)
                throw ParameterError("dump-circuit: " + dc.kind
                                     + " needs --theta and --phi (or -q for g4)");
            PartialParams pp = partial_params(dc.n, dc.q);
            std::tie(th, ph) = solve_phases(pp.E, pp.F, pp.a_t, dc.n, dc.mirrored);
        }
        seq = compile_operator(dc.kind == "g4" ? make_g4(f, th, ph) : make_gg(f, th, ph));
    } else if (dc.kind == "l") {
        double om = std::isnan(dc.omega) ? long_params(dc.n).omega : dc.omega;
        seq = compile_operator(make_l(f, om));
    } else if (dc.kind == "uf") {
        seq = compile_bit_oracle(f);
    } else if (dc.kind == "ufi") {
        if (dc.k < 1 || dc.k >= dc.n)
            throw ParameterError("dump-circuit: ufi needs -k in [1, n)");
        seq = synthesize_subfunction_phase_oracle(compile_bit_oracle(f),
                                                  SubfunctionId{dc.k, dc.i}, dc.alpha);
    } else {
        throw ParameterError("dump-circuit: unknown kind " + dc.kind);
    }
    write_text(dc.output, serialize(seq));
    return 0;
}

int cmd_identities(bool inject, bool as_json, const std::string& output)
{
    std::vector<IdentityResult> rs = run_identity_checks(inject);
    bool all = true;
    std::string text;
    if (as_json) {
        ordered_json j = ordered_json::array();
        for (const IdentityResult& r : rs) {
            j.push_back({{"name", r.name},
                         {"pass", r.pass},
                         {"max_residual", r.max_residual},
                         {"note", r.note}});
            all = all && r.pass;
        }
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (const IdentityResult& r : rs) {
            os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (max residual "
               << fmt("%.3g", r.max_residual) << ")  " << r.note << "\n";
            all = all && r.pass;
        }
        os << (all ? "all identities hold\n" : "some identities FAILED\n");
        text = os.str();
    }
    write_text(output, text);
    return all ? 0 : 1;
}

int cmd_node_worker()
{
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty())
            continue;
        std::cout << serve_node_request(line) << "\n" << std::flush;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"planner, simulator and cost model for two-stage distributed exact search"};
    app.require_subcommand(1);

    // plan
    int pn = 0, pk = 1, pp_ = 0;
    bool pmirror = false, pjson = false;
    std::string pout;
    CLI::App* plan = app.add_subcommand("plan", "solve the two-stage schedule and phases");
    plan->add_option("-n", pn, "total register width")->required();
    plan->add_option("-k", pk, "node-index width (number of nodes = 2^k)");
    plan->add_option("-p", pp_, "prefix width searched in stage 1")->required();
    plan->add_flag("--mirrored-phases", pmirror, "use the conjugate closing-phase branch");
    plan->add_flag("--json", pjson, "emit JSON");
    plan->add_option("--output", pout, "write to file instead of stdout");

    // run
    RunCli rc;
    CLI::App* run = app.add_subcommand("run", "run the full two-stage distributed search");
    run->add_option("-n", rc.n, "total register width");
    run->add_option("-k", rc.k, "node-index width (number of nodes = 2^k)");
    run->add_option("-p", rc.p, "prefix width searched in stage 1");
    run->add_option("--target", rc.target, "marked bit string, MSB first");
    run->add_option("--seed", rc.seed, "base seed; node i uses seed + i");
    run->add_option("--parallelism", rc.parallelism, "worker threads/processes");
    run->add_flag("--multiprocess", rc.multiprocess, "one child process per node");
    run->add_flag("--mirrored-phases", rc.mirrored, "use the conjugate closing-phase branch");
    run->add_flag("--brute-force-tail", rc.brute, "classical scan instead of quantum stage 2");
    run->add_option("--noise-channel", rc.noise.channel, "ad or pd; omit for an exact run");
    run->add_option("--gamma", rc.noise.gamma, "per-gate noise strength");
    run->add_option("--backend", rc.noise.backend, "auto, density or trajectories");
    run->add_option("--trajectories", rc.noise.trajectories, "trajectory count");
    run->add_flag("--timing", rc.timing, "include wall_time_ms in the record");
    run->add_option("--output", rc.output, "write the JSON record to a file");
    run->add_option("--config", rc.config, "JSON config or record to re-run");

    // noise-sweep
    SweepCli sc;
    CLI::App* sweep = app.add_subcommand("noise-sweep",
                                         "success probability vs noise strength, CSV");
    sweep->add_option("-n", sc.n, "total register width");
    sweep->add_option("-k", sc.k, "node-index width");
    sweep->add_option("-p", sc.p, "prefix width");
    sweep->add_option("--target", sc.target, "marked bit string");
    sweep->add_option("--channel", sc.channel, "ad or pd");
    sweep->add_option("--grid", sc.grid, "comma-separated gamma values");
    sweep->add_option("--backend", sc.backend, "auto, density or trajectories");
    sweep->add_option("--trajectories", sc.trajectories, "trajectory count");
    sweep->add_option("--algorithm", sc.algorithm, "both, idgs or long");
    sweep->add_option("--seed", sc.seed, "trajectory base seed");
    sweep->add_option("--output", sc.output, "write CSV to a file");

    // depth
    int dn = 0, dk = 1, dp = 0;
    bool djson = false;
    std::string dout;
    CLI::App* depth = app.add_subcommand("depth", "circuit-depth and query accounting");
    depth->add_option("-n", dn, "total register width")->required();
    depth->add_option("-k", dk, "node-index width");
    depth->add_option("-p", dp, "prefix width")->required();
    depth->add_flag("--json", djson, "emit JSON");
    depth->add_option("--output", dout, "write to file instead of stdout");

    // dump-circuit
    DumpCli dc;
    CLI::App* dump = app.add_subcommand("dump-circuit", "print a compiled operator");
    dump->add_option("--kind", dc.kind, "g, g1, g2, g3, g4, gg, l, uf or ufi")->required();
    dump->add_option("-n", dc.n, "operator register width")->required();
    dump->add_option("--target", dc.target, "marked bit string (may be omitted for g2/g4)");
    dump->add_option("-q,--prefix", dc.q, "prefix width (g1/g3; derives phases for g4)");
    dump->add_option("--theta", dc.theta, "reflection phase");
    dump->add_option("--phi", dc.phi, "oracle phase");
    dump->add_option("--omega", dc.omega, "matched phase for l (default: solved)");
    dump->add_option("--alpha", dc.alpha, "synthesized oracle phase (ufi)");
    dump->add_option("-k", dc.k, "fixed low-bit count (ufi)");
    dump->add_option("-i", dc.i, "fixed low-bit value (ufi)");
    dump->add_flag("--mirrored-phases", dc.mirrored, "use the conjugate closing-phase branch");
    dump->add_option("--output", dc.output, "write to file instead of stdout");

    // verify-identities
    bool inject = false, ijson = false;
    std::string iout;
    CLI::App* ids = app.add_subcommand("verify-identities",
                                       "run the analytic consistency checks");
    ids->add_flag("--inject-wrong-sign", inject,
                  "flip the closing oracle phase to prove the checks can fail");
    ids->add_flag("--json", ijson, "emit JSON");
    ids->add_option("--output", iout, "write to file instead of stdout");

    // node-worker
    CLI::App* worker = app.add_subcommand("node-worker",
                                          "serve node requests over stdin/stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    }

    try {
        if (plan->parsed()) {
            IdgsPlan ip = idgs_plan(pn, pk, pp_, pmirror);
            if (pjson) {
                write_text(pout, plan_json(pn, pk, pp_, pmirror).dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "register: n=" << ip.n << " k=" << ip.k << " p=" << ip.p
                   << " (stage-1 width " << (ip.n - ip.k) << ", stage-2 width "
                   << (ip.n - ip.k - ip.p) << ")\n"
                   << "stage 1: p1=" << ip.p1 << " full steps, p2=" << ip.p2
                   << " block steps, closing phases theta=" << fmt("%.8f", ip.theta)
                   << " phi=" << fmt("%.8f", ip.phi) << "\n"
                   << "stage 2: " << ip.stage2.iterations
                   << " steps, omega=" << fmt("%.8f", ip.stage2.omega) << "\n"
                   << "pre-closing amplitudes: a_t=" << fmt("%.8f", ip.a_t)
                   << " a_nt=" << fmt("%.8f", ip.a_nt) << " E=" << fmt("%.8f", ip.E)
                   << " F=" << fmt("%.8f", ip.F) << "\n";
                write_text(pout, os.str());
            }
            return 0;
        }
        if (run->parsed())
            return cmd_run(run, rc, argv[0]);
        if (sweep->parsed())
            return cmd_noise_sweep(sc);
        if (depth->parsed())
            return cmd_depth(dn, dk, dp, djson, dout);
        if (dump->parsed())
            return cmd_dump(dc);
        if (ids->parsed())
            return cmd_identities(inject, ijson, iout);
        if (worker->parsed())
            return cmd_node_worker();
    } catch (const InfeasiblePlanError& e) {
        std::cerr << "infeasible plan: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
