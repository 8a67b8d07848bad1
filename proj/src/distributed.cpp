// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#include "idgs/distributed.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "idgs/bits.hpp"
#include "json.hpp"

namespace idgs {

namespace {

using json = nlohmann::json;

void check_config(const MarkedOracle& f, const RunConfig& cfg)
{
    if (cfg.n != f.m)
        throw ParameterError("run_idgs: config width disagrees with the oracle");
    if (cfg.k < 0 || cfg.k >= cfg.n)
        throw ParameterError("run_idgs: node-index width k must satisfy 0 <= k < n");
    if (cfg.p < 1 || cfg.p + cfg.k >= cfg.n)
        throw ParameterError("run_idgs: prefix width p must satisfy 1 <= p < n - k");
    if (cfg.parallelism < 1)
        throw ParameterError("run_idgs: parallelism must be positive");
    if (f.marked.size() > 1)
        throw ParameterError("run_idgs: at most one marked item is supported");
}

// Marginal over the first p bits of a full-width distribution.
std::vector<double> prefix_marginal(const std::vector<double>& probs, int width, int p)
{
    std::size_t blocks = std::size_t(1) << p;
    std::size_t block = std::size_t(1) << (width - p);
    std::vector<double> out(blocks, 0.0);
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t off = 0; off < block; ++off)
            out[b] += probs[b * block + off];
    return out;
}

} // namespace

NodeReport run_node(const MarkedOracle& f, const SubfunctionId& id, int p, std::uint64_t seed,
                    const std::optional<NoiseSpec>& noise, bool mirrored, bool brute_force_tail)
{
    MarkedOracle fi = subfunction(f, id);
    int w = fi.m;
    if (p < 1 || p >= w)
        throw ParameterError("run_node: prefix width out of range");
    Rng rng(seed);

    std::string prefix;
    if (!noise) {
        StageResult s1 = idgs_stage1_rng(fi, p, rng, mirrored);
        prefix = s1.measured;
    } else {
        GateSequence seq1 = stage1_circuit(fi, p, mirrored);
        std::vector<double> d1 = noisy_distribution(seq1, *noise, rng.raw());
        std::vector<double> m1 = prefix_marginal(d1, w, p);
        prefix = format_bits(sample_index(m1, rng), p);
    }

    NodeReport r;
    r.id = id;
    r.prefix = prefix;
    std::string tail_bits = id.k > 0 ? format_bits(id.i, id.k) : std::string();

    if (brute_force_tail) {
        // Classical scan of every completion of the measured prefix.
        r.verified = 0;
        r.suffix = std::string(std::size_t(w - p), '0');
        for (std::uint64_t s = 0; s < (std::uint64_t(1) << (w - p)); ++s) {
            std::string cand = prefix + format_bits(s, w - p) + tail_bits;
            if (classical_eval(f, cand)) {
                r.suffix = format_bits(s, w - p);
                r.verified = 1;
                break;
            }
        }
        r.candidate = prefix + r.suffix + tail_bits;
        return r;
    }

    MarkedOracle tail = restrict_prefix(fi, prefix);
    if (!noise) {
        StageResult s2 = run_long_rng(tail, rng);
        r.suffix = s2.measured;
    } else {
        GateSequence seq2 = long_circuit(tail);
        std::vector<double> d2 = noisy_distribution(seq2, *noise, rng.raw());
        r.suffix = format_bits(sample_index(d2, rng), w - p);
    }
    r.candidate = prefix + r.suffix + tail_bits;
    r.verified = classical_eval(f, r.candidate) ? 1 : 0;
    return r;
}

std::optional<std::string> merge_and_verify(const MarkedOracle& f,
                                            const std::vector<NodeReport>& reports)
{
    std::optional<std::string> hit;
    for (const NodeReport& r : reports) {
        if (!r.verified)
            continue;
        if (!classical_eval(f, r.candidate))
            throw IntegrityError("merge_and_verify: report claims verification but f rejects "
                                 + r.candidate);
        if (hit && *hit != r.candidate)
            throw IntegrityError("merge_and_verify: multiple verified candidates");
        hit = r.candidate;
    }
    return hit;
}

IdgsOutcome run_idgs(const MarkedOracle& f, const RunConfig& cfg)
{
    check_config(f, cfg);
    long long nodes = 1ll << cfg.k;
    std::vector<NodeReport> reports(static_cast<std::size_t>(nodes));
    int workers = int(std::min<long long>(cfg.parallelism, nodes));
    if (workers <= 1) {
        for (long long i = 0; i < nodes; ++i)
            reports[std::size_t(i)] = run_node(f, SubfunctionId{cfg.k, std::uint64_t(i)}, cfg.p,
                                               cfg.base_seed + std::uint64_t(i), cfg.noise,
                                               cfg.mirrored, cfg.brute_force_tail);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w]() {
                try {
                    for (long long i = w; i < nodes; i += workers)
                        reports[std::size_t(i)] =
                            run_node(f, SubfunctionId{cfg.k, std::uint64_t(i)}, cfg.p,
                                     cfg.base_seed + std::uint64_t(i), cfg.noise, cfg.mirrored,
                                     cfg.brute_force_tail);
                } catch (...) {
                    errors[std::size_t(w)] = std::current_exception();
                }
            });
        for (std::thread& th : pool)
            th.join();
        for (const std::exception_ptr& e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    IdgsOutcome out;
    out.reports = std::move(reports);
    std::optional<std::string> hit = merge_and_verify(f, out.reports);
    out.found = hit.has_value();
    out.target = hit.value_or("");
    return out;
}

std::string node_request_json(const MarkedOracle& f, const SubfunctionId& id, int p,
                              std::uint64_t seed, bool mirrored, bool brute_force_tail)
{
    if (f.marked.size() != 1)
        throw ParameterError("node_request_json: wire format carries exactly one marked item");
    json j;
    j["oracle"]["n"] = f.m;
    j["oracle"]["target"] = format_bits(f.marked[0], f.m);
    j["i"] = id.i;
    j["k"] = id.k;
    j["p"] = p;
    j["seed"] = seed;
    j["mirrored"] = mirrored;
    j["brute"] = brute_force_tail;
    return j.dump();
}

std::string node_report_json(const NodeReport& r)
{
    json j;
    j["i"] = r.id.i;
    j["k"] = r.id.k;
    j["prefix"] = r.prefix;
    j["suffix"] = r.suffix;
    j["candidate"] = r.candidate;
    j["verified"] = r.verified;
    return j.dump();
}

NodeReport parse_node_report(const std::string& line)
{
    try {
        json j = json::parse(line);
        NodeReport r;
        r.id.i = j.at("i").get<std::uint64_t>();
        r.id.k = j.at("k").get<int>();
        r.prefix = j.at("prefix").get<std::string>();
        r.suffix = j.at("suffix").get<std::string>();
        r.candidate = j.at("candidate").get<std::string>();
        r.verified = j.at("verified").get<int>();
        return r;
    } catch (const json::exception& e) {
        throw IntegrityError(std::string("parse_node_report: malformed report: ") + e.what());
    }
}

std::string serve_node_request(const std::string& request_line)
{
    SubfunctionId id;
    int n, p;
    std::string target;
    std::uint64_t seed;
    bool mirrored, brute;
    try {
        json j = json::parse(request_line);
        n = j.at("oracle").at("n").get<int>();
        target = j.at("oracle").at("target").get<std::string>();
        id.i = j.at("i").get<std::uint64_t>();
        id.k = j.at("k").get<int>();
        p = j.at("p").get<int>();
        seed = j.at("seed").get<std::uint64_t>();
        mirrored = j.value("mirrored", false);
        brute = j.value("brute", false);
    } catch (const json::exception& e) {
        throw IntegrityError(std::string("serve_node_request: malformed request: ") + e.what());
    }
    MarkedOracle f = marked_oracle(n, target);
    NodeReport r = run_node(f, id, p, seed, std::nullopt, mirrored, brute);
    return node_report_json(r);
}

namespace {

struct Child {
    pid_t pid = -1;
    int out_fd = -1; // parent-side read end of the child's stdout
    long long node = -1;
};

Child spawn_worker(const std::string& worker_cmd, const std::string& request)
{
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        throw Error(std::string("run_idgs_multiprocess: pipe failed: ") + std::strerror(errno));
    pid_t pid = fork();
    if (pid < 0)
        throw Error(std::string("run_idgs_multiprocess: fork failed: ") + std::strerror(errno));
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl(worker_cmd.c_str(), worker_cmd.c_str(), "node-worker", (char*)nullptr);
        _exit(127); // exec failed
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    std::string line = request + "\n";
    std::size_t off = 0;
    while (off < line.size()) {
        ssize_t w = write(in_pipe[1], line.data() + off, line.size() - off);
        if (w < 0) {
            if (errno == EINTR)
                continue;
            close(in_pipe[1]);
            close(out_pipe[0]);
            throw Error(std::string("run_idgs_multiprocess: write failed: ")
                        + std::strerror(errno));
        }
        off += std::size_t(w);
    }
    close(in_pipe[1]);
    Child c;
    c.pid = pid;
    c.out_fd = out_pipe[0];
    return c;
}

std::string drain_and_wait(Child& c)
{
    std::string out;
    char buf[4096];
    while (true) {
        ssize_t r = read(c.out_fd, buf, sizeof buf);
        if (r < 0) {
            if (errno == EINTR)
                continue;
            break;
        }
        if (r == 0)
            break;
        out.append(buf, std::size_t(r));
    }
    close(c.out_fd);
    int status = 0;
    waitpid(c.pid, &status, 0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw IntegrityError("run_idgs_multiprocess: worker exited abnormally");
    while (!out.empty() && (out.back() == '\n' || out.back() == '\r'))
        out.pop_back();
    return out;
}

} // namespace

IdgsOutcome run_idgs_multiprocess(const MarkedOracle& f, const RunConfig& cfg,
                                  const std::string& worker_cmd)
{
    check_config(f, cfg);
    if (cfg.noise)
        throw ParameterError("run_idgs_multiprocess: noisy runs are in-process only");
    if (f.marked.size() != 1)
        throw ParameterError("run_idgs_multiprocess: needs exactly one marked item");
    long long nodes = 1ll << cfg.k;
    std::vector<NodeReport> reports(static_cast<std::size_t>(nodes));
    long long next = 0;
    std::vector<Child> wave;
    while (next < nodes || !wave.empty()) {
        while (next < nodes && (long long)wave.size() < cfg.parallelism) {
            SubfunctionId id{cfg.k, std::uint64_t(next)};
            Child c = spawn_worker(worker_cmd,
                                   node_request_json(f, id, cfg.p,
                                                     cfg.base_seed + std::uint64_t(next),
                                                     cfg.mirrored, cfg.brute_force_tail));
            c.node = next;
            wave.push_back(c);
            ++next;
        }
        Child c = wave.back();
        wave.pop_back();
        reports[std::size_t(c.node)] = parse_node_report(drain_and_wait(c));
    }
    IdgsOutcome out;
    out.reports = std::move(reports);
    std::optional<std::string> hit = merge_and_verify(f, out.reports);
    out.found = hit.has_value();
    out.target = hit.value_or("");
    return out;
}

} // namespace idgs
