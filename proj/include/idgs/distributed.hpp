// Copyright (c) the idgs contributors.
// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idgs/algorithms.hpp"
#include "idgs/noise.hpp"

namespace idgs {

// One node's contribution: the measured prefix and suffix, the assembled
// candidate prefix || suffix || i, and the classical check f(candidate).
struct NodeReport {
    SubfunctionId id;
    std::string prefix;
    std::string suffix;
    std::string candidate;
    int verified;
};

struct RunConfig {
    int n = 0;
    int k = 0; // k = 0 degenerates to a single node
    int p = 0;
    std::uint64_t base_seed = 0;
    int parallelism = 1;
    bool mirrored = false;         // use the conjugate closing-phase branch
    bool brute_force_tail = false; // classical scan instead of quantum stage 2
    std::optional<NoiseSpec> noise; // empty = exact statevector run
};

struct IdgsOutcome {
    bool found;
    std::string target; // empty when not found
    std::vector<NodeReport> reports;
};

// Runs all 2^k nodes (node i seeded with base_seed + i), merges and
// verifies. Noiseless runs always find the target; noisy runs may return
// found = false, which is an outcome, not an error.
IdgsOutcome run_idgs(const MarkedOracle& f, const RunConfig& cfg);

// The unique verified candidate, if any. Two or more verified candidates
// violate the unique-target precondition and raise IntegrityError.
std::optional<std::string> merge_and_verify(const MarkedOracle& f,
                                            const std::vector<NodeReport>& reports);

// One node's work; used in-process and by the pipe worker.
NodeReport run_node(const MarkedOracle& f, const SubfunctionId& id, int p, std::uint64_t seed,
                    const std::optional<NoiseSpec>& noise, bool mirrored = false,
                    bool brute_force_tail = false);

// JSON-lines wire format for the multi-process mode.
std::string node_request_json(const MarkedOracle& f, const SubfunctionId& id, int p,
                              std::uint64_t seed, bool mirrored = false,
                              bool brute_force_tail = false);
std::string node_report_json(const NodeReport& r);
NodeReport parse_node_report(const std::string& line);

// Worker side: one request line in, one report line out.
std::string serve_node_request(const std::string& request_line);

// Same contract as run_idgs, but each node runs in a child process started
// as `worker_cmd node-worker` talking JSON lines over pipes (noiseless only).
IdgsOutcome run_idgs_multiprocess(const MarkedOracle& f, const RunConfig& cfg,
                                  const std::string& worker_cmd);

} // namespace idgs
