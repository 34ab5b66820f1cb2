#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

// One generated instance solved by local search; the unit of batch
// verification. ms is wall time and is the only field allowed to differ
// between the parallel and the serial runner.
struct SolveRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int n = 0;
    int r = 2;
    InstanceClass cls = InstanceClass::general;
    int max_j = 1;
    int q_greedy = 0;
    int q_final = 0;
    int threshold = 0;
    int moves = 0;
    bool ok = false;  // selection validates and q_final >= threshold
    double ms = 0.0;
};

// equal up to timing
bool same_outcome(const SolveRecord& a, const SolveRecord& b);
bool same_outcomes(const std::vector<SolveRecord>& a, const std::vector<SolveRecord>& b);

struct BoundTrialConfig {
    int n_min = 6;
    int n_max = 15;
    int r = 2;
    InstanceClass cls = InstanceClass::general;
    int max_j = 1;
    int trials = 100;
    std::uint64_t seed = 0;
};

// Trials run in parallel (workers <= 0 picks the OpenMP default), each one
// single-threaded with a seed mixed from (config seed, trial index). Records
// are returned ordered by trial index, so the output does not depend on the
// worker count.
std::vector<SolveRecord> run_bound_trials(const BoundTrialConfig& cfg, int workers);

// plain loop over the same per-trial function; reference for testing and the
// baseline the benchmark compares against
std::vector<SolveRecord> run_bound_trials_serial(const BoundTrialConfig& cfg);

// smallest q_final - threshold over the batch; 0 records => 0
int min_slack(const std::vector<SolveRecord>& records);

int violation_count(const std::vector<SolveRecord>& records);

// fixed columns behind a versioned header comment
std::string to_csv(const std::vector<SolveRecord>& records);

}  // namespace rainbow
