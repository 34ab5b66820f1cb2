#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/alternating.hpp"
#include "rainbow/core.hpp"
#include "rainbow/monopath.hpp"

namespace rainbow {

// Exhaustive searches stop explicitly when they run out of budget; a timeout
// is never reported as "none exists".
struct SearchBudget {
    long long node_limit = 50'000'000;
    int time_limit_ms = 30'000;
};

enum class SearchOutcome { witness_found, certified_none, budget_exceeded };

std::string to_string(SearchOutcome o);

// Exact maximum rainbow selection size by backtracking over matching indices
// (static order: ascending edge count, then index; skip branch explored after
// the edge branches; prune on size + remaining <= best). completed=false
// means the budget ran out and best/witness are only a lower bound.
struct MaxRainbowResult {
    bool completed = false;
    int best_size = 0;
    RainbowSelection witness;
    long long nodes = 0;
};

MaxRainbowResult max_rainbow_exact(const MatchingFamily& family,
                                   SearchBudget budget = {});

// Exact decision for rainbow-monotone S-S (or S-T) paths: depth-first over
// (current vertex, last label used, visited set), labels ascending.
struct MonotonePathSearch {
    SearchOutcome outcome = SearchOutcome::certified_none;
    std::optional<LabeledPath> path;
    long long nodes = 0;
};

MonotonePathSearch exists_monotone_path_exact(const PathInstance& inst,
                                              SearchBudget budget = {});

// Exact search for an M-augmenting path whose non-M edges are drawn from
// paths of pairwise-distinct sets H_i. h_labels holds the donating set per
// non-M edge, in path order.
struct StronglyRainbowAugSearch {
    SearchOutcome outcome = SearchOutcome::certified_none;
    std::optional<AlternatingPath> path;
    std::vector<int> h_labels;
    long long nodes = 0;
};

StronglyRainbowAugSearch find_strongly_rainbow_augmenting(const AlternatingSystem& sys,
                                                          SearchBudget budget = {});

// Randomized falsification harness. conj_ab: a random family of n size-n
// matchings must admit a rainbow selection of size n-1 (exact oracle).
// conj_paths: a random alternating system with total path count > 2|M| must
// admit a strongly rainbow augmenting path.
enum class ConjectureTarget { conj_ab, conj_paths };

ConjectureTarget conjecture_target_from_string(const std::string& s);
std::string to_string(ConjectureTarget t);

struct HuntConfig {
    int n_min = 2;
    int n_max = 5;       // conj_ab: family size range
    int r = 2;
    int m_max = 3;       // conj_paths: |M| cap
    SearchBudget budget;
};

struct HuntViolation {
    int trial = 0;
    std::uint64_t seed = 0;
    std::string instance_json;    // replayable instance
    std::string transcript_hash;  // fingerprint of the oracle run
    std::string detail;
};

struct HuntReport {
    ConjectureTarget target = ConjectureTarget::conj_ab;
    int trials = 0;
    int budget_exceeded = 0;  // counted separately; never a violation
    std::vector<HuntViolation> violations;
};

// Runs `trials` independent seeded trials (seed mixed with the trial index,
// so results do not depend on worker count or scheduling) and reports every
// violation with a replayable seed and instance.
HuntReport search_counterexamples(ConjectureTarget target, const HuntConfig& cfg,
                                  int trials, std::uint64_t seed, int workers);

}  // namespace rainbow
