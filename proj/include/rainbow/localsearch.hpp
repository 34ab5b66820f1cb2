#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

// Guaranteed fixpoint size for a class of instances: any selection that
// survives local search must have size >= threshold (= the smallest integer
// strictly above `bound`). Bounds, exactly:
//   general            ((4r-6)(2n-1) - 6) / ((4r-6)(2r-1));  for r=2: 2n/3 - 4/3
//   c3c5_free          3n/4 - 9/4            (r=2; bipartite counts, no odd cycles)
//   pairwise_disjoint  3n/4 - 9/2            (r=2)
struct BoundSpec {
    int n = 0;
    int r = 2;
    InstanceClass cls = InstanceClass::general;
    double bound = 0.0;  // for reporting; threshold is computed in exact arithmetic
    int threshold = 0;
};

BoundSpec threshold(int n, int r, InstanceClass cls);

// One pass over the matchings in index order; for each still-unblocked
// matching picks a seed-chosen edge disjoint from the picks so far. Ends with
// size >= ceil(n/r). The seed only breaks ties; everything else is
// deterministic.
RainbowSelection greedy_rainbow(const MatchingFamily& family, std::uint64_t seed);

// Diagnostics for a selection R over the unrepresented matchings G.
//
// An unrepresented G lands in t[e-index] when exactly r of its edges meet the
// pick e and no other pick (so removing e frees a full size-r system).
// For r=2, {e,f} is a half-wasteful pair for G when G holds g_e meeting only
// e, g_f meeting only f, and g_ef bridging e and f; hw/hw_pairs/b_adj record
// those, hw_pairs with one witness triple per (pair, G).
//
// Keys are the picked matching's index (picks biject onto R's edges).
struct HalfWastefulWitness {
    Edge g_e, g_f, g_ef;
};

struct WastefulReport {
    std::map<int, std::vector<int>> t;
    std::map<int, std::vector<int>> hw;
    std::map<std::pair<int, int>, std::map<int, HalfWastefulWitness>> hw_pairs;
    std::map<int, std::vector<int>> b_adj;  // G index -> pick indices (B-graph)

    int sum_t() const;
    int max_t() const;
    int sum_hw() const;  // equals the B-graph's total degree on the R side
};

WastefulReport analyze_wastefulness(const MatchingFamily& family,
                                    const RainbowSelection& sel);

// Replace the picks of `removed` (j matching indices, sorted) with the j+1
// `added` edges, each tagged with a distinct unrepresented matching index
// (sorted). j may be 0: plain augmentation.
struct SwapMove {
    std::vector<int> removed;
    std::vector<std::pair<int, Edge>> added;
};

// Visits every valid move with |removed| <= max_j in deterministic order:
// j ascending, then removed indices lexicographic, then added (index, edge)
// lexicographic. Visitor returns false to stop early.
void for_each_move(const MatchingFamily& family, const RainbowSelection& sel,
                   int max_j, const std::function<bool(const SwapMove&)>& visit);

std::vector<SwapMove> enumerate_moves(const MatchingFamily& family,
                                      const RainbowSelection& sel, int max_j);

std::optional<SwapMove> first_move(const MatchingFamily& family,
                                   const RainbowSelection& sel, int max_j);

// Applies in place; throws PreconditionError if the move does not fit sel.
void apply_move(const MatchingFamily& family, RainbowSelection& sel,
                const SwapMove& move);

struct LocalSearchResult {
    RainbowSelection selection;
    int q_greedy = 0;
    int moves_applied = 0;
};

// Greedy start, then repeatedly apply the first available move until none
// exists. Every move grows the selection by one, so this terminates after at
// most n - q_greedy applications. The result is a fixpoint: no swap with
// |removed| <= max_j (including plain augmentation) applies.
LocalSearchResult local_search(const MatchingFamily& family, int max_j,
                               std::uint64_t seed);

}  // namespace rainbow
