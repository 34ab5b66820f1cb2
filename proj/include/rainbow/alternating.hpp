#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

// A path that alternates between non-matching and matching edges, stored as a
// vertex sequence plus one flag per edge (true = the edge is in the reference
// matching M). An M-augmenting path has odd length and both end edges outside
// M, which forces both endpoints to be M-unmatched.
struct AlternatingPath {
    std::vector<VertexId> vertices;
    std::vector<bool> in_m;

    int edge_count() const { return static_cast<int>(in_m.size()); }
    Edge edge(int i) const { return Edge{vertices[i], vertices[i + 1]}; }
};

// empty when p is a well-formed M-augmenting path
std::string augmenting_violation(const Matching& m, const AlternatingPath& p);

// Components of the symmetric difference M (+) F for two r=2 matchings,
// deterministically ordered by smallest vertex. Path components are split
// into M-augmenting ones and the rest; cycles are reported as closed vertex
// sequences (start = minimum vertex, not repeated at the end).
struct SymdiffDecomposition {
    std::vector<AlternatingPath> augmenting;
    std::vector<AlternatingPath> other_paths;
    std::vector<std::vector<VertexId>> cycles;
};

SymdiffDecomposition symdiff_decompose(const Matching& m, const Matching& f);

// M (+) P for an M-augmenting path P; result is one edge larger.
// Throws PreconditionError when P is not augmenting with respect to M.
Matching augment(const Matching& m, const AlternatingPath& p);

// A matching plus sets of pairwise vertex-disjoint M-augmenting paths; the
// input shape for the strongly-rainbow augmenting search. h_total is the
// total path count across sets.
struct AlternatingSystem {
    Matching m;
    std::vector<std::vector<AlternatingPath>> h;
};

int h_total(const AlternatingSystem& sys);

std::vector<std::string> validate_alternating_system(const AlternatingSystem& sys);

enum class SolverStepOutcome { augmented, oracle_none, oracle_budget, hypothesis_unmet };

struct SolverStep {
    int q_before = 0;
    int h_norm = 0;      // total candidate paths offered to the oracle
    SolverStepOutcome outcome = SolverStepOutcome::hypothesis_unmet;
};

struct SolverTrace {
    std::vector<SolverStep> steps;
    // set when the oracle certified "none" although the candidate pool was
    // larger than twice the matching; the serialized system is kept so the
    // event can be replayed
    bool counterexample_candidate = false;
    std::string candidate_system_json;
};

struct ConjectureSolverResult {
    RainbowSelection selection;
    SolverTrace trace;
};

// Grows a rainbow matching beyond the local-search fixpoint by repeatedly
// extracting, for every unrepresented F_i, up to path_budget augmenting paths
// from M (+) F_i and asking the exact oracle for an augmenting path whose
// non-M edges come from pairwise-distinct sets. Each success recolors: a used
// non-M edge is charged to the F_i that donated it, picks of flipped-out M
// edges are released. Stops when the pool is too small (total <= 2|M|) or the
// oracle finds nothing. path_budget <= 0 selects ceil(sqrt(2n)) + 1.
// Requires r == 2.
ConjectureSolverResult conjecture_driven_solver(const MatchingFamily& family,
                                                int path_budget, std::uint64_t seed);

}  // namespace rainbow
