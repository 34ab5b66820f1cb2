#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rainbow/core.hpp"

namespace rainbow {

// A directed path given by its vertex sequence (distinct, length >= 2).
// Edges are the consecutive pairs, in traversal direction; direction matters
// when a later path reuses an edge.
struct DirectedPath {
    std::vector<VertexId> vertices;

    VertexId in() const { return vertices.front(); }
    VertexId ter() const { return vertices.back(); }
    int edge_count() const { return static_cast<int>(vertices.size()) - 1; }

    auto operator<=>(const DirectedPath&) const = default;
};

// An ordered sequence of directed paths over the vertex partition S | Y
// (| T). With t empty the paths run from S to S: both endpoints in S,
// interior in Y. With t nonempty they run from S to T. Path order is the
// "time" axis: a rainbow-monotone path may take at most one edge per source
// path, with source indices strictly increasing along it.
struct PathInstance {
    std::vector<VertexId> s;
    std::vector<VertexId> y;
    std::vector<VertexId> t;  // empty => S-S instance
    std::vector<DirectedPath> paths;

    bool is_st() const { return !t.empty(); }
    int path_count() const { return static_cast<int>(paths.size()); }
};

std::vector<std::string> validate_path_instance(const PathInstance& inst);

// A candidate output path: vertices plus one source-path label per edge
// (0-based indices into inst.paths).
struct LabeledPath {
    std::vector<VertexId> vertices;
    std::vector<int> labels;
};

// True iff the labels strictly increase, every labeled edge is an edge of the
// referenced source path taken in that path's direction, the endpoints lie in
// S (and T for an S-T instance), and the interior lies in Y. A label outside
// [0, path count) is a dangling reference and throws ValidationError.
bool is_rainbow_monotone(const LabeledPath& p, const PathInstance& inst);

struct PathSearchResult {
    std::optional<LabeledPath> path;
    // true when the instance met the constructive guarantee (enough paths for
    // the tree argument); false means the result came from the fallback
    // exhaustive search
    bool guaranteed = false;
};

// Grows one tree per S vertex, each Y vertex joining at most two trees; with
// >= 2|Y|+1 paths this always finds a rainbow-monotone S-S path. With fewer
// paths it reports guaranteed=false and falls back to the exact search.
PathSearchResult find_monotone_ss_treegrow(const PathInstance& inst);

// S-T variant: every Y vertex joins at most one tree, so > |Y| paths suffice.
PathSearchResult find_monotone_st(const PathInstance& inst);

// S-S search by a single forest plus wasted-path accounting: paths fully
// absorbed by the forest are charged to their terminal, and once a terminal
// t collects more wasted paths than its tree has non-root vertices, the
// outside of that tree is contracted to a super-source and the S-T variant
// finishes the job on the clipped paths. Same guarantee as treegrow; the
// found path may differ.
PathSearchResult find_monotone_ss_forest(const PathInstance& inst);

// One set of pairwise vertex-disjoint directed paths; a building block for
// the strongly-rainbow reduction and for the alternating-path machinery.
using DisjointPathSet = std::vector<DirectedPath>;

struct StronglyRainbowResult {
    // labels are H-set indices; pairwise distinct but not necessarily ordered
    std::optional<LabeledPath> path;
    bool guaranteed = false;
};

// Flattens H (every path of H_i before every path of H_j for i < j), finds a
// rainbow-monotone path over the flattening, and relabels edges by containing
// set. Disjointness inside each H_i makes the result strongly rainbow: no two
// edges share a set. Needs total path count > 2|Y| for the guarantee.
// Throws ValidationError if some H_i is not pairwise vertex-disjoint.
StronglyRainbowResult strongly_rainbow_from_monotone(
    const std::vector<DisjointPathSet>& h, const std::vector<VertexId>& s,
    const std::vector<VertexId>& y);

// Checks the strongly-rainbow property directly: every labeled edge belongs
// (directed) to some path of its set, labels are pairwise distinct, endpoints
// in S, interior in Y.
bool is_strongly_rainbow(const LabeledPath& p, const std::vector<DisjointPathSet>& h,
                         const std::vector<VertexId>& s,
                         const std::vector<VertexId>& y);

}  // namespace rainbow
