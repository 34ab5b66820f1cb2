#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

using VertexId = std::int32_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// malformed input data (files, constructed objects)
struct ValidationError : Error {
    using Error::Error;
};
// an operation's stated precondition does not hold
struct PreconditionError : Error {
    using Error::Error;
};
// a generator gave up after its retry limit
struct GenError : Error {
    using Error::Error;
};

// An edge of an r-uniform hypergraph, r >= 2. Vertices are stored sorted and
// distinct, so comparison and hashing are structural. For r=2 this is an
// ordinary graph edge.
class Edge {
public:
    Edge() = default;
    explicit Edge(std::vector<VertexId> vertices);
    Edge(std::initializer_list<VertexId> vertices)
        : Edge(std::vector<VertexId>(vertices)) {}

    int uniformity() const { return static_cast<int>(verts_.size()); }
    const std::vector<VertexId>& vertices() const { return verts_; }
    bool contains(VertexId v) const;
    bool intersects(const Edge& other) const;
    int intersection_size(const Edge& other) const;
    std::string str() const;

    auto operator<=>(const Edge&) const = default;

private:
    std::vector<VertexId> verts_;
};

// A set of pairwise disjoint edges of one uniformity. Construction sorts the
// edge list into canonical order but does not reject bad data; families are
// validated as a whole by validate_family so that a loader can surface every
// problem at once. Solver entry points assume validated input.
struct Matching {
    std::vector<Edge> edges;

    Matching() = default;
    explicit Matching(std::vector<Edge> e);

    int size() const { return static_cast<int>(edges.size()); }
    int uniformity() const { return edges.empty() ? 0 : edges.front().uniformity(); }
    bool contains_edge(const Edge& e) const;
    bool covers(VertexId v) const;
    // empty string when the matching is uniform and pairwise disjoint
    std::string invalid_reason() const;

    auto operator<=>(const Matching&) const = default;
};

enum class InstanceClass { general, c3c5_free, pairwise_disjoint, bipartite };

std::string to_string(InstanceClass cls);
InstanceClass instance_class_from_string(const std::string& s);

// A family F_1..F_n of matchings in a common vertex universe. declared_class
// is asserted, never inferred: validate_family checks the data against it.
struct MatchingFamily {
    int r = 2;
    InstanceClass cls = InstanceClass::general;
    std::vector<Matching> matchings;

    int size() const { return static_cast<int>(matchings.size()); }
};

// Returns human-readable violations; empty means the family is well formed
// and satisfies its declared class. Checks, in order: uniformity of every
// edge against r, disjointness inside each matching, and the class predicate
// (c3c5_free: no 3- or 5-cycle in the union graph with parallel edges
// collapsed; bipartite: union graph 2-colorable; pairwise_disjoint: no edge
// shared between two matchings). Class checks other than "general" require
// r == 2.
std::vector<std::string> validate_family(const MatchingFamily& family);

// A partial rainbow selection: at most one edge per matching index, edges
// pairwise disjoint. Disjointness is the caller's obligation during
// incremental edits; selection_violations re-checks everything.
class RainbowSelection {
public:
    RainbowSelection() = default;
    explicit RainbowSelection(int family_size) : picks_(family_size) {}

    int family_size() const { return static_cast<int>(picks_.size()); }
    int size() const { return count_; }
    bool has(int index) const { return picks_.at(index).has_value(); }
    const Edge& edge(int index) const { return picks_.at(index).value(); }

    void assign(int index, Edge e);
    void unassign(int index);

    std::vector<int> represented() const;
    std::vector<int> unrepresented() const;
    // (matching index, picked edge), ascending by index
    std::vector<std::pair<int, Edge>> picks() const;

private:
    std::vector<std::optional<Edge>> picks_;
    int count_ = 0;
};

std::vector<std::string> selection_violations(const MatchingFamily& family,
                                              const RainbowSelection& sel);

// True iff every edge of a meets every edge of b in exactly one vertex.
// Throws ValidationError if both are nonempty with different uniformities.
bool orthogonal(const Matching& a, const Matching& b);

struct CrossPair {
    int system_a = 0;
    Edge a;
    int system_b = 0;
    Edge b;
};

// Scans systems (each a size-r matching orthogonal to {h}; checked, throws
// PreconditionError) for two edges from distinct systems that are disjoint.
// With |systems| >= r+1 such a pair always exists; with fewer it may not.
// Deterministic: first pair in (system, edge) lexicographic order.
std::optional<CrossPair> find_noncrossing_pair(const Edge& h,
                                               const std::vector<Matching>& systems);

}  // namespace rainbow
