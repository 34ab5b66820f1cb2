#include "rainbow/core.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace rainbow {

Edge::Edge(std::vector<VertexId> vertices) : verts_(std::move(vertices)) {
    if (verts_.size() < 2)
        throw ValidationError("edge needs at least 2 vertices, got " +
                              std::to_string(verts_.size()));
    std::sort(verts_.begin(), verts_.end());
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        if (verts_[i] < 0)
            throw ValidationError("negative vertex id " + std::to_string(verts_[i]));
        if (i > 0 && verts_[i] == verts_[i - 1])
            throw ValidationError("duplicate vertex " + std::to_string(verts_[i]) +
                                  " in edge");
    }
}

bool Edge::contains(VertexId v) const {
    return std::binary_search(verts_.begin(), verts_.end(), v);
}

bool Edge::intersects(const Edge& other) const {
    std::size_t i = 0, j = 0;
    while (i < verts_.size() && j < other.verts_.size()) {
        if (verts_[i] == other.verts_[j]) return true;
        if (verts_[i] < other.verts_[j])
            ++i;
        else
            ++j;
    }
    return false;
}

int Edge::intersection_size(const Edge& other) const {
    std::size_t i = 0, j = 0;
    int n = 0;
    while (i < verts_.size() && j < other.verts_.size()) {
        if (verts_[i] == other.verts_[j]) {
            ++n;
            ++i;
            ++j;
        } else if (verts_[i] < other.verts_[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return n;
}

std::string Edge::str() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        if (i) os << ',';
        os << verts_[i];
    }
    os << '}';
    return os.str();
}

Matching::Matching(std::vector<Edge> e) : edges(std::move(e)) {
    std::sort(edges.begin(), edges.end());
}

bool Matching::contains_edge(const Edge& e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
}

bool Matching::covers(VertexId v) const {
    for (const Edge& e : edges)
        if (e.contains(v)) return true;
    return false;
}

std::string Matching::invalid_reason() const {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].uniformity() != uniformity())
            return "mixed uniformity: edge " + edges[i].str();
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (edges[i].intersects(edges[j]))
                return "edges intersect: " + edges[i].str() + " and " + edges[j].str();
    }
    return "";
}

std::string to_string(InstanceClass cls) {
    switch (cls) {
        case InstanceClass::general: return "general";
        case InstanceClass::c3c5_free: return "c3c5_free";
        case InstanceClass::pairwise_disjoint: return "pairwise_disjoint";
        case InstanceClass::bipartite: return "bipartite";
    }
    throw Error("unknown instance class");
}

InstanceClass instance_class_from_string(const std::string& s) {
    if (s == "general") return InstanceClass::general;
    if (s == "c3c5_free") return InstanceClass::c3c5_free;
    if (s == "pairwise_disjoint") return InstanceClass::pairwise_disjoint;
    if (s == "bipartite") return InstanceClass::bipartite;
    throw ValidationError("unknown instance class \"" + s + "\"");
}

namespace {

// Union graph of every matching in the family, parallel edges collapsed.
// Only meaningful for r == 2.
std::map<VertexId, std::vector<VertexId>> union_adjacency(const MatchingFamily& f) {
    std::set<std::pair<VertexId, VertexId>> seen;
    std::map<VertexId, std::vector<VertexId>> adj;
    for (const Matching& m : f.matchings) {
        for (const Edge& e : m.edges) {
            VertexId u = e.vertices()[0], v = e.vertices()[1];
            if (!seen.insert({u, v}).second) continue;
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }
    for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

std::string cycle_str(const std::vector<VertexId>& cyc) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (i) os << '-';
        os << cyc[i];
    }
    return os.str();
}

// Finds a cycle of length exactly k (3 or 5) in the collapsed union graph, if
// any. Plain DFS from every start vertex; instances live at desk scale.
std::optional<std::vector<VertexId>> find_cycle_of_length(
    const std::map<VertexId, std::vector<VertexId>>& adj, int k) {
    std::vector<VertexId> path;
    auto has_edge = [&](VertexId a, VertexId b) {
        auto it = adj.find(a);
        if (it == adj.end()) return false;
        return std::binary_search(it->second.begin(), it->second.end(), b);
    };
    std::optional<std::vector<VertexId>> found;
    auto dfs = [&](auto&& self, VertexId v) -> bool {
        if (static_cast<int>(path.size()) == k)
            return has_edge(v, path.front());
        for (VertexId w : adj.at(v)) {
            // only explore cycles whose minimum vertex is the start; cheap
            // dedup, and any cycle is seen from its minimum
            if (w <= path.front()) continue;
            if (std::find(path.begin(), path.end(), w) != path.end()) continue;
            path.push_back(w);
            if (self(self, w)) return true;
            path.pop_back();
        }
        return false;
    };
    for (const auto& [start, nbrs] : adj) {
        (void)nbrs;
        path.assign(1, start);
        if (dfs(dfs, start)) {
            found = path;
            break;
        }
    }
    return found;
}

// 2-colors the collapsed union graph; returns an edge closing an odd cycle if
// the graph is not bipartite.
std::optional<std::pair<VertexId, VertexId>> find_odd_closure(
    const std::map<VertexId, std::vector<VertexId>>& adj) {
    std::map<VertexId, int> color;
    for (const auto& [root, nbrs] : adj) {
        (void)nbrs;
        if (color.count(root)) continue;
        color[root] = 0;
        std::queue<VertexId> q;
        q.push(root);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (VertexId w : adj.at(v)) {
                auto it = color.find(w);
                if (it == color.end()) {
                    color[w] = color[v] ^ 1;
                    q.push(w);
                } else if (it->second == color[v]) {
                    return std::make_pair(v, w);
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::string> validate_family(const MatchingFamily& family) {
    std::vector<std::string> out;
    if (family.r < 2) {
        out.push_back("uniformity r must be >= 2, got " + std::to_string(family.r));
        return out;
    }
    for (int i = 0; i < family.size(); ++i) {
        const Matching& m = family.matchings[i];
        for (const Edge& e : m.edges)
            if (e.uniformity() != family.r)
                out.push_back("F" + std::to_string(i) + ": edge " + e.str() +
                              " has uniformity " + std::to_string(e.uniformity()) +
                              ", family declares r=" + std::to_string(family.r));
        for (std::size_t a = 0; a < m.edges.size(); ++a)
            for (std::size_t b = a + 1; b < m.edges.size(); ++b)
                if (m.edges[a].intersects(m.edges[b]))
                    out.push_back("F" + std::to_string(i) + ": edges intersect: " +
                                  m.edges[a].str() + " and " + m.edges[b].str());
    }
    if (!out.empty()) return out;  // class checks assume structurally sound data

    switch (family.cls) {
        case InstanceClass::general:
            break;
        case InstanceClass::c3c5_free: {
            if (family.r != 2) {
                out.push_back("class c3c5_free requires r=2");
                break;
            }
            auto adj = union_adjacency(family);
            for (int k : {3, 5})
                if (auto cyc = find_cycle_of_length(adj, k)) {
                    out.push_back("declared c3c5_free but union graph has a C" +
                                  std::to_string(k) + ": " + cycle_str(*cyc));
                    break;
                }
            break;
        }
        case InstanceClass::bipartite: {
            if (family.r != 2) {
                out.push_back("class bipartite requires r=2");
                break;
            }
            auto adj = union_adjacency(family);
            if (auto bad = find_odd_closure(adj))
                out.push_back("declared bipartite but union graph has an odd cycle"
                              " through edge {" +
                              std::to_string(bad->first) + "," +
                              std::to_string(bad->second) + "}");
            break;
        }
        case InstanceClass::pairwise_disjoint: {
            if (family.r != 2) {
                out.push_back("class pairwise_disjoint requires r=2");
                break;
            }
            for (int i = 0; i < family.size(); ++i)
                for (int j = i + 1; j < family.size(); ++j)
                    for (const Edge& e : family.matchings[i].edges)
                        if (family.matchings[j].contains_edge(e))
                            out.push_back("declared pairwise_disjoint but F" +
                                          std::to_string(i) + " and F" +
                                          std::to_string(j) + " share edge " + e.str());
            break;
        }
    }
    return out;
}

void RainbowSelection::assign(int index, Edge e) {
    auto& slot = picks_.at(index);
    if (!slot.has_value()) ++count_;
    slot = std::move(e);
}

void RainbowSelection::unassign(int index) {
    auto& slot = picks_.at(index);
    if (slot.has_value()) --count_;
    slot.reset();
}

std::vector<int> RainbowSelection::represented() const {
    std::vector<int> out;
    for (int i = 0; i < family_size(); ++i)
        if (picks_[i].has_value()) out.push_back(i);
    return out;
}

std::vector<int> RainbowSelection::unrepresented() const {
    std::vector<int> out;
    for (int i = 0; i < family_size(); ++i)
        if (!picks_[i].has_value()) out.push_back(i);
    return out;
}

std::vector<std::pair<int, Edge>> RainbowSelection::picks() const {
    std::vector<std::pair<int, Edge>> out;
    out.reserve(count_);
    for (int i = 0; i < family_size(); ++i)
        if (picks_[i].has_value()) out.emplace_back(i, *picks_[i]);
    return out;
}

std::vector<std::string> selection_violations(const MatchingFamily& family,
                                              const RainbowSelection& sel) {
    std::vector<std::string> out;
    if (sel.family_size() != family.size()) {
        out.push_back("selection sized for " + std::to_string(sel.family_size()) +
                      " matchings, family has " + std::to_string(family.size()));
        return out;
    }
    auto picks = sel.picks();
    for (const auto& [i, e] : picks)
        if (!family.matchings[i].contains_edge(e))
            out.push_back("pick for F" + std::to_string(i) + " is " + e.str() +
                          ", not an edge of F" + std::to_string(i));
    for (std::size_t a = 0; a < picks.size(); ++a)
        for (std::size_t b = a + 1; b < picks.size(); ++b)
            if (picks[a].second.intersects(picks[b].second))
                out.push_back("picks for F" + std::to_string(picks[a].first) + " and F" +
                              std::to_string(picks[b].first) + " intersect: " +
                              picks[a].second.str() + ", " + picks[b].second.str());
    return out;
}

bool orthogonal(const Matching& a, const Matching& b) {
    if (!a.edges.empty() && !b.edges.empty() && a.uniformity() != b.uniformity())
        throw ValidationError("orthogonal: uniformity mismatch (" +
                              std::to_string(a.uniformity()) + " vs " +
                              std::to_string(b.uniformity()) + ")");
    for (const Edge& ea : a.edges)
        for (const Edge& eb : b.edges)
            if (ea.intersection_size(eb) != 1) return false;
    return true;
}

std::optional<CrossPair> find_noncrossing_pair(const Edge& h,
                                               const std::vector<Matching>& systems) {
    const int r = h.uniformity();
    for (std::size_t s = 0; s < systems.size(); ++s) {
        const Matching& m = systems[s];
        if (m.size() != r)
            throw PreconditionError("system " + std::to_string(s) + " has size " +
                                    std::to_string(m.size()) + ", want r=" +
                                    std::to_string(r));
        for (const Edge& e : m.edges)
            if (e.intersection_size(h) != 1)
                throw PreconditionError("system " + std::to_string(s) + " edge " +
                                        e.str() + " is not orthogonal to " + h.str());
    }
    for (std::size_t i = 0; i < systems.size(); ++i)
        for (std::size_t j = i + 1; j < systems.size(); ++j)
            for (const Edge& a : systems[i].edges)
                for (const Edge& b : systems[j].edges)
                    if (!a.intersects(b))
                        return CrossPair{static_cast<int>(i), a, static_cast<int>(j), b};
    return std::nullopt;
}

}  // namespace rainbow
