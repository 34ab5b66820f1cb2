#include "rainbow/alternating.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "rainbow/json_io.hpp"
#include "rainbow/localsearch.hpp"
#include "rainbow/log.hpp"
#include "rainbow/oracle.hpp"

namespace rainbow {

std::string augmenting_violation(const Matching& m, const AlternatingPath& p) {
    if (p.vertices.size() < 2) return "path needs at least 2 vertices";
    if (p.in_m.size() + 1 != p.vertices.size())
        return "flag count " + std::to_string(p.in_m.size()) + " does not match " +
               std::to_string(p.vertices.size()) + " vertices";
    {
        std::vector<VertexId> sorted = p.vertices;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end())
            return "repeated vertex " + std::to_string(*dup);
    }
    if (p.edge_count() % 2 == 0) return "even edge count";
    if (p.in_m.front()) return "first edge lies in M";
    if (p.in_m.back()) return "last edge lies in M";
    for (int i = 0; i + 1 < p.edge_count(); ++i)
        if (p.in_m[i] == p.in_m[i + 1])
            return "edges " + std::to_string(i) + " and " + std::to_string(i + 1) +
                   " do not alternate";
    for (int i = 0; i < p.edge_count(); ++i) {
        Edge e = p.edge(i);
        bool present = m.contains_edge(e);
        if (p.in_m[i] && !present)
            return "edge " + e.str() + " flagged as an M edge but M lacks it";
        if (!p.in_m[i] && present)
            return "edge " + e.str() + " flagged outside M but M contains it";
    }
    if (m.covers(p.vertices.front()))
        return "endpoint " + std::to_string(p.vertices.front()) + " is M-covered";
    if (m.covers(p.vertices.back()))
        return "endpoint " + std::to_string(p.vertices.back()) + " is M-covered";
    return {};
}

namespace {

void require_graph_matching(const Matching& m, const char* name) {
    if (!m.edges.empty() && m.uniformity() != 2)
        throw PreconditionError(std::string(name) + " must have uniformity 2, got " +
                                std::to_string(m.uniformity()));
    std::string reason = m.invalid_reason();
    if (!reason.empty())
        throw PreconditionError(std::string(name) + ": " + reason);
}

}  // namespace

SymdiffDecomposition symdiff_decompose(const Matching& m, const Matching& f) {
    require_graph_matching(m, "M");
    require_graph_matching(f, "F");

    // vertex -> (neighbor, edge is in M), degree <= 2 since each side is a matching
    std::map<VertexId, std::vector<std::pair<VertexId, bool>>> adj;
    auto add = [&adj](const Edge& e, bool in_m) {
        VertexId a = e.vertices()[0], b = e.vertices()[1];
        adj[a].emplace_back(b, in_m);
        adj[b].emplace_back(a, in_m);
    };
    for (const Edge& e : m.edges)
        if (!f.contains_edge(e)) add(e, true);
    for (const Edge& e : f.edges)
        if (!m.contains_edge(e)) add(e, false);
    for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());

    SymdiffDecomposition out;
    std::set<VertexId> visited;
    for (const auto& [start, _] : adj) {
        if (visited.count(start)) continue;
        // collect the component
        std::vector<VertexId> comp{start};
        visited.insert(start);
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (const auto& [w, in_m] : adj[comp[i]])
                if (visited.insert(w).second) comp.push_back(w);

        std::vector<VertexId> endpoints;
        for (VertexId v : comp)
            if (adj[v].size() == 1) endpoints.push_back(v);

        auto step = [&adj](VertexId cur, VertexId prev) {
            for (const auto& [w, in_m] : adj[cur])
                if (w != prev) return std::pair<VertexId, bool>(w, in_m);
            return std::pair<VertexId, bool>(prev, adj[cur].front().second);
        };

        if (endpoints.empty()) {
            // cycle; start at the minimum vertex (== `start`, since adj is
            // scanned in ascending order), head toward the smaller neighbor
            std::vector<VertexId> cyc{start};
            VertexId prev = start, cur = adj[start].front().first;
            while (cur != start) {
                cyc.push_back(cur);
                auto [nxt, in_m] = step(cur, prev);
                prev = cur;
                cur = nxt;
            }
            out.cycles.push_back(std::move(cyc));
            continue;
        }

        std::sort(endpoints.begin(), endpoints.end());
        AlternatingPath path;
        path.vertices.push_back(endpoints.front());
        VertexId prev = -1, cur = endpoints.front();
        while (adj[cur].size() == 2 || cur == endpoints.front()) {
            auto [nxt, in_m] = step(cur, prev);
            path.vertices.push_back(nxt);
            path.in_m.push_back(in_m);
            prev = cur;
            cur = nxt;
            if (adj[cur].size() == 1) break;
        }
        if (augmenting_violation(m, path).empty())
            out.augmenting.push_back(std::move(path));
        else
            out.other_paths.push_back(std::move(path));
    }
    return out;
}

Matching augment(const Matching& m, const AlternatingPath& p) {
    std::string v = augmenting_violation(m, p);
    if (!v.empty()) throw PreconditionError("augment: " + v);
    std::vector<Edge> edges;
    for (int i = 0; i < p.edge_count(); ++i)
        if (!p.in_m[i]) edges.push_back(p.edge(i));
    std::set<Edge> flipped_out;
    for (int i = 0; i < p.edge_count(); ++i)
        if (p.in_m[i]) flipped_out.insert(p.edge(i));
    for (const Edge& e : m.edges)
        if (!flipped_out.count(e)) edges.push_back(e);
    return Matching(std::move(edges));
}

int h_total(const AlternatingSystem& sys) {
    int total = 0;
    for (const auto& set : sys.h) total += static_cast<int>(set.size());
    return total;
}

std::vector<std::string> validate_alternating_system(const AlternatingSystem& sys) {
    std::vector<std::string> out;
    if (!sys.m.edges.empty() && sys.m.uniformity() != 2)
        out.push_back("M must have uniformity 2, got " +
                      std::to_string(sys.m.uniformity()));
    std::string reason = sys.m.invalid_reason();
    if (!reason.empty()) out.push_back("M: " + reason);
    if (!out.empty()) return out;

    for (std::size_t i = 0; i < sys.h.size(); ++i) {
        const auto& set = sys.h[i];
        for (std::size_t k = 0; k < set.size(); ++k) {
            std::string v = augmenting_violation(sys.m, set[k]);
            if (!v.empty())
                out.push_back("H" + std::to_string(i) + "[" + std::to_string(k) +
                              "]: " + v);
        }
        std::map<VertexId, std::size_t> seen;
        for (std::size_t k = 0; k < set.size(); ++k)
            for (VertexId v : set[k].vertices) {
                auto [it, fresh] = seen.emplace(v, k);
                if (!fresh && it->second != k)
                    out.push_back("H" + std::to_string(i) + ": paths " +
                                  std::to_string(it->second) + " and " +
                                  std::to_string(k) + " share vertex " +
                                  std::to_string(v));
            }
    }
    return out;
}

ConjectureSolverResult conjecture_driven_solver(const MatchingFamily& family,
                                                int path_budget, std::uint64_t seed) {
    if (family.r != 2)
        throw PreconditionError("conjecture_driven_solver requires r == 2, got r = " +
                                std::to_string(family.r));
    const int n = family.size();
    if (path_budget <= 0) {
        int k = 0;
        while (k * k < 2 * n) ++k;
        path_budget = k + 1;
    }

    ConjectureSolverResult out{local_search(family, 1, seed).selection, {}};
    RainbowSelection& sel = out.selection;

    for (;;) {
        std::vector<int> unrep = sel.unrepresented();
        if (unrep.empty()) break;

        std::vector<Edge> medges;
        std::map<Edge, int> owner;
        for (const auto& [i, e] : sel.picks()) {
            medges.push_back(e);
            owner.emplace(e, i);
        }
        AlternatingSystem sys;
        sys.m = Matching(std::move(medges));

        std::vector<int> h_src;
        for (int i : unrep) {
            auto dec = symdiff_decompose(sys.m, family.matchings[i]);
            if (dec.augmenting.empty()) continue;
            if (static_cast<int>(dec.augmenting.size()) > path_budget)
                dec.augmenting.resize(path_budget);
            sys.h.push_back(std::move(dec.augmenting));
            h_src.push_back(i);
        }

        SolverStep step;
        step.q_before = sel.size();
        step.h_norm = h_total(sys);
        if (step.h_norm <= 2 * sys.m.size()) {
            step.outcome = SolverStepOutcome::hypothesis_unmet;
            out.trace.steps.push_back(step);
            break;
        }

        auto res = find_strongly_rainbow_augmenting(sys);
        if (res.outcome == SearchOutcome::witness_found) {
            step.outcome = SolverStepOutcome::augmented;
            out.trace.steps.push_back(step);
            const AlternatingPath& p = *res.path;
            for (int k = 0; k < p.edge_count(); ++k)
                if (p.in_m[k]) sel.unassign(owner.at(p.edge(k)));
            int pos = 0;
            for (int k = 0; k < p.edge_count(); ++k)
                if (!p.in_m[k])
                    sel.assign(h_src.at(res.h_labels.at(pos++)), p.edge(k));
            continue;
        }
        if (res.outcome == SearchOutcome::certified_none) {
            // the exhaustive search completed with a pool larger than 2|M|:
            // archive the system so the event can be replayed
            step.outcome = SolverStepOutcome::oracle_none;
            out.trace.steps.push_back(step);
            out.trace.counterexample_candidate = true;
            nlohmann::json j = alternating_system_to_json(sys);
            j["h_src"] = h_src;
            out.trace.candidate_system_json = j.dump(2);
            log_info("solver: no strongly rainbow augmenting path although ||H|| = " +
                     std::to_string(step.h_norm) + " > 2|M| = " +
                     std::to_string(2 * sys.m.size()));
            break;
        }
        step.outcome = SolverStepOutcome::oracle_budget;
        out.trace.steps.push_back(step);
        break;
    }
    return out;
}

}  // namespace rainbow
