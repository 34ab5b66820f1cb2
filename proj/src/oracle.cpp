#include "rainbow/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rainbow/gen.hpp"
#include "rainbow/json_io.hpp"
#include "rainbow/log.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

std::string to_string(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::witness_found: return "witness_found";
        case SearchOutcome::certified_none: return "certified_none";
        case SearchOutcome::budget_exceeded: return "budget_exceeded";
    }
    return "?";
}

namespace {

// Shared node/time accounting. tick() returns false once the budget is gone;
// the time check runs every 4096 nodes to keep the clock off the hot path.
struct BudgetClock {
    explicit BudgetClock(const SearchBudget& b)
        : node_limit(b.node_limit),
          deadline(std::chrono::steady_clock::now() +
                   std::chrono::milliseconds(b.time_limit_ms)) {}

    long long node_limit;
    std::chrono::steady_clock::time_point deadline;
    long long nodes = 0;
    bool exhausted = false;

    bool tick() {
        ++nodes;
        if (nodes > node_limit ||
            ((nodes & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline)) {
            exhausted = true;
            return false;
        }
        return true;
    }
};

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xF);
    return os.str();
}

}  // namespace

MaxRainbowResult max_rainbow_exact(const MatchingFamily& family, SearchBudget budget) {
    const int total = family.size();
    std::vector<int> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&family](int a, int b) {
        return family.matchings[a].size() < family.matchings[b].size();
    });

    BudgetClock clock(budget);
    std::vector<std::pair<int, const Edge*>> chosen;
    RainbowSelection best(total);
    int best_size = -1;

    auto record = [&]() {
        if (static_cast<int>(chosen.size()) <= best_size) return;
        best_size = static_cast<int>(chosen.size());
        RainbowSelection b(total);
        for (const auto& [i, pe] : chosen) b.assign(i, *pe);
        best = std::move(b);
    };

    std::function<void(int)> dfs = [&](int k) {
        if (!clock.tick()) return;
        record();
        if (k == total) return;
        if (static_cast<int>(chosen.size()) + (total - k) <= best_size) return;
        int idx = order[k];
        for (const Edge& e : family.matchings[idx].edges) {
            bool disjoint = true;
            for (const auto& [i, pe] : chosen)
                if (pe->intersects(e)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            chosen.emplace_back(idx, &e);
            dfs(k + 1);
            chosen.pop_back();
            if (clock.exhausted) return;
        }
        dfs(k + 1);
    };
    dfs(0);

    MaxRainbowResult out;
    out.completed = !clock.exhausted;
    out.best_size = std::max(best_size, 0);
    out.witness = std::move(best);
    out.nodes = clock.nodes;
    return out;
}

MonotonePathSearch exists_monotone_path_exact(const PathInstance& inst,
                                              SearchBudget budget) {
    auto viol = validate_path_instance(inst);
    if (!viol.empty()) throw ValidationError("path instance: " + viol.front());

    const int pm = inst.path_count();
    std::vector<std::map<VertexId, VertexId>> next(pm);
    for (int l = 0; l < pm; ++l) {
        const auto& vs = inst.paths[l].vertices;
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) next[l][vs[i]] = vs[i + 1];
    }
    const std::set<VertexId> sset(inst.s.begin(), inst.s.end());
    const std::set<VertexId> tset(inst.t.begin(), inst.t.end());
    const bool st = inst.is_st();

    BudgetClock clock(budget);
    std::vector<VertexId> verts;
    std::vector<int> labels;
    std::set<VertexId> visited;

    std::function<bool(VertexId, int)> dfs = [&](VertexId u, int last) -> bool {
        if (!clock.tick()) return false;
        for (int l = last + 1; l < pm; ++l) {
            auto it = next[l].find(u);
            if (it == next[l].end()) continue;
            VertexId v = it->second;
            if (visited.count(v)) continue;
            if (st) {
                if (sset.count(v)) continue;
                if (tset.count(v)) {
                    verts.push_back(v);
                    labels.push_back(l);
                    return true;
                }
            } else if (sset.count(v)) {
                verts.push_back(v);
                labels.push_back(l);
                return true;
            }
            verts.push_back(v);
            labels.push_back(l);
            visited.insert(v);
            if (dfs(v, l)) return true;
            verts.pop_back();
            labels.pop_back();
            visited.erase(v);
            if (clock.exhausted) return false;
        }
        return false;
    };

    MonotonePathSearch out;
    std::vector<VertexId> starts = inst.s;
    std::sort(starts.begin(), starts.end());
    for (VertexId s0 : starts) {
        verts.assign(1, s0);
        labels.clear();
        visited.clear();
        visited.insert(s0);
        if (dfs(s0, -1)) {
            out.outcome = SearchOutcome::witness_found;
            out.path = LabeledPath{verts, labels};
            out.nodes = clock.nodes;
            return out;
        }
        if (clock.exhausted) break;
    }
    out.outcome =
        clock.exhausted ? SearchOutcome::budget_exceeded : SearchOutcome::certified_none;
    out.nodes = clock.nodes;
    return out;
}

StronglyRainbowAugSearch find_strongly_rainbow_augmenting(const AlternatingSystem& sys,
                                                          SearchBudget budget) {
    auto viol = validate_alternating_system(sys);
    if (!viol.empty()) throw ValidationError("alternating system: " + viol.front());

    // usable non-M edges with their donating set, deduped
    std::vector<std::pair<Edge, int>> cands;
    for (std::size_t i = 0; i < sys.h.size(); ++i)
        for (const AlternatingPath& p : sys.h[i])
            for (int k = 0; k < p.edge_count(); ++k)
                if (!p.in_m[k]) cands.emplace_back(p.edge(k), static_cast<int>(i));
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    std::map<VertexId, std::vector<int>> at;
    for (std::size_t c = 0; c < cands.size(); ++c)
        for (VertexId v : cands[c].first.vertices())
            at[v].push_back(static_cast<int>(c));

    std::map<VertexId, VertexId> partner;
    for (const Edge& e : sys.m.edges) {
        partner[e.vertices()[0]] = e.vertices()[1];
        partner[e.vertices()[1]] = e.vertices()[0];
    }

    std::set<VertexId> starts;
    for (const auto& [e, i] : cands)
        for (VertexId v : e.vertices())
            if (!partner.count(v)) starts.insert(v);

    BudgetClock clock(budget);
    std::vector<VertexId> verts;
    std::vector<bool> inm;
    std::vector<int> hlab;
    std::set<VertexId> visited;
    std::set<int> used_sets;

    std::function<bool(VertexId)> dfs = [&](VertexId u) -> bool {
        if (!clock.tick()) return false;
        auto it = at.find(u);
        if (it == at.end()) return false;
        for (int ci : it->second) {
            const auto& [e, si] = cands[ci];
            if (used_sets.count(si)) continue;
            VertexId v = e.vertices()[0] == u ? e.vertices()[1] : e.vertices()[0];
            if (visited.count(v)) continue;
            auto pit = partner.find(v);
            if (pit == partner.end()) {
                verts.push_back(v);
                inm.push_back(false);
                hlab.push_back(si);
                return true;
            }
            VertexId w = pit->second;
            if (visited.count(w)) continue;
            verts.push_back(v);
            inm.push_back(false);
            hlab.push_back(si);
            verts.push_back(w);
            inm.push_back(true);
            visited.insert(v);
            visited.insert(w);
            used_sets.insert(si);
            if (dfs(w)) return true;
            visited.erase(v);
            visited.erase(w);
            used_sets.erase(si);
            verts.pop_back();
            verts.pop_back();
            inm.pop_back();
            inm.pop_back();
            hlab.pop_back();
            if (clock.exhausted) return false;
        }
        return false;
    };

    StronglyRainbowAugSearch out;
    for (VertexId s0 : starts) {
        verts.assign(1, s0);
        inm.clear();
        hlab.clear();
        visited.clear();
        visited.insert(s0);
        used_sets.clear();
        if (dfs(s0)) {
            out.outcome = SearchOutcome::witness_found;
            AlternatingPath p;
            p.vertices = verts;
            p.in_m = inm;
            out.path = std::move(p);
            out.h_labels = hlab;
            out.nodes = clock.nodes;
            return out;
        }
        if (clock.exhausted) break;
    }
    out.outcome =
        clock.exhausted ? SearchOutcome::budget_exceeded : SearchOutcome::certified_none;
    out.nodes = clock.nodes;
    return out;
}

ConjectureTarget conjecture_target_from_string(const std::string& s) {
    if (s == "conj_ab") return ConjectureTarget::conj_ab;
    if (s == "conj_paths") return ConjectureTarget::conj_paths;
    throw ValidationError("unknown conjecture target: " + s);
}

std::string to_string(ConjectureTarget t) {
    return t == ConjectureTarget::conj_ab ? "conj_ab" : "conj_paths";
}

namespace {

// one hunt trial; returns an empty optional when the conjecture held
struct TrialResult {
    std::optional<HuntViolation> violation;
    bool timed_out = false;
    std::string error;
};

TrialResult run_trial(ConjectureTarget target, const HuntConfig& cfg, int trial,
                      std::uint64_t base_seed) {
    TrialResult tr;
    const std::uint64_t tseed = mix_seed(base_seed, static_cast<std::uint64_t>(trial));
    try {
        if (target == ConjectureTarget::conj_ab) {
            Rng rng(mix_seed(tseed, 0x6e5fULL));
            int n = rng.uniform_int(cfg.n_min, cfg.n_max);
            MatchingFamily fam =
                gen_random(n, cfg.r, InstanceClass::general, mix_seed(tseed, 0x66616dULL));
            auto res = max_rainbow_exact(fam, cfg.budget);
            if (res.best_size >= n - 1) return tr;
            if (!res.completed) {
                tr.timed_out = true;
                return tr;
            }
            HuntViolation v;
            v.trial = trial;
            v.seed = tseed;
            v.instance_json = family_to_json(fam).dump(2);
            v.detail = "max rainbow " + std::to_string(res.best_size) + " < n-1 = " +
                       std::to_string(n - 1);
            v.transcript_hash = fnv1a_hex(v.instance_json + "|" + to_string(
                                              SearchOutcome::certified_none) +
                                          "|" + std::to_string(res.nodes) + "|" +
                                          std::to_string(res.best_size));
            tr.violation = std::move(v);
            return tr;
        }
        AlternatingSystem sys =
            gen_random_alternating_system(cfg.m_max, mix_seed(tseed, 0x737973ULL));
        auto res = find_strongly_rainbow_augmenting(sys, cfg.budget);
        if (res.outcome == SearchOutcome::witness_found) {
            std::string bad = augmenting_violation(sys.m, *res.path);
            std::set<int> labels(res.h_labels.begin(), res.h_labels.end());
            if (!bad.empty() || labels.size() != res.h_labels.size())
                throw Error("internal: augmenting-search witness failed validation: " +
                            (bad.empty() ? std::string("duplicate set label") : bad));
            return tr;
        }
        if (res.outcome == SearchOutcome::budget_exceeded) {
            tr.timed_out = true;
            return tr;
        }
        HuntViolation v;
        v.trial = trial;
        v.seed = tseed;
        v.instance_json = alternating_system_to_json(sys).dump(2);
        v.detail = "||H|| = " + std::to_string(h_total(sys)) + " > 2|M| = " +
                   std::to_string(2 * sys.m.size()) +
                   " but no strongly rainbow augmenting path exists";
        v.transcript_hash =
            fnv1a_hex(v.instance_json + "|" + to_string(res.outcome) + "|" +
                      std::to_string(res.nodes));
        tr.violation = std::move(v);
        return tr;
    } catch (const std::exception& e) {
        tr.error = e.what();
        return tr;
    }
}

}  // namespace

HuntReport search_counterexamples(ConjectureTarget target, const HuntConfig& cfg,
                                  int trials, std::uint64_t seed, int workers) {
    HuntReport rep;
    rep.target = target;
    rep.trials = trials;
    if (trials <= 0) return rep;

    std::vector<TrialResult> results(trials);
#ifdef _OPENMP
    int nthreads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#else
    (void)workers;
#endif
    for (int t = 0; t < trials; ++t) results[t] = run_trial(target, cfg, t, seed);

    for (int t = 0; t < trials; ++t) {
        if (!results[t].error.empty())
            throw Error("hunt trial " + std::to_string(t) + ": " + results[t].error);
        if (results[t].timed_out) ++rep.budget_exceeded;
        if (results[t].violation) rep.violations.push_back(*results[t].violation);
    }
    if (!rep.violations.empty())
        log_info("hunt: " + std::to_string(rep.violations.size()) + " violation(s) in " +
                 std::to_string(trials) + " trials");
    return rep;
}

}  // namespace rainbow
