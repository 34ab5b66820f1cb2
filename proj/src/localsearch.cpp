#include "rainbow/localsearch.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rainbow/rng.hpp"

namespace rainbow {

namespace {

// floor of num/den for den > 0 (C++ integer division truncates toward zero)
long long floor_div(long long num, long long den) {
    long long qq = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --qq;
    return qq;
}

}  // namespace

BoundSpec threshold(int n, int r, InstanceClass cls) {
    if (n < 1) throw PreconditionError("threshold: n must be >= 1");
    if (r < 2) throw PreconditionError("threshold: r must be >= 2");
    long long num = 0, den = 1;
    switch (cls) {
        case InstanceClass::general:
            // (n - 1/2 - 3/(4r-6)) / (r - 1/2), cleared of denominators
            num = static_cast<long long>(4 * r - 6) * (2LL * n - 1) - 6;
            den = static_cast<long long>(4 * r - 6) * (2 * r - 1);
            break;
        case InstanceClass::c3c5_free:
        case InstanceClass::bipartite:
            if (r != 2)
                throw PreconditionError("threshold: class " + to_string(cls) +
                                        " requires r=2");
            num = 3LL * n - 9;
            den = 4;
            break;
        case InstanceClass::pairwise_disjoint:
            if (r != 2)
                throw PreconditionError("threshold: class pairwise_disjoint requires r=2");
            num = 3LL * n - 18;
            den = 4;
            break;
    }
    BoundSpec spec;
    spec.n = n;
    spec.r = r;
    spec.cls = cls;
    spec.bound = static_cast<double>(num) / static_cast<double>(den);
    // smallest integer strictly greater than num/den
    spec.threshold = static_cast<int>(floor_div(num, den)) + 1;
    return spec;
}

RainbowSelection greedy_rainbow(const MatchingFamily& family, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x677265656479ULL));
    RainbowSelection sel(family.size());
    std::vector<const Edge*> chosen;
    for (int i = 0; i < family.size(); ++i) {
        const auto& edges = family.matchings[i].edges;
        std::vector<int> avail;
        for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
            bool free = true;
            for (const Edge* c : chosen)
                if (edges[k].intersects(*c)) {
                    free = false;
                    break;
                }
            if (free) avail.push_back(k);
        }
        if (avail.empty()) continue;
        int pick = avail[rng.uniform_int(0, static_cast<int>(avail.size()) - 1)];
        sel.assign(i, edges[pick]);
        chosen.push_back(&sel.edge(i));
    }
    return sel;
}

int WastefulReport::sum_t() const {
    int s = 0;
    for (const auto& [e, gs] : t) s += static_cast<int>(gs.size());
    return s;
}

int WastefulReport::max_t() const {
    int m = 0;
    for (const auto& [e, gs] : t) m = std::max(m, static_cast<int>(gs.size()));
    return m;
}

int WastefulReport::sum_hw() const {
    int s = 0;
    for (const auto& [e, gs] : hw) s += static_cast<int>(gs.size());
    return s;
}

WastefulReport analyze_wastefulness(const MatchingFamily& family,
                                    const RainbowSelection& sel) {
    const auto picks = sel.picks();
    const int q = static_cast<int>(picks.size());
    WastefulReport rep;
    for (int g : sel.unrepresented()) {
        // bucket F_g's edges by the set of picks they meet
        std::vector<std::vector<const Edge*>> privates(q);
        std::map<std::pair<int, int>, const Edge*> bridge;  // first witness wins
        for (const Edge& x : family.matchings[g].edges) {
            int h0 = -1, h1 = -1, nhits = 0;
            for (int p = 0; p < q; ++p) {
                if (!x.intersects(picks[p].second)) continue;
                if (nhits == 0)
                    h0 = p;
                else if (nhits == 1)
                    h1 = p;
                ++nhits;
                if (nhits > 2) break;
            }
            if (nhits == 1) privates[h0].push_back(&x);
            else if (nhits == 2 && family.r == 2) bridge.try_emplace({h0, h1}, &x);
        }
        for (int p = 0; p < q; ++p)
            if (static_cast<int>(privates[p].size()) == family.r)
                rep.t[picks[p].first].push_back(g);
        if (family.r == 2) {
            for (const auto& [pp, gef] : bridge) {
                const auto [p1, p2] = pp;
                if (privates[p1].empty() || privates[p2].empty()) continue;
                int i1 = picks[p1].first, i2 = picks[p2].first;
                rep.hw_pairs[{i1, i2}].emplace(
                    g, HalfWastefulWitness{*privates[p1].front(), *privates[p2].front(),
                                           *gef});
            }
        }
    }
    for (const auto& [pair, byg] : rep.hw_pairs) {
        for (const auto& [g, w] : byg) {
            (void)w;
            rep.hw[pair.first].push_back(g);
            rep.hw[pair.second].push_back(g);
            rep.b_adj[g].push_back(pair.first);
            rep.b_adj[g].push_back(pair.second);
        }
    }
    auto dedupe = [](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    for (auto& [k, v] : rep.hw) {
        (void)k;
        dedupe(v);
    }
    for (auto& [k, v] : rep.b_adj) {
        (void)k;
        dedupe(v);
    }
    return rep;
}

namespace {

struct Candidate {
    int g;           // unrepresented matching index
    const Edge* e;
    std::vector<int> hits;  // sorted pick positions this edge meets
};

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t j = 0;
    for (int x : a) {
        while (j < b.size() && b[j] < x) ++j;
        if (j == b.size() || b[j] != x) return false;
        ++j;
    }
    return true;
}

}  // namespace

void for_each_move(const MatchingFamily& family, const RainbowSelection& sel,
                   int max_j, const std::function<bool(const SwapMove&)>& visit) {
    if (max_j < 1 || max_j > 3)
        throw PreconditionError("for_each_move: max_j must be in [1,3], got " +
                                std::to_string(max_j));
    const auto picks = sel.picks();
    const int q = static_cast<int>(picks.size());

    std::vector<Candidate> cands;  // ordered by (g, edge rank): the added-lex order
    for (int g : sel.unrepresented()) {
        for (const Edge& x : family.matchings[g].edges) {
            Candidate c{g, &x, {}};
            for (int p = 0; p < q; ++p)
                if (x.intersects(picks[p].second)) c.hits.push_back(p);
            cands.push_back(std::move(c));
        }
    }

    std::vector<int> filtered;  // candidate indices valid for the current removal set
    std::vector<int> chosen;

    // pick `need` more candidates from filtered[from..], distinct matchings,
    // pairwise disjoint; returns false if the visitor stopped the walk
    auto build_and_visit = [&](const std::vector<int>& removal_positions) -> bool {
        SwapMove mv;
        mv.removed.reserve(removal_positions.size());
        for (int p : removal_positions) mv.removed.push_back(picks[p].first);
        mv.added.reserve(chosen.size());
        for (int ci : chosen) mv.added.emplace_back(cands[ci].g, *cands[ci].e);
        return visit(mv);
    };

    std::function<bool(const std::vector<int>&, std::size_t, int)> extend =
        [&](const std::vector<int>& removal_positions, std::size_t from,
            int need) -> bool {
        if (need == 0) return build_and_visit(removal_positions);
        for (std::size_t f = from;
             f + static_cast<std::size_t>(need) <= filtered.size(); ++f) {
            const Candidate& cd = cands[filtered[f]];
            // candidate g's are non-decreasing along `filtered`, so comparing
            // against the last chosen one is enough for distinctness
            if (!chosen.empty() && cands[chosen.back()].g == cd.g) continue;
            bool disjoint = true;
            for (int ci : chosen)
                if (cd.e->intersects(*cands[ci].e)) {
                    disjoint = false;
                    break;
                }
            if (!disjoint) continue;
            chosen.push_back(filtered[f]);
            bool keep = extend(removal_positions, f + 1, need - 1);
            chosen.pop_back();
            if (!keep) return false;
        }
        return true;
    };

    std::vector<int> positions;
    for (int j = 0; j <= max_j; ++j) {
        if (j > q) break;
        // walk all j-subsets of pick positions in lexicographic order
        positions.resize(j);
        std::iota(positions.begin(), positions.end(), 0);
        while (true) {
            filtered.clear();
            for (int ci = 0; ci < static_cast<int>(cands.size()); ++ci)
                if (subset_of(cands[ci].hits, positions)) filtered.push_back(ci);
            if (static_cast<int>(filtered.size()) >= j + 1)
                if (!extend(positions, 0, j + 1)) return;
            // next combination
            int k = j - 1;
            while (k >= 0 && positions[k] == q - j + k) --k;
            if (k < 0) break;
            ++positions[k];
            for (int t2 = k + 1; t2 < j; ++t2) positions[t2] = positions[t2 - 1] + 1;
        }
    }
}

std::vector<SwapMove> enumerate_moves(const MatchingFamily& family,
                                      const RainbowSelection& sel, int max_j) {
    std::vector<SwapMove> out;
    for_each_move(family, sel, max_j, [&](const SwapMove& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::optional<SwapMove> first_move(const MatchingFamily& family,
                                   const RainbowSelection& sel, int max_j) {
    std::optional<SwapMove> out;
    for_each_move(family, sel, max_j, [&](const SwapMove& m) {
        out = m;
        return false;
    });
    return out;
}

void apply_move(const MatchingFamily& family, RainbowSelection& sel,
                const SwapMove& move) {
    if (move.added.size() != move.removed.size() + 1)
        throw PreconditionError("apply_move: need |added| == |removed| + 1");
    for (int i : move.removed)
        if (!sel.has(i))
            throw PreconditionError("apply_move: removed index " + std::to_string(i) +
                                    " is not picked");
    for (const auto& [i, e] : move.added) {
        if (sel.has(i))
            throw PreconditionError("apply_move: added index " + std::to_string(i) +
                                    " is already represented");
        if (!family.matchings.at(i).contains_edge(e))
            throw PreconditionError("apply_move: " + e.str() + " is not an edge of F" +
                                    std::to_string(i));
    }
    for (std::size_t a = 0; a < move.added.size(); ++a) {
        if (a + 1 < move.added.size() &&
            move.added[a].first >= move.added[a + 1].first)
            throw PreconditionError("apply_move: added indices must be sorted, distinct");
        for (std::size_t b = a + 1; b < move.added.size(); ++b)
            if (move.added[a].second.intersects(move.added[b].second))
                throw PreconditionError("apply_move: added edges intersect");
    }
    auto is_removed = [&](int i) {
        return std::binary_search(move.removed.begin(), move.removed.end(), i);
    };
    for (const auto& [i, e] : sel.picks())
        if (!is_removed(i))
            for (const auto& [j, x] : move.added)
                if (x.intersects(e))
                    throw PreconditionError("apply_move: added edge " + x.str() +
                                            " hits kept pick of F" + std::to_string(i) +
                                            " (added for F" + std::to_string(j) + ")");
    for (int i : move.removed) sel.unassign(i);
    for (const auto& [i, e] : move.added) sel.assign(i, e);
}

LocalSearchResult local_search(const MatchingFamily& family, int max_j,
                               std::uint64_t seed) {
    LocalSearchResult res;
    res.selection = greedy_rainbow(family, seed);
    res.q_greedy = res.selection.size();
    const int cap = family.size() + 1;  // each move grows the selection by one
    while (auto mv = first_move(family, res.selection, max_j)) {
        apply_move(family, res.selection, *mv);
        ++res.moves_applied;
        if (res.moves_applied > cap)
            throw Error("local_search: move count exceeded family size; "
                        "selection must grow every step");
    }
    return res;
}

}  // namespace rainbow
