#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/core.hpp"
#include "rainbow/gen.hpp"
#include "rainbow/localsearch.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/rng.hpp"

using namespace rainbow;

namespace {

MatchingFamily make_family(int r, InstanceClass cls,
                           std::vector<std::vector<Edge>> matchings) {
    MatchingFamily f;
    f.r = r;
    f.cls = cls;
    for (auto& edges : matchings) f.matchings.emplace_back(std::move(edges));
    return f;
}

// ---- reference implementations the library code is checked against ----

struct CanonMove {
    std::vector<int> removed;
    std::vector<std::pair<int, Edge>> added;
    auto operator<=>(const CanonMove&) const = default;
};

CanonMove canon(const SwapMove& m) {
    CanonMove c{m.removed, m.added};
    std::sort(c.removed.begin(), c.removed.end());
    std::sort(c.added.begin(), c.added.end());
    return c;
}

// full enumeration over every removal subset and every candidate combination,
// with validity checked directly from the definition
std::vector<CanonMove> naive_moves(const MatchingFamily& f,
                                   const RainbowSelection& sel, int max_j) {
    const auto rep = sel.represented();
    std::vector<std::pair<int, Edge>> cands;
    for (int g : sel.unrepresented())
        for (const Edge& e : f.matchings[g].edges) cands.emplace_back(g, e);

    std::vector<CanonMove> out;
    const int rn = static_cast<int>(rep.size());
    for (int mask = 0; mask < (1 << rn); ++mask) {
        std::vector<int> removed;
        std::vector<Edge> kept;
        for (int b = 0; b < rn; ++b) {
            if (mask & (1 << b))
                removed.push_back(rep[b]);
            else
                kept.push_back(sel.edge(rep[b]));
        }
        const int j = static_cast<int>(removed.size());
        if (j > max_j) continue;

        std::vector<int> pickidx;
        auto choose = [&](auto&& self, std::size_t from, int need) -> void {
            if (need == 0) {
                CanonMove c;
                c.removed = removed;
                for (int ci : pickidx) c.added.push_back(cands[ci]);
                out.push_back(std::move(c));
                return;
            }
            for (std::size_t k = from; k < cands.size(); ++k) {
                const auto& [g, e] = cands[k];
                bool ok = true;
                for (const Edge& ke : kept)
                    if (e.intersects(ke)) ok = false;
                for (int ci : pickidx) {
                    if (cands[ci].first == g) ok = false;
                    if (cands[ci].second.intersects(e)) ok = false;
                }
                if (!ok) continue;
                pickidx.push_back(static_cast<int>(k));
                self(self, k + 1, need - 1);
                pickidx.pop_back();
            }
        };
        choose(choose, 0, j + 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct NaiveWaste {
    std::map<int, std::set<int>> t;
    std::map<int, std::set<int>> hw;
    std::map<std::pair<int, int>, std::set<int>> hw_pairs;
    std::map<int, std::set<int>> b_adj;
};

// per-definition scan: an unrepresented G lands in t[e] when exactly r of its
// edges meet e and no other pick; {e,f} is half-wasteful for G when G holds
// an edge private to e, one private to f, and one meeting both
NaiveWaste naive_wasteful(const MatchingFamily& f, const RainbowSelection& sel) {
    NaiveWaste out;
    const auto picks = sel.picks();
    auto hits_only = [&](const Edge& x, std::size_t p) {
        if (!x.intersects(picks[p].second)) return false;
        for (std::size_t o = 0; o < picks.size(); ++o)
            if (o != p && x.intersects(picks[o].second)) return false;
        return true;
    };
    for (int g : sel.unrepresented()) {
        const auto& edges = f.matchings[g].edges;
        for (std::size_t p = 0; p < picks.size(); ++p) {
            int privates = 0;
            for (const Edge& x : edges)
                if (hits_only(x, p)) ++privates;
            if (privates == f.r) out.t[picks[p].first].insert(g);
        }
        if (f.r != 2) continue;
        for (std::size_t a = 0; a < picks.size(); ++a)
            for (std::size_t b = a + 1; b < picks.size(); ++b) {
                bool ge = false, gf = false, gef = false;
                for (const Edge& x : edges) {
                    if (hits_only(x, a)) ge = true;
                    if (hits_only(x, b)) gf = true;
                    if (x.intersects(picks[a].second) && x.intersects(picks[b].second))
                        gef = true;
                }
                if (ge && gf && gef) {
                    int ia = picks[a].first, ib = picks[b].first;
                    out.hw_pairs[{ia, ib}].insert(g);
                    out.hw[ia].insert(g);
                    out.hw[ib].insert(g);
                    out.b_adj[g].insert(ia);
                    out.b_adj[g].insert(ib);
                }
            }
    }
    return out;
}

std::map<int, std::set<int>> as_sets(const std::map<int, std::vector<int>>& m) {
    std::map<int, std::set<int>> out;
    for (const auto& [k, v] : m)
        if (!v.empty()) out[k] = std::set<int>(v.begin(), v.end());
    return out;
}

void check_waste_matches(const MatchingFamily& f, const RainbowSelection& sel) {
    const WastefulReport rep = analyze_wastefulness(f, sel);
    const NaiveWaste want = naive_wasteful(f, sel);
    CHECK(as_sets(rep.t) == want.t);
    CHECK(as_sets(rep.hw) == want.hw);
    CHECK(as_sets(rep.b_adj) == want.b_adj);
    std::map<std::pair<int, int>, std::set<int>> pair_keys;
    for (const auto& [pk, byg] : rep.hw_pairs) {
        for (const auto& [g, w] : byg) {
            pair_keys[pk].insert(g);
            // the reported witness triple must satisfy the definition
            auto pick_of = [&](int idx) {
                REQUIRE(sel.has(idx));
                return sel.edge(idx);
            };
            Edge e = pick_of(pk.first), fe = pick_of(pk.second);
            const Matching& gm = f.matchings[g];
            CHECK(gm.contains_edge(w.g_e));
            CHECK(gm.contains_edge(w.g_f));
            CHECK(gm.contains_edge(w.g_ef));
            CHECK(w.g_e.intersects(e));
            CHECK_FALSE(w.g_e.intersects(fe));
            CHECK(w.g_f.intersects(fe));
            CHECK_FALSE(w.g_f.intersects(e));
            CHECK(w.g_ef.intersects(e));
            CHECK(w.g_ef.intersects(fe));
            for (const auto& [i, pe] : sel.picks())
                if (i != pk.first && i != pk.second) {
                    CHECK_FALSE(w.g_e.intersects(pe));
                    CHECK_FALSE(w.g_f.intersects(pe));
                }
        }
    }
    CHECK(pair_keys == want.hw_pairs);
}

long long sq(long long x) { return x * x; }

}  // namespace

TEST_CASE("threshold frozen values") {
    auto b1 = threshold(6, 2, InstanceClass::general);
    CHECK(b1.bound == doctest::Approx(8.0 / 3.0));
    CHECK(b1.threshold == 3);

    auto b2 = threshold(10, 3, InstanceClass::general);
    CHECK(b2.bound == doctest::Approx(3.6));
    CHECK(b2.threshold == 4);

    auto b3 = threshold(20, 2, InstanceClass::c3c5_free);
    CHECK(b3.bound == doctest::Approx(12.75));
    CHECK(b3.threshold == 13);
    auto b3b = threshold(20, 2, InstanceClass::bipartite);
    CHECK(b3b.bound == doctest::Approx(12.75));
    CHECK(b3b.threshold == 13);

    auto b4 = threshold(20, 2, InstanceClass::pairwise_disjoint);
    CHECK(b4.bound == doctest::Approx(10.5));
    CHECK(b4.threshold == 11);
}

TEST_CASE("threshold preconditions") {
    CHECK_THROWS_AS(threshold(0, 2, InstanceClass::general), PreconditionError);
    CHECK_THROWS_AS(threshold(5, 1, InstanceClass::general), PreconditionError);
    CHECK_THROWS_AS(threshold(5, 3, InstanceClass::c3c5_free), PreconditionError);
    CHECK_THROWS_AS(threshold(5, 3, InstanceClass::bipartite), PreconditionError);
    CHECK_THROWS_AS(threshold(5, 3, InstanceClass::pairwise_disjoint),
                    PreconditionError);
}

TEST_CASE("threshold is the smallest integer above the bound, exactly") {
    for (int r = 2; r <= 5; ++r)
        for (int n = 1; n <= 120; ++n) {
            auto spec = threshold(n, r, InstanceClass::general);
            long long num = static_cast<long long>(4 * r - 6) * (2LL * n - 1) - 6;
            long long den = static_cast<long long>(4 * r - 6) * (2 * r - 1);
            CHECK(spec.bound == doctest::Approx(static_cast<double>(num) /
                                                static_cast<double>(den)));
            // t-1 <= bound < t, in integer arithmetic
            CHECK(static_cast<long long>(spec.threshold - 1) * den <= num);
            CHECK(static_cast<long long>(spec.threshold) * den > num);
            if (r == 2)  // the classical form of the same bound
                CHECK(spec.bound == doctest::Approx(2.0 * n / 3.0 - 4.0 / 3.0));
        }
    for (int n = 1; n <= 120; ++n) {
        for (auto cls : {InstanceClass::c3c5_free, InstanceClass::bipartite}) {
            auto spec = threshold(n, 2, cls);
            long long num = 3LL * n - 9;
            CHECK(static_cast<long long>(spec.threshold - 1) * 4 <= num);
            CHECK(static_cast<long long>(spec.threshold) * 4 > num);
            CHECK(spec.bound == doctest::Approx((3.0 * n - 9.0) / 4.0));
        }
        auto spec = threshold(n, 2, InstanceClass::pairwise_disjoint);
        long long num = 3LL * n - 18;
        CHECK(static_cast<long long>(spec.threshold - 1) * 4 <= num);
        CHECK(static_cast<long long>(spec.threshold) * 4 > num);
    }
}

TEST_CASE("threshold sits below the fixpoint-inequality root") {
    // the closed-form bound is what the code ships; here it is checked once
    // against direct evaluation of the quadratic it was derived from
    for (int r = 2; r <= 5; ++r)
        for (int n = 1; n <= 120; ++n) {
            auto spec = threshold(n, r, InstanceClass::general);
            double a = static_cast<double>(n) + 2.0 * r * n + r;
            double disc = a * a - 8.0 * (2 * r - 1) * n * n;
            REQUIRE(disc >= 0.0);
            double q1 = (a - std::sqrt(disc)) / (2.0 * (2 * r - 1));
            CHECK(spec.bound < q1 + 1e-9);
            // every integer below the threshold violates the fixpoint
            // inequality (2n - q(2r-1))(n - q) <= rq
            for (long long q = 0; q < spec.threshold; ++q)
                CHECK((2LL * n - q * (2 * r - 1)) * (n - q) > r * q);
        }
    for (int n = 1; n <= 120; ++n) {
        auto c = threshold(n, 2, InstanceClass::c3c5_free);
        double q1 = ((7.0 * n + 3) - std::sqrt(sq(7 * n + 3) - 48.0 * n * n)) / 8.0;
        CHECK(c.bound < q1 + 1e-9);
        for (long long q = 0; q < c.threshold; ++q)
            CHECK((3LL * n - 4 * q) * (n - q) > 3 * q);

        auto d = threshold(n, 2, InstanceClass::pairwise_disjoint);
        double q1d = ((7.0 * n + 6) - std::sqrt(sq(7 * n + 6) - 48.0 * n * n)) / 8.0;
        CHECK(d.bound < q1d + 1e-9);
        for (long long q = 0; q < d.threshold; ++q)
            CHECK((3LL * n - 4 * q) * (n - q) > 6 * q);
    }
}

TEST_CASE("greedy never skips a matching it could represent") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto f = gen_random(6, 2, InstanceClass::general, seed);
        auto sel = greedy_rainbow(f, seed);
        CHECK(selection_violations(f, sel).empty());
        for (int i : sel.unrepresented()) {
            // every edge of a skipped matching collides with an earlier pick
            for (const Edge& e : f.matchings[i].edges) {
                bool blocked = false;
                for (const auto& [k, pe] : sel.picks())
                    if (k < i && e.intersects(pe)) blocked = true;
                CHECK(blocked);
            }
        }
    }
}

TEST_CASE("greedy covers at least n/r matchings and is deterministic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (int r : {2, 3}) {
            auto f = gen_random(7, r, InstanceClass::general, seed);
            auto sel = greedy_rainbow(f, seed * 3 + 1);
            CHECK(sel.size() * r >= f.size());
            auto again = greedy_rainbow(f, seed * 3 + 1);
            CHECK(sel.picks() == again.picks());
        }
    }

    // n identical disjoint-edge matchings: nothing ever blocks, all picked
    std::vector<Edge> perfect;
    for (VertexId v = 0; v < 12; v += 2) perfect.push_back(Edge{v, v + 1});
    auto ident = make_family(2, InstanceClass::general,
                             {perfect, perfect, perfect, perfect, perfect, perfect});
    for (std::uint64_t seed : {0ULL, 5ULL, 99ULL})
        CHECK(greedy_rainbow(ident, seed).size() == 6);

    auto single = make_family(2, InstanceClass::general, {{Edge{0, 1}}});
    CHECK(greedy_rainbow(single, 0).size() == 1);
}

TEST_CASE("wastefulness: r private edges put G in T, r-1 do not") {
    SUBCASE("r=2") {
        auto f = make_family(2, InstanceClass::general,
                             {{Edge{0, 1}}, {Edge{0, 2}, Edge{1, 3}}});
        RainbowSelection sel(2);
        sel.assign(0, Edge{0, 1});
        auto rep = analyze_wastefulness(f, sel);
        REQUIRE(rep.t.count(0));
        CHECK(rep.t.at(0) == std::vector<int>{1});
        CHECK(rep.max_t() == 1);
    }
    SUBCASE("r=3") {
        auto f = make_family(
            3, InstanceClass::general,
            {{Edge{0, 1, 2}}, {Edge{0, 3, 4}, Edge{1, 5, 6}, Edge{2, 7, 8}}});
        RainbowSelection sel(2);
        sel.assign(0, Edge{0, 1, 2});
        auto rep = analyze_wastefulness(f, sel);
        REQUIRE(rep.t.count(0));
        CHECK(rep.t.at(0) == std::vector<int>{1});
    }
    SUBCASE("one short of r is wasteful") {
        auto f = make_family(2, InstanceClass::general,
                             {{Edge{0, 1}}, {Edge{0, 2}, Edge{5, 6}}});
        RainbowSelection sel(2);
        sel.assign(0, Edge{0, 1});
        auto rep = analyze_wastefulness(f, sel);
        CHECK(rep.t.empty());
        CHECK(rep.sum_t() == 0);
    }
}

TEST_CASE("wastefulness: half-wasteful pair with witness triple") {
    auto f = make_family(2, InstanceClass::general,
                         {{Edge{0, 1}},
                          {Edge{2, 3}},
                          {Edge{0, 4}, Edge{2, 5}, Edge{1, 3}}});
    RainbowSelection sel(3);
    sel.assign(0, Edge{0, 1});
    sel.assign(1, Edge{2, 3});
    auto rep = analyze_wastefulness(f, sel);

    REQUIRE(rep.hw_pairs.count({0, 1}));
    const auto& byg = rep.hw_pairs.at({0, 1});
    REQUIRE(byg.count(2));
    const auto& w = byg.at(2);
    CHECK(w.g_e == Edge{0, 4});
    CHECK(w.g_f == Edge{2, 5});
    CHECK(w.g_ef == Edge{1, 3});
    CHECK(as_sets(rep.hw) ==
          std::map<int, std::set<int>>{{0, {2}}, {1, {2}}});
    CHECK(as_sets(rep.b_adj) == std::map<int, std::set<int>>{{2, {0, 1}}});
    CHECK(rep.sum_hw() == 2);
}

TEST_CASE("wastefulness: half-wasteful bookkeeping is r=2 only") {
    auto f = make_family(3, InstanceClass::general,
                         {{Edge{0, 1, 2}},
                          {Edge{3, 4, 5}},
                          {Edge{0, 6, 7}, Edge{3, 8, 9}, Edge{1, 4, 10}}});
    RainbowSelection sel(3);
    sel.assign(0, Edge{0, 1, 2});
    sel.assign(1, Edge{3, 4, 5});
    auto rep = analyze_wastefulness(f, sel);
    CHECK(rep.hw.empty());
    CHECK(rep.hw_pairs.empty());
    CHECK(rep.b_adj.empty());
    CHECK(rep.sum_hw() == 0);
}

TEST_CASE("wastefulness report matches the per-definition scan") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        int n = 4 + static_cast<int>(seed % 4);
        auto f = gen_random(n, 2, InstanceClass::general, mix_seed(0xaaa, seed));
        auto sel = greedy_rainbow(f, seed);
        check_waste_matches(f, sel);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto f = gen_random(4, 3, InstanceClass::general, mix_seed(0xbbb, seed));
        auto sel = greedy_rainbow(f, seed);
        check_waste_matches(f, sel);
    }
}

TEST_CASE("move enumeration equals naive full enumeration") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        int n = 3 + static_cast<int>(seed % 3);
        int r = (seed % 2) ? 3 : 2;
        auto f = gen_random(n, r, InstanceClass::general, mix_seed(0xccc, seed));
        auto sel = greedy_rainbow(f, seed);
        for (int max_j = 1; max_j <= 3; ++max_j) {
            auto moves = enumerate_moves(f, sel, max_j);
            std::vector<CanonMove> got;
            for (const auto& m : moves) got.push_back(canon(m));
            auto sorted_got = got;
            std::sort(sorted_got.begin(), sorted_got.end());
            CHECK(sorted_got == naive_moves(f, sel, max_j));
        }
    }
}

TEST_CASE("move enumeration from an empty selection offers plain adds") {
    auto f = gen_random(4, 2, InstanceClass::general, 3);
    RainbowSelection empty(f.size());
    auto moves = enumerate_moves(f, empty, 1);
    std::vector<CanonMove> got;
    for (const auto& m : moves) {
        CHECK(m.removed.empty());  // nothing is picked, nothing can be removed
        CHECK(m.added.size() == 1);
        got.push_back(canon(m));
    }
    std::sort(got.begin(), got.end());
    CHECK(got == naive_moves(f, empty, 1));
}

TEST_CASE("move enumeration on a full selection is empty") {
    std::vector<Edge> perfect;
    for (VertexId v = 0; v < 8; v += 2) perfect.push_back(Edge{v, v + 1});
    auto f = make_family(2, InstanceClass::general,
                         {perfect, perfect, perfect, perfect});
    auto res = local_search(f, 1, 0);
    REQUIRE(res.selection.size() == 4);
    CHECK(enumerate_moves(f, res.selection, 3).empty());
    CHECK_FALSE(first_move(f, res.selection, 3).has_value());
}

TEST_CASE("move enumeration order is deterministic") {
    auto f = gen_random(5, 2, InstanceClass::general, 11);
    auto sel = greedy_rainbow(f, 2);
    auto moves = enumerate_moves(f, sel, 3);
    auto key = [](const SwapMove& m) {
        return std::make_tuple(m.removed.size(), m.removed, m.added);
    };
    for (std::size_t i = 1; i < moves.size(); ++i)
        CHECK(key(moves[i - 1]) < key(moves[i]));
    if (!moves.empty()) {
        auto fm = first_move(f, sel, 3);
        REQUIRE(fm.has_value());
        CHECK(canon(*fm) == canon(moves.front()));
    }
}

TEST_CASE("move enumeration rejects out-of-range depth") {
    auto f = gen_random(3, 2, InstanceClass::general, 0);
    auto sel = greedy_rainbow(f, 0);
    CHECK_THROWS_AS(enumerate_moves(f, sel, 0), PreconditionError);
    CHECK_THROWS_AS(enumerate_moves(f, sel, 4), PreconditionError);
}

TEST_CASE("overloaded pick admits a swap move") {
    // one pick, three unrepresented matchings each holding a full system of
    // private edges through it: a remove-one-add-two move must exist
    auto f = make_family(2, InstanceClass::general,
                         {{Edge{0, 1}},
                          {Edge{0, 2}, Edge{1, 3}},
                          {Edge{0, 3}, Edge{1, 2}},
                          {Edge{0, 4}, Edge{1, 5}}});
    RainbowSelection sel(4);
    sel.assign(0, Edge{0, 1});

    auto rep = analyze_wastefulness(f, sel);
    REQUIRE(rep.t.count(0));
    CHECK(rep.t.at(0) == std::vector<int>{1, 2, 3});

    auto mv = first_move(f, sel, 1);
    REQUIRE(mv.has_value());
    CHECK(mv->removed == std::vector<int>{0});
    CHECK(mv->added.size() == 2);

    auto after = sel;
    apply_move(f, after, *mv);
    CHECK(after.size() == 2);
    CHECK(selection_violations(f, after).empty());

    // at the local-search fixpoint the overload is gone
    auto res = local_search(f, 1, 0);
    auto frep = analyze_wastefulness(f, res.selection);
    CHECK(frep.max_t() <= 2);
}

TEST_CASE("apply_move grows every enumerated move into a valid selection") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        auto f = gen_random(4, 2, InstanceClass::general, mix_seed(0xddd, seed));
        auto sel = greedy_rainbow(f, seed);
        for (const auto& mv : enumerate_moves(f, sel, 2)) {
            RainbowSelection copy = sel;
            apply_move(f, copy, mv);
            CHECK(copy.size() == sel.size() + 1);
            CHECK(selection_violations(f, copy).empty());
        }
    }
}

TEST_CASE("apply_move rejects ill-formed moves") {
    auto f = make_family(2, InstanceClass::general,
                         {{Edge{0, 1}}, {Edge{2, 3}}, {Edge{4, 5}}});
    RainbowSelection sel(3);
    sel.assign(0, Edge{0, 1});

    SwapMove wrong_arity;
    wrong_arity.added = {{1, Edge{2, 3}}, {2, Edge{4, 5}}};
    wrong_arity.removed = {};
    CHECK_THROWS_AS(apply_move(f, sel, wrong_arity), PreconditionError);

    SwapMove not_picked;
    not_picked.removed = {1};
    not_picked.added = {{1, Edge{2, 3}}, {2, Edge{4, 5}}};
    CHECK_THROWS_AS(apply_move(f, sel, not_picked), PreconditionError);

    SwapMove already_there;
    already_there.removed = {};
    already_there.added = {{0, Edge{0, 1}}};
    CHECK_THROWS_AS(apply_move(f, sel, already_there), PreconditionError);

    SwapMove foreign_edge;
    foreign_edge.removed = {};
    foreign_edge.added = {{1, Edge{6, 7}}};
    CHECK_THROWS_AS(apply_move(f, sel, foreign_edge), PreconditionError);

    SwapMove unsorted;
    unsorted.removed = {0};
    unsorted.added = {{2, Edge{4, 5}}, {1, Edge{2, 3}}};
    CHECK_THROWS_AS(apply_move(f, sel, unsorted), PreconditionError);

    SwapMove hits_kept;
    hits_kept.removed = {};
    hits_kept.added = {{1, Edge{2, 3}}};
    apply_move(f, sel, hits_kept);  // fine: {2,3} avoids {0,1}
    CHECK(sel.size() == 2);

    auto f2 = make_family(2, InstanceClass::general, {{Edge{0, 1}}, {Edge{1, 2}}});
    RainbowSelection sel2(2);
    sel2.assign(0, Edge{0, 1});
    SwapMove clash;
    clash.removed = {};
    clash.added = {{1, Edge{1, 2}}};
    CHECK_THROWS_AS(apply_move(f2, sel2, clash), PreconditionError);
}

TEST_CASE("local_search reaches a fixpoint and accounts its moves") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        for (int max_j : {1, 2, 3}) {
            auto f = gen_random(6, 2, InstanceClass::general, mix_seed(0xeee, seed));
            auto res = local_search(f, max_j, seed);
            CHECK(selection_violations(f, res.selection).empty());
            CHECK_FALSE(first_move(f, res.selection, max_j).has_value());
            CHECK(res.selection.size() == res.q_greedy + res.moves_applied);
            CHECK(res.selection.size() >= res.q_greedy);
        }
    }
}

TEST_CASE("local_search fixpoints meet the guaranteed size") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        int n = 6 + static_cast<int>(seed % 5);
        auto f = gen_random(n, 2, InstanceClass::general, mix_seed(0xf00, seed));
        auto res = local_search(f, 1, seed);
        CHECK(res.selection.size() >= threshold(n, 2, InstanceClass::general).threshold);
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto f = gen_random(8, 3, InstanceClass::general, mix_seed(0xf01, seed));
        auto res = local_search(f, 1, seed);
        CHECK(res.selection.size() >= threshold(8, 3, InstanceClass::general).threshold);
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        int n = 12 + static_cast<int>(seed % 6);
        for (auto cls : {InstanceClass::c3c5_free, InstanceClass::bipartite,
                         InstanceClass::pairwise_disjoint}) {
            auto f = gen_random(n, 2, cls, mix_seed(0xf02, seed));
            REQUIRE(validate_family(f).empty());
            auto res = local_search(f, 3, seed);
            CHECK(res.selection.size() >= threshold(n, 2, cls).threshold);
        }
    }
}

TEST_CASE("j=1 fixpoints satisfy the counting inequality") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (int r : {2, 3}) {
            int n = 6 + static_cast<int>(seed % 4);
            auto f = gen_random(n, r, InstanceClass::general, mix_seed(0xf03, seed));
            auto res = local_search(f, 1, seed);
            long long q = res.selection.size();
            CHECK((2LL * n - q * (2 * r - 1)) * (n - q) <= r * q);

            auto rep = analyze_wastefulness(f, res.selection);
            CHECK(rep.max_t() <= r);
        }
    }
}

TEST_CASE("graph-class fixpoints keep the half-wasteful load low") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int n = 12 + static_cast<int>(seed % 5);
        for (auto cls : {InstanceClass::c3c5_free, InstanceClass::bipartite}) {
            auto f = gen_random(n, 2, cls, mix_seed(0xf04, seed));
            auto res = local_search(f, 3, seed);
            auto rep = analyze_wastefulness(f, res.selection);
            CHECK(rep.max_t() <= 1);
            CHECK(rep.sum_hw() <= 2 * res.selection.size());
        }
        auto f = gen_random(n, 2, InstanceClass::pairwise_disjoint,
                            mix_seed(0xf05, seed));
        auto res = local_search(f, 3, seed);
        auto rep = analyze_wastefulness(f, res.selection);
        CHECK(rep.sum_hw() <= 4 * res.selection.size());
    }
}

TEST_CASE("local_search never exceeds the exact maximum") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        int n = 3 + static_cast<int>(seed % 3);
        auto f = gen_random(n, 2, InstanceClass::general, mix_seed(0xf06, seed));
        auto res = local_search(f, 3, seed);
        auto exact = max_rainbow_exact(f);
        REQUIRE(exact.completed);
        CHECK(res.selection.size() <= exact.best_size);
    }
}

TEST_CASE("local_search is deterministic per seed") {
    auto f = gen_random(8, 2, InstanceClass::general, 77);
    auto a = local_search(f, 1, 123);
    auto b = local_search(f, 1, 123);
    CHECK(a.selection.picks() == b.selection.picks());
    CHECK(a.q_greedy == b.q_greedy);
    CHECK(a.moves_applied == b.moves_applied);
}
