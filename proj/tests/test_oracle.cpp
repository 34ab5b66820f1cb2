#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "rainbow/gen.hpp"
#include "rainbow/localsearch.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/rng.hpp"

using namespace rainbow;

namespace {

// does some path of the given set traverse e (either direction) as a non-M
// step? used to confirm h_labels point at sets that really donate the edge
bool set_donates(const std::vector<AlternatingPath>& set, const Edge& e) {
    for (const AlternatingPath& p : set)
        for (int k = 0; k < p.edge_count(); ++k)
            if (!p.in_m[k] && p.edge(k) == e) return true;
    return false;
}

}  // namespace

TEST_CASE("exact rainbow oracle on doubled latin families") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto two = max_rainbow_exact(gen_latin(2, seed));
        CHECK(two.completed);
        CHECK(two.best_size == 1);

        auto three = max_rainbow_exact(gen_latin(3, seed));
        CHECK(three.completed);
        CHECK(three.best_size == 3);
        CHECK(three.nodes > 0);
        CHECK(three.witness.size() == 3);
        CHECK(selection_violations(gen_latin(3, seed), three.witness).empty());
    }
}

TEST_CASE("exact rainbow oracle degenerate shapes") {
    MatchingFamily empty;
    auto res = max_rainbow_exact(empty);
    CHECK(res.completed);
    CHECK(res.best_size == 0);

    MatchingFamily one;
    one.matchings.push_back(Matching{{Edge{0, 1}}});
    auto res1 = max_rainbow_exact(one);
    CHECK(res1.completed);
    CHECK(res1.best_size == 1);
    CHECK(res1.witness.has(0));
}

TEST_CASE("exhausted budget still yields a usable lower bound") {
    auto fam = gen_random(6, 2, InstanceClass::general, 77);
    SearchBudget tiny;
    tiny.node_limit = 2;
    auto cut = max_rainbow_exact(fam, tiny);
    CHECK_FALSE(cut.completed);

    auto full = max_rainbow_exact(fam);
    REQUIRE(full.completed);
    CHECK(cut.best_size <= full.best_size);
    CHECK(selection_violations(fam, cut.witness).empty());
    CHECK(cut.witness.size() == cut.best_size);
}

TEST_CASE("exact oracle dominates local search on small families") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        int n = 3 + static_cast<int>(seed % 3);
        auto fam = gen_random(n, 2, InstanceClass::general, mix_seed(0x0a11, seed));
        auto exact = max_rainbow_exact(fam);
        REQUIRE(exact.completed);
        auto ls = local_search(fam, 2, seed);
        CHECK(exact.best_size >= ls.selection.size());
        CHECK(exact.best_size >= n - 1);
    }
}

TEST_CASE("monotone path oracle certifies the sharp families") {
    for (int m = 1; m <= 4; ++m) {
        auto inst = gen_sharpness_paths(m, SharpnessVariant::st_single);
        auto res = exists_monotone_path_exact(inst);
        CHECK(res.outcome == SearchOutcome::certified_none);

        inst.paths.push_back(inst.paths.front());
        auto more = exists_monotone_path_exact(inst);
        REQUIRE(more.outcome == SearchOutcome::witness_found);
        CHECK(is_rainbow_monotone(*more.path, inst));
    }
    for (int m = 1; m <= 3; ++m) {
        auto inst = gen_sharpness_paths(m, SharpnessVariant::ss_double);
        auto res = exists_monotone_path_exact(inst);
        CHECK(res.outcome == SearchOutcome::certified_none);
        CHECK(res.nodes > 0);

        inst.paths.push_back(inst.paths.front());
        auto more = exists_monotone_path_exact(inst);
        REQUIRE(more.outcome == SearchOutcome::witness_found);
        CHECK(is_rainbow_monotone(*more.path, inst));
    }
}

TEST_CASE("monotone path oracle agrees with treegrow at the guarantee") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        int y = 1 + static_cast<int>(seed % 5);
        auto inst = gen_random_path_instance(3, y, 2 * y + 1, mix_seed(0x9a7, seed));
        auto exact = exists_monotone_path_exact(inst);
        REQUIRE(exact.outcome == SearchOutcome::witness_found);
        CHECK(is_rainbow_monotone(*exact.path, inst));

        auto grown = find_monotone_ss_treegrow(inst);
        REQUIRE(grown.path.has_value());
        CHECK(is_rainbow_monotone(*grown.path, inst));
    }
}

TEST_CASE("monotone path oracle rejects malformed instances") {
    PathInstance inst;
    inst.s = {0, 1};
    inst.y = {1};  // overlaps S
    inst.paths.push_back(DirectedPath{{0, 1}});
    CHECK_THROWS_WITH_AS(exists_monotone_path_exact(inst),
                         doctest::Contains("path instance"), ValidationError);
}

TEST_CASE("augmenting oracle finds the trivial one-edge witness") {
    AlternatingSystem sys;
    AlternatingPath p;
    p.vertices = {3, 4};
    p.in_m = {false};
    sys.h = {{p}};
    auto res = find_strongly_rainbow_augmenting(sys);
    REQUIRE(res.outcome == SearchOutcome::witness_found);
    CHECK(res.h_labels == std::vector<int>{0});
    CHECK(augmenting_violation(sys.m, *res.path).empty());
}

TEST_CASE("augmenting oracle certifies a blocked two-set system") {
    // ||H|| = 2 = 2|M|: every candidate edge touches the M edge, and the two
    // ways to thread through it repeat a vertex
    AlternatingSystem sys;
    sys.m = Matching{{Edge{2, 3}}};
    AlternatingPath h1;
    h1.vertices = {0, 2, 3, 1};
    h1.in_m = {false, true, false};
    AlternatingPath h2;
    h2.vertices = {1, 2, 3, 0};
    h2.in_m = {false, true, false};
    sys.h = {{h1}, {h2}};
    REQUIRE(validate_alternating_system(sys).empty());

    auto res = find_strongly_rainbow_augmenting(sys);
    CHECK(res.outcome == SearchOutcome::certified_none);
    CHECK(res.nodes > 0);
}

TEST_CASE("augmenting oracle validates its input") {
    AlternatingSystem sys;
    sys.m = Matching{{Edge{1, 2}}};
    AlternatingPath bad;
    bad.vertices = {1, 2};
    bad.in_m = {true};
    sys.h = {{bad}};
    CHECK_THROWS_WITH_AS(find_strongly_rainbow_augmenting(sys),
                         doctest::Contains("alternating system"), ValidationError);
}

TEST_CASE("augmenting oracle succeeds on generated systems and labels honestly") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto sys = gen_random_alternating_system(3, mix_seed(0x515, seed));
        REQUIRE(validate_alternating_system(sys).empty());
        REQUIRE(h_total(sys) > 2 * sys.m.size());

        auto res = find_strongly_rainbow_augmenting(sys);
        REQUIRE(res.outcome == SearchOutcome::witness_found);
        const AlternatingPath& p = *res.path;
        CHECK(augmenting_violation(sys.m, p).empty());

        int non_m = 0;
        for (int k = 0; k < p.edge_count(); ++k)
            if (!p.in_m[k]) ++non_m;
        REQUIRE(static_cast<int>(res.h_labels.size()) == non_m);

        std::set<int> distinct(res.h_labels.begin(), res.h_labels.end());
        CHECK(distinct.size() == res.h_labels.size());

        int pos = 0;
        for (int k = 0; k < p.edge_count(); ++k) {
            if (p.in_m[k]) continue;
            int label = res.h_labels[pos++];
            REQUIRE(label >= 0);
            REQUIRE(label < static_cast<int>(sys.h.size()));
            CHECK(set_donates(sys.h[label], p.edge(k)));
        }
    }
}

TEST_CASE("augmenting oracle reports budget exhaustion explicitly") {
    auto sys = gen_random_alternating_system(3, 42);
    SearchBudget none;
    none.node_limit = 0;
    auto res = find_strongly_rainbow_augmenting(sys, none);
    CHECK(res.outcome == SearchOutcome::budget_exceeded);
}

TEST_CASE("conjecture target names round trip") {
    CHECK(conjecture_target_from_string("conj_ab") == ConjectureTarget::conj_ab);
    CHECK(conjecture_target_from_string("conj_paths") == ConjectureTarget::conj_paths);
    CHECK(to_string(ConjectureTarget::conj_ab) == "conj_ab");
    CHECK(to_string(ConjectureTarget::conj_paths) == "conj_paths");
    CHECK_THROWS_AS(conjecture_target_from_string("conj_nope"), ValidationError);
}

TEST_CASE("hunting finds no violations on either conjecture") {
    HuntConfig cfg;
    cfg.n_min = 2;
    cfg.n_max = 4;
    auto ab = search_counterexamples(ConjectureTarget::conj_ab, cfg, 80, 1234, 1);
    CHECK(ab.trials == 80);
    CHECK(ab.violations.empty());
    CHECK(ab.budget_exceeded == 0);

    HuntConfig pcfg;
    pcfg.m_max = 3;
    auto paths = search_counterexamples(ConjectureTarget::conj_paths, pcfg, 60, 99, 1);
    CHECK(paths.trials == 60);
    CHECK(paths.violations.empty());
    CHECK(paths.budget_exceeded == 0);
}

TEST_CASE("hunt reports do not depend on the worker count") {
    HuntConfig cfg;
    cfg.n_min = 2;
    cfg.n_max = 4;
    auto solo = search_counterexamples(ConjectureTarget::conj_ab, cfg, 40, 7, 1);
    auto quad = search_counterexamples(ConjectureTarget::conj_ab, cfg, 40, 7, 4);
    CHECK(solo.violations.size() == quad.violations.size());
    CHECK(solo.budget_exceeded == quad.budget_exceeded);

    auto zero = search_counterexamples(ConjectureTarget::conj_ab, cfg, 0, 7, 1);
    CHECK(zero.trials == 0);
    CHECK(zero.violations.empty());
}

TEST_CASE("hunt counts starved trials as budget pressure, not violations") {
    HuntConfig cfg;
    cfg.n_min = 3;
    cfg.n_max = 3;
    cfg.budget.node_limit = 1;
    auto rep = search_counterexamples(ConjectureTarget::conj_ab, cfg, 10, 5, 1);
    CHECK(rep.violations.empty());
    CHECK(rep.budget_exceeded == 10);
}
