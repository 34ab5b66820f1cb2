#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "rainbow/alternating.hpp"
#include "rainbow/batch.hpp"
#include "rainbow/core.hpp"
#include "rainbow/gen.hpp"
#include "rainbow/json_io.hpp"
#include "rainbow/localsearch.hpp"
#include "rainbow/monopath.hpp"
#include "rainbow/oracle.hpp"

namespace {

using namespace rainbow;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

struct IntRange {
    int lo = 0;
    int hi = 0;
};

IntRange parse_range(const std::string& s) {
    try {
        auto colon = s.find(':');
        if (colon == std::string::npos) {
            int v = std::stoi(s);
            return {v, v};
        }
        IntRange r{std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
        if (r.lo > r.hi)
            throw ValidationError("range lower bound exceeds upper: " + s);
        return r;
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse \"" + s + "\" as N or LO:HI");
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

MatchingFamily make_family(const std::string& instance, const std::string& gen_kind,
                           int n, int r, std::uint64_t seed) {
    MatchingFamily fam;
    if (!instance.empty()) {
        fam = load_family(instance);
    } else if (gen_kind == "latin") {
        fam = gen_latin(n, seed);
    } else {
        fam = gen_random(n, r, instance_class_from_string(gen_kind), seed);
    }
    auto viol = validate_family(fam);
    if (!viol.empty()) {
        std::string msg = "invalid family:";
        for (const auto& v : viol) msg += "\n  " + v;
        throw ValidationError(msg);
    }
    return fam;
}

const char* step_outcome_str(SolverStepOutcome o) {
    switch (o) {
        case SolverStepOutcome::augmented: return "augmented";
        case SolverStepOutcome::oracle_none: return "oracle_none";
        case SolverStepOutcome::oracle_budget: return "oracle_budget";
        case SolverStepOutcome::hypothesis_unmet: return "hypothesis_unmet";
    }
    return "?";
}

int cmd_solve(const std::string& instance, const std::string& gen_kind, int n, int r,
              int max_j, std::uint64_t seed, const std::string& algo,
              const std::string& out) {
    if (instance.empty() && gen_kind.empty())
        throw ValidationError("solve needs --instance or --gen");
    MatchingFamily fam = make_family(instance, gen_kind, n, r, seed);
    BoundSpec th = threshold(fam.size(), fam.r, fam.cls);
    std::cout << "n=" << fam.size() << " r=" << fam.r << " class=" << to_string(fam.cls)
              << " max_j=" << max_j << " seed=" << seed << "\n";

    if (algo == "local") {
        LocalSearchResult res = local_search(fam, max_j, seed);
        auto viol = selection_violations(fam, res.selection);
        for (const auto& v : viol) std::cerr << "selection violation: " << v << "\n";
        bool pass = viol.empty() && res.selection.size() >= th.threshold;
        std::cout << "q_greedy=" << res.q_greedy << "\n"
                  << "q_fixpoint=" << res.selection.size() << "\n"
                  << "threshold=" << th.threshold << " (bound=" << th.bound << ")\n"
                  << "verdict=" << (pass ? "pass" : "FAIL") << "\n";
        if (!out.empty()) {
            nlohmann::json j = {{"n", fam.size()},
                                {"r", fam.r},
                                {"class", to_string(fam.cls)},
                                {"max_j", max_j},
                                {"seed", seed},
                                {"q_greedy", res.q_greedy},
                                {"q_fixpoint", res.selection.size()},
                                {"threshold", th.threshold},
                                {"pass", pass},
                                {"selection", selection_to_json(res.selection)}};
            write_text(out, j.dump(2) + "\n");
        }
        return pass ? kOk : kViolation;
    }
    if (algo != "conjecture")
        throw ValidationError("solve --algo must be local or conjecture, got " + algo);

    ConjectureSolverResult res = conjecture_driven_solver(fam, 0, seed);
    auto viol = selection_violations(fam, res.selection);
    for (const auto& v : viol) std::cerr << "selection violation: " << v << "\n";
    std::cout << "q_final=" << res.selection.size() << "\n";
    bool budget_hit = false;
    for (const SolverStep& s : res.trace.steps) {
        std::cout << "step q_before=" << s.q_before << " h_norm=" << s.h_norm
                  << " outcome=" << step_outcome_str(s.outcome) << "\n";
        if (s.outcome == SolverStepOutcome::oracle_budget) budget_hit = true;
    }
    if (!out.empty()) {
        nlohmann::json steps = nlohmann::json::array();
        for (const SolverStep& s : res.trace.steps)
            steps.push_back({{"q_before", s.q_before},
                             {"h_norm", s.h_norm},
                             {"outcome", step_outcome_str(s.outcome)}});
        nlohmann::json j = {{"n", fam.size()},
                            {"seed", seed},
                            {"q_final", res.selection.size()},
                            {"steps", std::move(steps)},
                            {"counterexample_candidate",
                             res.trace.counterexample_candidate},
                            {"selection", selection_to_json(res.selection)}};
        write_text(out, j.dump(2) + "\n");
    }
    if (res.trace.counterexample_candidate) {
        std::string path = "conjecture_candidate_" + std::to_string(seed) + ".json";
        write_text(path, res.trace.candidate_system_json + "\n");
        std::cout << "counterexample candidate archived: " << path << "\n";
        return kViolation;
    }
    if (!viol.empty()) return kViolation;
    return budget_hit ? kBudget : kOk;
}

int cmd_verify_bounds(const std::string& gen_kind, const std::string& n_range, int r,
                      int max_j, int trials, std::uint64_t seed, int workers,
                      const std::string& out) {
    IntRange nr = parse_range(n_range);
    BoundTrialConfig cfg;
    cfg.n_min = nr.lo;
    cfg.n_max = nr.hi;
    cfg.r = r;
    cfg.cls = instance_class_from_string(gen_kind);
    cfg.max_j = max_j;
    cfg.trials = trials;
    cfg.seed = seed;
    auto records = run_bound_trials(cfg, workers);
    std::string csv = to_csv(records);
    if (out.empty())
        std::cout << csv;
    else
        write_text(out, csv);
    int bad = violation_count(records);
    std::cerr << "verify-bounds: trials=" << records.size() << " violations=" << bad
              << " min_slack=" << min_slack(records) << "\n";
    return bad == 0 ? kOk : kViolation;
}

int cmd_find_path(const std::string& instance, const std::string& algo,
                  long long budget_ms, const std::string& out) {
    PathInstance inst = load_path_instance(instance);
    auto viol = validate_path_instance(inst);
    if (!viol.empty()) {
        std::string msg = "invalid path instance:";
        for (const auto& v : viol) msg += "\n  " + v;
        throw ValidationError(msg);
    }

    auto emit = [&out](const LabeledPath& p, const PathInstance& for_inst) {
        bool valid = is_rainbow_monotone(p, for_inst);
        std::string text = labeled_path_to_json(p).dump(2) + "\n";
        std::cout << text;
        if (!out.empty()) write_text(out, text);
        std::cout << "status=witness valid=" << (valid ? "yes" : "no") << "\n";
        return valid ? kOk : kViolation;
    };

    if (algo == "oracle") {
        SearchBudget b;
        b.time_limit_ms = static_cast<int>(budget_ms);
        auto res = exists_monotone_path_exact(inst, b);
        if (res.outcome == SearchOutcome::witness_found) return emit(*res.path, inst);
        if (res.outcome == SearchOutcome::certified_none) {
            std::cout << "status=certified_none\n";
            return kOk;
        }
        std::cout << "status=budget_exceeded\n";
        return kBudget;
    }

    PathSearchResult res;
    if (algo == "treegrow") {
        res = find_monotone_ss_treegrow(inst);
    } else if (algo == "forest") {
        res = find_monotone_ss_forest(inst);
    } else {
        throw ValidationError("find-path --algo must be treegrow, forest, or oracle");
    }
    if (!res.guaranteed)
        std::cout << "note=no_guarantee (fewer than 2|Y|+1 paths; exhaustive fallback "
                     "used)\n";
    if (res.path) return emit(*res.path, inst);
    std::cout << "status=none_found\n";
    return kOk;
}

int cmd_hunt(const std::string& target_name, int trials, std::uint64_t seed, int workers,
             long long budget_ms, const std::string& n_range, int r,
             const std::string& out_dir) {
    ConjectureTarget target = conjecture_target_from_string(target_name);
    IntRange nr = parse_range(n_range);
    HuntConfig cfg;
    cfg.n_min = nr.lo;
    cfg.n_max = nr.hi;
    cfg.r = r;
    cfg.m_max = nr.hi;  // conj_paths caps |M| by the range's upper bound
    cfg.budget.time_limit_ms = static_cast<int>(budget_ms);
    HuntReport rep = search_counterexamples(target, cfg, trials, seed, workers);
    std::cout << "target=" << to_string(rep.target) << " trials=" << rep.trials
              << " budget_exceeded=" << rep.budget_exceeded
              << " violations=" << rep.violations.size() << "\n";
    if (!rep.violations.empty()) {
        std::filesystem::create_directories(out_dir);
        for (const HuntViolation& v : rep.violations) {
            nlohmann::json j = {{"target", to_string(rep.target)},
                                {"trial", v.trial},
                                {"seed", v.seed},
                                {"transcript_hash", v.transcript_hash},
                                {"detail", v.detail},
                                {"instance", nlohmann::json::parse(v.instance_json)}};
            std::string path = out_dir + "/violation_" + to_string(rep.target) + "_" +
                               std::to_string(v.trial) + ".json";
            write_text(path, j.dump(2) + "\n");
            std::cout << "archived: " << path << "\n";
        }
        return kViolation;
    }
    return rep.budget_exceeded > 0 ? kBudget : kOk;
}

int cmd_gen(const std::string& kind, int n, int r, std::uint64_t seed,
            const std::string& out) {
    nlohmann::json j;
    if (kind == "latin") {
        j = family_to_json(gen_latin(n, seed));
    } else if (kind == "sharpness_st") {
        j = path_instance_to_json(gen_sharpness_paths(n, SharpnessVariant::st_single));
    } else if (kind == "sharpness_ss") {
        j = path_instance_to_json(gen_sharpness_paths(n, SharpnessVariant::ss_double));
    } else if (kind == "path_random") {
        j = path_instance_to_json(gen_random_path_instance(3, n, 2 * n + 1, seed));
    } else {
        j = family_to_json(gen_random(n, r, instance_class_from_string(kind), seed));
    }
    std::string text = j.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        write_text(out, text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "rainbow-kit: local search for rainbow matchings, rainbow-monotone path "
        "algorithms, exact oracles, and a conjecture-search harness"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "run local search on one family");
    std::string so_instance, so_gen, so_algo = "local", so_out;
    int so_n = 0, so_r = 2, so_maxj = 1;
    std::uint64_t so_seed = 0;
    solve->add_option("--instance", so_instance, "family JSON file");
    solve->add_option("--gen", so_gen,
                      "generate instead: general|bipartite|c3c5_free|pairwise_disjoint|"
                      "latin");
    solve->add_option("--n", so_n, "family size for --gen");
    solve->add_option("--r", so_r, "uniformity for --gen")->capture_default_str();
    solve->add_option("--max-j", so_maxj, "swap depth")->capture_default_str();
    solve->add_option("--seed", so_seed, "RNG seed")->capture_default_str();
    solve->add_option("--algo", so_algo, "local|conjecture")->capture_default_str();
    solve->add_option("--out", so_out, "write result JSON here");

    auto* vb = app.add_subcommand("verify-bounds",
                                  "batch-solve generated families, emit CSV");
    std::string vb_gen = "general", vb_n = "6:15", vb_out;
    int vb_r = 2, vb_maxj = 1, vb_trials = 100, vb_workers = 0;
    std::uint64_t vb_seed = 0;
    vb->add_option("--gen", vb_gen, "general|bipartite|c3c5_free|pairwise_disjoint")->capture_default_str();
    vb->add_option("--n", vb_n, "family size or LO:HI range")->capture_default_str();
    vb->add_option("--r", vb_r, "uniformity")->capture_default_str();
    vb->add_option("--max-j", vb_maxj, "swap depth")->capture_default_str();
    vb->add_option("--trials", vb_trials, "trial count")->capture_default_str();
    vb->add_option("--seed", vb_seed, "base seed")->capture_default_str();
    vb->add_option("--workers", vb_workers, "parallel workers (0 = default)")->capture_default_str();
    vb->add_option("--out", vb_out, "CSV file (default stdout)");

    auto* fp = app.add_subcommand("find-path", "rainbow-monotone path search");
    std::string fp_instance, fp_algo = "treegrow", fp_out;
    long long fp_budget = 30000;
    fp->add_option("--instance", fp_instance, "path-instance JSON file")->required();
    fp->add_option("--algo", fp_algo, "treegrow|forest|oracle")->capture_default_str();
    fp->add_option("--budget-ms", fp_budget, "oracle time budget")->capture_default_str();
    fp->add_option("--out", fp_out, "write witness JSON here");

    auto* hunt = app.add_subcommand("hunt", "randomized conjecture falsification");
    std::string hu_target, hu_n = "2:5", hu_out = "hunt_archive";
    int hu_trials = 1000, hu_workers = 0, hu_r = 2;
    std::uint64_t hu_seed = 0;
    long long hu_budget = 30000;
    hunt->add_option("--target", hu_target, "conj_ab|conj_paths")->required();
    hunt->add_option("--trials", hu_trials, "trial count")->capture_default_str();
    hunt->add_option("--seed", hu_seed, "base seed")->capture_default_str();
    hunt->add_option("--workers", hu_workers, "parallel workers (0 = default)")->capture_default_str();
    hunt->add_option("--budget-ms", hu_budget, "per-trial oracle budget")->capture_default_str();
    hunt->add_option("--n", hu_n,
                     "family-size range for conj_ab; upper bound caps |M| for "
                     "conj_paths")->capture_default_str();
    hunt->add_option("--r", hu_r, "uniformity for conj_ab")->capture_default_str();
    hunt->add_option("--out", hu_out, "violation archive directory")->capture_default_str();

    auto* gen = app.add_subcommand("gen", "emit a generated instance as JSON");
    std::string ge_kind, ge_out;
    int ge_n = 6, ge_r = 2;
    std::uint64_t ge_seed = 0;
    gen->add_option("--gen", ge_kind,
                    "general|bipartite|c3c5_free|pairwise_disjoint|latin|sharpness_st|"
                    "sharpness_ss|path_random")
        ->required();
    gen->add_option("--n", ge_n, "size parameter (m for sharpness, |Y| for path_random)")->capture_default_str();
    gen->add_option("--r", ge_r, "uniformity")->capture_default_str();
    gen->add_option("--seed", ge_seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", ge_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*solve)
            return cmd_solve(so_instance, so_gen, so_n, so_r, so_maxj, so_seed, so_algo,
                             so_out);
        if (*vb)
            return cmd_verify_bounds(vb_gen, vb_n, vb_r, vb_maxj, vb_trials, vb_seed,
                                     vb_workers, vb_out);
        if (*fp) return cmd_find_path(fp_instance, fp_algo, fp_budget, fp_out);
        if (*hunt)
            return cmd_hunt(hu_target, hu_trials, hu_seed, hu_workers, hu_budget, hu_n,
                            hu_r, hu_out);
        if (*gen) return cmd_gen(ge_kind, ge_n, ge_r, ge_seed, ge_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
