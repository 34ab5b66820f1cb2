#include "rainbow/batch.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rainbow/gen.hpp"
#include "rainbow/localsearch.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

bool same_outcome(const SolveRecord& a, const SolveRecord& b) {
    return a.trial == b.trial && a.seed == b.seed && a.n == b.n && a.r == b.r &&
           a.cls == b.cls && a.max_j == b.max_j && a.q_greedy == b.q_greedy &&
           a.q_final == b.q_final && a.threshold == b.threshold && a.moves == b.moves &&
           a.ok == b.ok;
}

bool same_outcomes(const std::vector<SolveRecord>& a,
                   const std::vector<SolveRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!same_outcome(a[i], b[i])) return false;
    return true;
}

namespace {

SolveRecord solve_one(const BoundTrialConfig& cfg, int t) {
    SolveRecord rec;
    rec.trial = t;
    rec.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(t));
    Rng rng(mix_seed(rec.seed, 0x6273ULL));
    rec.n = rng.uniform_int(cfg.n_min, cfg.n_max);
    rec.r = cfg.r;
    rec.cls = cfg.cls;
    rec.max_j = cfg.max_j;

    MatchingFamily fam =
        gen_random(rec.n, cfg.r, cfg.cls, mix_seed(rec.seed, 0x696e7374ULL));
    auto t0 = std::chrono::steady_clock::now();
    LocalSearchResult res = local_search(fam, cfg.max_j, rec.seed);
    rec.ms = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
    rec.q_greedy = res.q_greedy;
    rec.q_final = res.selection.size();
    rec.moves = res.moves_applied;
    rec.threshold = threshold(rec.n, cfg.r, cfg.cls).threshold;
    rec.ok = selection_violations(fam, res.selection).empty() &&
             rec.q_final >= rec.threshold;
    return rec;
}

}  // namespace

std::vector<SolveRecord> run_bound_trials(const BoundTrialConfig& cfg, int workers) {
    std::vector<SolveRecord> records(std::max(cfg.trials, 0));
#ifdef _OPENMP
    int nthreads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#else
    (void)workers;
#endif
    for (int t = 0; t < cfg.trials; ++t) records[t] = solve_one(cfg, t);
    return records;
}

std::vector<SolveRecord> run_bound_trials_serial(const BoundTrialConfig& cfg) {
    std::vector<SolveRecord> records(std::max(cfg.trials, 0));
    for (int t = 0; t < cfg.trials; ++t) records[t] = solve_one(cfg, t);
    return records;
}

int min_slack(const std::vector<SolveRecord>& records) {
    int slack = 0;
    bool first = true;
    for (const SolveRecord& r : records) {
        int s = r.q_final - r.threshold;
        if (first || s < slack) slack = s;
        first = false;
    }
    return slack;
}

int violation_count(const std::vector<SolveRecord>& records) {
    int count = 0;
    for (const SolveRecord& r : records)
        if (!r.ok) ++count;
    return count;
}

std::string to_csv(const std::vector<SolveRecord>& records) {
    std::ostringstream os;
    os << "# rainbow-kit bound-trials csv v1\n";
    os << "trial,seed,n,r,class,max_j,q_greedy,q_final,threshold,moves,ok,ms\n";
    os << std::fixed << std::setprecision(3);
    for (const SolveRecord& r : records)
        os << r.trial << ',' << r.seed << ',' << r.n << ',' << r.r << ','
           << to_string(r.cls) << ',' << r.max_j << ',' << r.q_greedy << ','
           << r.q_final << ',' << r.threshold << ',' << r.moves << ','
           << (r.ok ? 1 : 0) << ',' << r.ms << '\n';
    return os.str();
}

}  // namespace rainbow
