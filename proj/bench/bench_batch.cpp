// Compares the trial-parallel batch runner against the serial reference on
// the same configuration: prints both wall times and verifies the records
// agree (timing aside). Exit 0 iff they do.
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>

#include "rainbow/batch.hpp"

using namespace rainbow;

namespace {

double wall_ms(const std::function<std::vector<SolveRecord>()>& run,
               std::vector<SolveRecord>& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = run();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    int trials = 200;
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::strcmp(argv[i], "--trials") == 0) trials = std::atoi(argv[i + 1]);

    BoundTrialConfig cfg;
    cfg.n_min = 8;
    cfg.n_max = 14;
    cfg.r = 2;
    cfg.cls = InstanceClass::general;
    cfg.max_j = 1;
    cfg.trials = trials;
    cfg.seed = 0xbe5cULL;

    std::vector<SolveRecord> serial, parallel;
    double ms_serial = wall_ms([&] { return run_bound_trials_serial(cfg); }, serial);
    double ms_parallel = wall_ms([&] { return run_bound_trials(cfg, 0); }, parallel);

    std::cout << "trials=" << trials << " serial_ms=" << ms_serial
              << " parallel_ms=" << ms_parallel << " speedup="
              << (ms_parallel > 0 ? ms_serial / ms_parallel : 0.0) << "\n";
    std::cout << "violations serial=" << violation_count(serial)
              << " parallel=" << violation_count(parallel)
              << " min_slack=" << min_slack(serial) << "\n";

    if (!same_outcomes(serial, parallel)) {
        std::cout << "MISMATCH: parallel records differ from serial reference\n";
        return 1;
    }
    std::cout << "records agree\n";
    return 0;
}
