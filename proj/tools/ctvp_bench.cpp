// Copyright 2026 The CTVP Project Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compares the OpenMP kernels against their serial reference
// implementations: pairwise trace similarity and the expected-trials
// Monte-Carlo. Verifies result equality, then reports timings.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ctvp/analytics.hpp"
#include "ctvp/rng.hpp"
#include "ctvp/similarity.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Synthetic canonical-style traces with controlled disagreement.
std::vector<ctvp::ExecutionTrace> synth_traces(std::size_t count, std::size_t steps,
                                               std::uint64_t seed) {
    std::vector<ctvp::ExecutionTrace> traces(count);
    for (std::size_t t = 0; t < count; ++t) {
        ctvp::Rng rng(ctvp::derive_seed(seed, t));
        ctvp::ExecutionTrace& tr = traces[t];
        tr.final_output = "out" + std::to_string(rng.next_below(4));
        ctvp::Env env;
        for (std::size_t s = 0; s < steps; ++s) {
            env["a"] = static_cast<std::int64_t>(s);
            env["b"] = static_cast<std::int64_t>(rng.next_below(8));
            env["c"] = rng.next_bool(0.5);
            tr.steps.push_back({static_cast<int>(s) + 1, env});
        }
    }
    return traces;
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto start = Clock::now();
        fn();
        best = std::min(best, seconds_since(start));
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel paths run serially\n");
#endif

    std::printf("\npairwise trace similarity\n");
    std::printf("%8s %8s %12s %12s %9s\n", "traces", "steps", "serial_s", "parallel_s",
                "speedup");
    ctvp::SimilarityWeights w;
    for (auto [count, steps] : {std::pair<std::size_t, std::size_t>{64, 64},
                                std::pair<std::size_t, std::size_t>{128, 128},
                                std::pair<std::size_t, std::size_t>{256, 64}}) {
        auto traces = synth_traces(count, steps, 42);
        std::vector<double> serial_out, parallel_out;
        double ts = time_best_of(3, [&] { serial_out = pairwise_similarities_serial(traces, w); });
        double tp = time_best_of(3, [&] { parallel_out = pairwise_similarities(traces, w); });
        if (serial_out != parallel_out) {
            std::printf("MISMATCH between serial and parallel pairwise results\n");
            return 1;
        }
        std::printf("%8zu %8zu %12.6f %12.6f %8.2fx\n", count, steps, ts, tp, ts / tp);
    }

    std::printf("\nexpected-trials Monte-Carlo (m=16, n=4, k=3)\n");
    std::printf("%10s %12s %12s %9s %12s\n", "runs", "serial_s", "parallel_s", "speedup",
                "mean");
    for (std::uint64_t runs : {100000ULL, 400000ULL}) {
        ctvp::MonteCarloResult rs, rp;
        double ts = time_best_of(3, [&] {
            rs = ctvp::simulate_expected_trials_serial(16, 4, 3, runs, 7);
        });
        double tp = time_best_of(3, [&] {
            rp = ctvp::simulate_expected_trials(16, 4, 3, runs, 7);
        });
        if (std::fabs(rs.mean_trials - rp.mean_trials) > 1e-12) {
            std::printf("MISMATCH between serial and parallel Monte-Carlo means\n");
            return 1;
        }
        std::printf("%10llu %12.6f %12.6f %8.2fx %12.4f\n",
                    static_cast<unsigned long long>(runs), ts, tp, ts / tp, rp.mean_trials);
    }
    return 0;
}
