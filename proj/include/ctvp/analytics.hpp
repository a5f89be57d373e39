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

#ifndef CTVP_ANALYTICS_HPP
#define CTVP_ANALYTICS_HPP

#include <cstdint>
#include <string>

#include "ctvp/metrics.hpp"
#include "ctvp/trace.hpp"

namespace ctvp {

// Linear-domain cap for astronomically large estimates.
inline constexpr double kNumericCap = 1e300;

// Wall-clock floor preventing degenerate overhead ratios.
inline constexpr double kMinBaseSeconds = 1e-3;

// FLOPs-per-token presets.
inline constexpr double kFlopsPerToken7B = 1.4e10;
inline constexpr double kFlopsPerToken1_5B = 3.0e9;

// Overhead of verifying with an orbit of size k relative to a single trace
// under the token-linear cost model: exactly k+1.
double arq_flops(std::size_t k);

// t_adv / max(t_base, 1 ms).
double arq_time(double t_adv_seconds, double t_base_seconds);

double flops_estimate(double tokens, double flops_per_token);

struct ArqReport {
    std::size_t k = 0;
    double t_base = 0.0;
    double t_adv = 0.0;
    double f_base = 0.0;
    double f_adv = 0.0;
    double arq_time_ratio = 0.0;
    double arq_flops_ratio = 0.0;
    double tokens_per_trace = 0.0;
    double flops_per_token = 0.0;
};

ArqReport build_arq_report(std::size_t k, double t_base_seconds, double t_adv_seconds,
                           double tokens_per_trace, double flops_per_token);

// Plain-text rendering of a trace (one line per step plus the output line);
// the token count is its whitespace-delimited word count.
std::string render_trace_text(const ExecutionTrace& trace);
std::size_t trace_token_count(const ExecutionTrace& trace);

struct SpaceEstimate {
    double m = 1.0;         // trace-space size, capped
    double n_space = 1.0;   // program-space size, capped
    double value_range = 1000.0;
    std::size_t n_id = 0;
    std::size_t n_blk = 0;
    std::size_t l_steps = 0;
    double entropy_bits = 0.0;  // log2(M), exact in log space even when capped
    double ln_m = 0.0;          // natural log of M, uncapped
    double ln_n = 0.0;          // natural log of N, uncapped
    bool capped = false;
    bool degenerate = false;    // n_id == 0 or L == 0; M and N defined as 1
};

// M = (n_id * R)^L and N = n_id! * n_blk!, computed in log space and capped
// at 1e300.
SpaceEstimate estimate_spaces(const AstMetrics& metrics, double value_range = 1000.0);

struct TrialsEstimate {
    double expected_trials = 1.0;   // (M/N)^(k-1), capped
    double prob_consistent = 1.0;   // (N/M)^(k-1)
    bool invalid_ratio = false;     // N > M; reported, not clamped
    bool capped = false;
};

TrialsEstimate expected_trials(double m, double n_space, std::size_t k);
TrialsEstimate expected_trials_log(double ln_m, double ln_n, std::size_t k);

// 2^(k * log2(n_samples)) = n_samples^k, capped.
double config_min(std::size_t k, double n_samples);

struct MonteCarloResult {
    double mean_trials = 0.0;
    std::uint64_t runs = 0;
};

// Empirical check of the expected-trials law: each trial assigns every one
// of k variants a uniform trace out of m, grouped into consistency classes
// of size n (n must divide m); a trial succeeds when all k land in one
// class. Counts trials to first success, averaged over `runs`. The OpenMP
// variant is the production path; the serial variant is the reference.
MonteCarloResult simulate_expected_trials(std::uint64_t m, std::uint64_t n, std::size_t k,
                                          std::uint64_t runs, std::uint64_t seed);
MonteCarloResult simulate_expected_trials_serial(std::uint64_t m, std::uint64_t n, std::size_t k,
                                                 std::uint64_t runs, std::uint64_t seed);

}  // namespace ctvp

#endif  // CTVP_ANALYTICS_HPP
