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

#include "ctvp/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ctvp/rng.hpp"
#include "ctvp/value.hpp"

namespace ctvp {

double arq_flops(std::size_t k) { return static_cast<double>(k) + 1.0; }

double arq_time(double t_adv_seconds, double t_base_seconds) {
    if (t_adv_seconds < 0.0 || t_base_seconds < 0.0) {
        throw std::invalid_argument("negative wall-clock time");
    }
    return t_adv_seconds / std::max(t_base_seconds, kMinBaseSeconds);
}

double flops_estimate(double tokens, double flops_per_token) {
    return tokens * flops_per_token;
}

ArqReport build_arq_report(std::size_t k, double t_base_seconds, double t_adv_seconds,
                           double tokens_per_trace, double flops_per_token) {
    ArqReport r;
    r.k = k;
    r.t_base = t_base_seconds;
    r.t_adv = t_adv_seconds;
    r.tokens_per_trace = tokens_per_trace;
    r.flops_per_token = flops_per_token;
    r.f_base = flops_estimate(tokens_per_trace, flops_per_token);
    r.f_adv = (static_cast<double>(k) + 1.0) * r.f_base;
    r.arq_time_ratio = arq_time(t_adv_seconds, t_base_seconds);
    r.arq_flops_ratio = arq_flops(k);
    return r;
}

std::string render_trace_text(const ExecutionTrace& trace) {
    std::ostringstream os;
    for (const TraceStep& step : trace.steps) {
        os << "L" << step.line << ":";
        for (const auto& [name, value] : step.env) {
            os << " " << name << "=" << value_to_display(value);
        }
        os << "\n";
    }
    os << "OUT: " << trace.final_output << "\n";
    return os.str();
}

std::size_t trace_token_count(const ExecutionTrace& trace) {
    std::istringstream is(render_trace_text(trace));
    std::size_t count = 0;
    std::string token;
    while (is >> token) ++count;
    return count;
}

namespace {

// log(x!) via lgamma; exact enough for the factorial magnitudes in play.
double ln_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double capped_exp(double ln_value, bool& capped) {
    if (ln_value > std::log(kNumericCap)) {
        capped = true;
        return kNumericCap;
    }
    return std::exp(ln_value);
}

}  // namespace

SpaceEstimate estimate_spaces(const AstMetrics& metrics, double value_range) {
    if (value_range < 1.0) throw std::invalid_argument("value_range must be >= 1");
    SpaceEstimate e;
    e.value_range = value_range;
    e.n_id = metrics.unique_identifiers;
    e.n_blk = metrics.top_level_blocks;
    e.l_steps = metrics.executable_statements;

    if (e.n_id == 0 || e.l_steps == 0) {
        // Empty-product convention: no identifiers or no steps means a
        // single possible trace and a single program.
        e.degenerate = true;
        return e;
    }

    e.ln_m = static_cast<double>(e.l_steps) *
             std::log(static_cast<double>(e.n_id) * value_range);
    e.ln_n = ln_factorial(e.n_id) + ln_factorial(e.n_blk);
    e.entropy_bits = e.ln_m / std::log(2.0);

    bool capped = false;
    e.m = capped_exp(e.ln_m, capped);
    e.n_space = capped_exp(e.ln_n, capped);
    e.capped = capped;
    return e;
}

TrialsEstimate expected_trials_log(double ln_m, double ln_n, std::size_t k) {
    if (k < 1) throw std::invalid_argument("orbit size k must be >= 1");
    TrialsEstimate t;
    t.invalid_ratio = ln_n > ln_m;
    double exponent = static_cast<double>(k - 1);
    bool capped = false;
    t.expected_trials = capped_exp(exponent * (ln_m - ln_n), capped);
    t.capped = capped;
    t.prob_consistent = std::exp(exponent * (ln_n - ln_m));
    return t;
}

TrialsEstimate expected_trials(double m, double n_space, std::size_t k) {
    if (m < 1.0 || n_space < 1.0) {
        throw std::invalid_argument("space sizes must be >= 1");
    }
    return expected_trials_log(std::log(m), std::log(n_space), k);
}

double config_min(std::size_t k, double n_samples) {
    if (n_samples < 1.0) throw std::invalid_argument("n_samples must be >= 1");
    bool capped = false;
    return capped_exp(static_cast<double>(k) * std::log(n_samples), capped);
}

namespace {

std::uint64_t trials_until_consistent(std::uint64_t m, std::uint64_t n, std::size_t k,
                                      Rng& rng) {
    std::uint64_t trials = 0;
    for (;;) {
        ++trials;
        std::uint64_t first_class = rng.next_below(m) / n;
        bool consistent = true;
        for (std::size_t i = 1; i < k; ++i) {
            if (rng.next_below(m) / n != first_class) consistent = false;
            // All k draws happen regardless so the consumed stream length
            // per trial is fixed.
        }
        if (consistent) return trials;
    }
}

void check_mc_args(std::uint64_t m, std::uint64_t n, std::size_t k) {
    if (n == 0 || m == 0 || m % n != 0) {
        throw std::invalid_argument("consistency class size must divide the trace space");
    }
    if (k < 2) throw std::invalid_argument("simulation needs k >= 2");
}

}  // namespace

MonteCarloResult simulate_expected_trials_serial(std::uint64_t m, std::uint64_t n, std::size_t k,
                                                 std::uint64_t runs, std::uint64_t seed) {
    check_mc_args(m, n, k);
    std::uint64_t total = 0;
    for (std::uint64_t run = 0; run < runs; ++run) {
        Rng rng(derive_seed(seed, run));
        total += trials_until_consistent(m, n, k, rng);
    }
    MonteCarloResult r;
    r.runs = runs;
    r.mean_trials = static_cast<double>(total) / static_cast<double>(runs);
    return r;
}

MonteCarloResult simulate_expected_trials(std::uint64_t m, std::uint64_t n, std::size_t k,
                                          std::uint64_t runs, std::uint64_t seed) {
    check_mc_args(m, n, k);
    std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::uint64_t run = 0; run < runs; ++run) {
        Rng rng(derive_seed(seed, run));
        total += trials_until_consistent(m, n, k, rng);
    }
    MonteCarloResult r;
    r.runs = runs;
    r.mean_trials = static_cast<double>(total) / static_cast<double>(runs);
    return r;
}

}  // namespace ctvp
