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

#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "ctvp/analytics.hpp"
#include "ctvp/program.hpp"

using namespace ctvp;

namespace {

AstMetrics metrics_of(const char* source) {
    ParseResult r = parse_program(source);
    REQUIRE(r.ok());
    return ast_metrics(r.value().ast);
}

// Direct product oracle: repeated multiplication with the same cap.
double oracle_power(double base, std::size_t exp) {
    double out = 1.0;
    for (std::size_t i = 0; i < exp; ++i) {
        out *= base;
        if (out > kNumericCap) return kNumericCap;
    }
    return out;
}

}  // namespace

TEST_CASE("arq overhead is exactly k+1") {
    CHECK(arq_flops(3) == 4.0);
    CHECK(arq_flops(5) == 6.0);
    CHECK(arq_flops(10) == 11.0);
    CHECK(arq_flops(20) == 21.0);
    CHECK(arq_flops(0) == 1.0);
}

TEST_CASE("arq_time floors the baseline at one millisecond") {
    CHECK(arq_time(1.0, 0.5) == doctest::Approx(2.0));
    CHECK(arq_time(1.0, 0.0) == doctest::Approx(1000.0));
    CHECK(arq_time(2.0, 1e-9) == doctest::Approx(2000.0));
    CHECK_THROWS_AS(arq_time(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("flop model is token-linear") {
    CHECK(flops_estimate(100.0, kFlopsPerToken7B) == doctest::Approx(1.4e12));
    ArqReport r = build_arq_report(5, 0.1, 0.6, 200.0, kFlopsPerToken1_5B);
    CHECK(r.f_base == doctest::Approx(200.0 * 3.0e9));
    CHECK(r.f_adv == doctest::Approx(6.0 * 200.0 * 3.0e9));
    CHECK(r.arq_flops_ratio == 6.0);
    CHECK(r.f_adv / r.f_base == doctest::Approx(r.arq_flops_ratio));
}

TEST_CASE("trace token count uses the rendered trace text") {
    ExecutionTrace t;
    Env env;
    env["x"] = std::int64_t{1};
    t.steps.push_back({1, env});
    env["y"] = std::int64_t{2};
    t.steps.push_back({2, env});
    t.final_output = "1 2";
    // "L1: x=1" + "L2: x=1 y=2" + "OUT: 1 2" -> 2 + 3 + 3 tokens
    CHECK(trace_token_count(t) == 8);
}

TEST_CASE("estimate_spaces matches the direct product oracle") {
    AstMetrics m;
    m.unique_identifiers = 3;
    m.top_level_blocks = 2;
    m.executable_statements = 5;
    SpaceEstimate e = estimate_spaces(m, 1000.0);
    CHECK(e.m == doctest::Approx(oracle_power(3000.0, 5)).epsilon(1e-9));
    CHECK(e.n_space == doctest::Approx(12.0).epsilon(1e-9));  // 3! * 2!
    CHECK(e.entropy_bits == doctest::Approx(5.0 * std::log2(3000.0)).epsilon(1e-12));
    CHECK_FALSE(e.capped);
    CHECK_FALSE(e.degenerate);
}

TEST_CASE("degenerate programs collapse both spaces to one") {
    AstMetrics none;
    none.unique_identifiers = 0;
    none.executable_statements = 4;
    SpaceEstimate e = estimate_spaces(none, 1000.0);
    CHECK(e.degenerate);
    CHECK(e.m == 1.0);
    CHECK(e.n_space == 1.0);

    AstMetrics no_steps;
    no_steps.unique_identifiers = 2;
    no_steps.executable_statements = 0;
    CHECK(estimate_spaces(no_steps, 1000.0).degenerate);
}

TEST_CASE("astronomical spaces cap at 1e300 with exact log-space entropy") {
    AstMetrics m;
    m.unique_identifiers = 8;
    m.top_level_blocks = 3;
    m.executable_statements = 200;
    SpaceEstimate e = estimate_spaces(m, 1000.0);
    CHECK(e.capped);
    CHECK(e.m == kNumericCap);
    CHECK(e.entropy_bits == doctest::Approx(200.0 * std::log2(8000.0)).epsilon(1e-9));
}

TEST_CASE("expected_trials substitution cases") {
    TrialsEstimate t = expected_trials(100.0, 10.0, 3);
    CHECK(t.expected_trials == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(t.prob_consistent == doctest::Approx(0.01).epsilon(1e-9));
    CHECK_FALSE(t.invalid_ratio);

    CHECK(expected_trials(12345.0, 17.0, 1).expected_trials == doctest::Approx(1.0));
    CHECK(expected_trials(64.0, 1.0, 3).expected_trials ==
          doctest::Approx(std::exp2(2.0 * std::log2(64.0))).epsilon(1e-9));
}

TEST_CASE("expected_trials reports inverted ratios without clamping") {
    TrialsEstimate t = expected_trials(10.0, 100.0, 2);
    CHECK(t.invalid_ratio);
    CHECK(t.expected_trials == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("log-space trials agree with exact integer arithmetic") {
    for (std::uint64_t m : {7ULL, 64ULL, 333ULL, 1000ULL}) {
        for (std::uint64_t n : {1ULL, 2ULL, 9ULL, 100ULL}) {
            if (n > m) continue;
            for (std::size_t k = 1; k <= 5; ++k) {
                __int128 num = 1;
                __int128 den = 1;
                for (std::size_t i = 1; i < k; ++i) {
                    num *= m;
                    den *= n;
                }
                double exact = static_cast<double>(num) / static_cast<double>(den);
                TrialsEstimate t =
                    expected_trials(static_cast<double>(m), static_cast<double>(n), k);
                CHECK(t.expected_trials == doctest::Approx(exact).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("config_min is n_samples to the k") {
    CHECK(config_min(2, 8.0) == doctest::Approx(64.0));
    CHECK(config_min(5, 1.0) == doctest::Approx(1.0));
    CHECK(config_min(0, 1000.0) == doctest::Approx(1.0));
}

TEST_CASE("corpus-typical metrics put expected trials beyond a million") {
    for (std::size_t n_id : {3, 5, 8}) {
        for (std::size_t l : {5, 15, 30}) {
            AstMetrics m;
            m.unique_identifiers = n_id;
            m.top_level_blocks = 2;
            m.executable_statements = l;
            SpaceEstimate e = estimate_spaces(m, 1000.0);
            for (std::size_t k : {3, 5, 10, 20}) {
                TrialsEstimate t = expected_trials_log(e.ln_m, e.ln_n, k);
                CAPTURE(n_id);
                CAPTURE(l);
                CAPTURE(k);
                CHECK(t.expected_trials >= 1e6);
            }
        }
    }
}

TEST_CASE("monte-carlo mean tracks (M/N)^(k-1) within ten percent") {
    struct Case {
        std::uint64_t m, n;
        std::size_t k;
    };
    for (const Case& c : {Case{16, 4, 2}, Case{16, 4, 3}, Case{64, 8, 2}}) {
        double expected = expected_trials(static_cast<double>(c.m), static_cast<double>(c.n),
                                          c.k)
                              .expected_trials;
        MonteCarloResult r = simulate_expected_trials(c.m, c.n, c.k, 100000, 12345);
        CAPTURE(c.m);
        CAPTURE(c.n);
        CAPTURE(c.k);
        CHECK(std::fabs(r.mean_trials - expected) / expected < 0.10);
    }
}

TEST_CASE("parallel and serial monte-carlo agree exactly") {
    MonteCarloResult a = simulate_expected_trials(16, 4, 3, 20000, 99);
    MonteCarloResult b = simulate_expected_trials_serial(16, 4, 3, 20000, 99);
    CHECK(a.mean_trials == b.mean_trials);
    CHECK(a.runs == b.runs);
}

TEST_CASE("monte-carlo rejects invalid partitions") {
    CHECK_THROWS_AS(simulate_expected_trials(10, 3, 2, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_expected_trials(16, 4, 1, 10, 1), std::invalid_argument);
}
