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

#ifndef CTVP_SIMILARITY_HPP
#define CTVP_SIMILARITY_HPP

#include <cstddef>
#include <vector>

#include "ctvp/trace.hpp"

namespace ctvp {

// Convex-combination weights for the trace similarity. State equality is
// the behavioral signal and carries the most weight by default.
struct SimilarityWeights {
    double alpha = 0.2;  // step-length component
    double beta = 0.5;   // per-step state equality
    double gamma = 0.3;  // final-output agreement

    // Throws std::invalid_argument unless each weight is in [0,1] and the
    // sum is 1 within 1e-9.
    void validate() const;
};

// min(n1,n2)/max(n1,n2); two empty traces score 1 so that validly-empty
// traces are not spuriously inconsistent.
double step_len_sim(const ExecutionTrace& t1, const ExecutionTrace& t2);

// Fraction of aligned steps whose env maps are exactly equal, over the
// shorter length; 1 when the shorter trace is empty.
double state_sim(const ExecutionTrace& t1, const ExecutionTrace& t2);

// 1 for byte-identical outputs, 0.5 when exactly one output is empty,
// 0 otherwise.
double output_sim(const ExecutionTrace& t1, const ExecutionTrace& t2);

// alpha*S_len + beta*S_state + gamma*S_out, clamped to [0,1].
// Throws std::invalid_argument if either trace is invalid.
double trace_sim(const ExecutionTrace& t1, const ExecutionTrace& t2,
                 const SimilarityWeights& w);

// All pairwise similarities s(t_i, t_j) for i < j, in lexicographic pair
// order. The OpenMP variant is the production path; the serial variant is
// the reference implementation the tests compare against.
std::vector<double> pairwise_similarities(const std::vector<ExecutionTrace>& traces,
                                          const SimilarityWeights& w);
std::vector<double> pairwise_similarities_serial(const std::vector<ExecutionTrace>& traces,
                                                 const SimilarityWeights& w);

// Percentile by linear interpolation over the ascending sorted values at
// rank p/100*(count-1). p in [0,100].
double percentile_interpolated(std::vector<double> values, double p);

double median_of(std::vector<double> values);

struct ConsistencyResult {
    std::vector<double> pairwise;
    double percentile_score = 0.0;
    double mean_score = 0.0;
    double p = 80.0;
    std::size_t valid_trace_count = 0;
};

// Consistency over the valid traces in `traces`. Throws
// std::invalid_argument when fewer than two traces are valid.
ConsistencyResult consistency_percentile(const std::vector<ExecutionTrace>& traces, double p,
                                         const SimilarityWeights& w);

// Pairwise average: 2/(t(t-1)) * sum of s_ij over valid traces.
double consistency_mean(const std::vector<ExecutionTrace>& traces, const SimilarityWeights& w);

}  // namespace ctvp

#endif  // CTVP_SIMILARITY_HPP
