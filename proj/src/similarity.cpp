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

#include "ctvp/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctvp {

void SimilarityWeights::validate() const {
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(alpha) || !in_unit(beta) || !in_unit(gamma)) {
        throw std::invalid_argument("similarity weights must lie in [0,1]");
    }
    if (std::fabs(alpha + beta + gamma - 1.0) > 1e-9) {
        throw std::invalid_argument("similarity weights must sum to 1");
    }
}

double step_len_sim(const ExecutionTrace& t1, const ExecutionTrace& t2) {
    std::size_t n1 = t1.steps.size();
    std::size_t n2 = t2.steps.size();
    if (n1 == 0 && n2 == 0) return 1.0;
    return static_cast<double>(std::min(n1, n2)) / static_cast<double>(std::max(n1, n2));
}

double state_sim(const ExecutionTrace& t1, const ExecutionTrace& t2) {
    std::size_t n = std::min(t1.steps.size(), t2.steps.size());
    if (n == 0) return 1.0;
    std::size_t matches = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (t1.steps[i].env == t2.steps[i].env) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(n);
}

double output_sim(const ExecutionTrace& t1, const ExecutionTrace& t2) {
    if (t1.final_output == t2.final_output) return 1.0;
    if (t1.final_output.empty() != t2.final_output.empty()) return 0.5;
    return 0.0;
}

double trace_sim(const ExecutionTrace& t1, const ExecutionTrace& t2,
                 const SimilarityWeights& w) {
    if (!t1.valid || !t2.valid) {
        throw std::invalid_argument("trace_sim requires valid traces");
    }
    double s = w.alpha * step_len_sim(t1, t2) + w.beta * state_sim(t1, t2) +
               w.gamma * output_sim(t1, t2);
    return std::clamp(s, 0.0, 1.0);
}

std::vector<double> pairwise_similarities_serial(const std::vector<ExecutionTrace>& traces,
                                                 const SimilarityWeights& w) {
    std::size_t t = traces.size();
    std::vector<double> out(t < 2 ? 0 : t * (t - 1) / 2);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = i + 1; j < t; ++j) {
            out[idx++] = trace_sim(traces[i], traces[j], w);
        }
    }
    return out;
}

std::vector<double> pairwise_similarities(const std::vector<ExecutionTrace>& traces,
                                          const SimilarityWeights& w) {
    std::size_t t = traces.size();
    if (t < 2) return {};
    std::size_t pairs = t * (t - 1) / 2;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> index(pairs);
    std::size_t idx = 0;
    for (std::uint32_t i = 0; i < t; ++i) {
        for (std::uint32_t j = i + 1; j < t; ++j) index[idx++] = {i, j};
    }
    std::vector<double> out(pairs);
#pragma omp parallel for schedule(static)
    for (std::size_t n = 0; n < pairs; ++n) {
        out[n] = trace_sim(traces[index[n].first], traces[index[n].second], w);
    }
    return out;
}

double percentile_interpolated(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty multiset");
    if (p < 0.0 || p > 100.0) throw std::invalid_argument("percentile p outside [0,100]");
    std::sort(values.begin(), values.end());
    double rank = p / 100.0 * static_cast<double>(values.size() - 1);
    std::size_t lo = static_cast<std::size_t>(rank);
    double frac = rank - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double median_of(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty multiset");
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

namespace {

std::vector<ExecutionTrace> valid_only(const std::vector<ExecutionTrace>& traces) {
    std::vector<ExecutionTrace> out;
    out.reserve(traces.size());
    for (const auto& t : traces) {
        if (t.valid) out.push_back(t);
    }
    return out;
}

}  // namespace

ConsistencyResult consistency_percentile(const std::vector<ExecutionTrace>& traces, double p,
                                         const SimilarityWeights& w) {
    std::vector<ExecutionTrace> valid = valid_only(traces);
    if (valid.size() < 2) {
        throw std::invalid_argument("consistency requires at least two valid traces");
    }
    ConsistencyResult r;
    r.valid_trace_count = valid.size();
    r.p = p;
    r.pairwise = pairwise_similarities(valid, w);
    r.percentile_score = percentile_interpolated(r.pairwise, p);
    double sum = 0.0;
    for (double s : r.pairwise) sum += s;
    r.mean_score = sum / static_cast<double>(r.pairwise.size());
    return r;
}

double consistency_mean(const std::vector<ExecutionTrace>& traces, const SimilarityWeights& w) {
    std::vector<ExecutionTrace> valid = valid_only(traces);
    if (valid.size() < 2) {
        throw std::invalid_argument("consistency requires at least two valid traces");
    }
    std::vector<double> sims = pairwise_similarities(valid, w);
    double sum = 0.0;
    for (double s : sims) sum += s;
    return sum / static_cast<double>(sims.size());
}

}  // namespace ctvp
