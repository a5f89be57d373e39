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

#ifndef CTVP_EXPERIMENT_HPP
#define CTVP_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctvp/config.hpp"
#include "ctvp/corpus.hpp"

namespace ctvp {

struct PerProgramRecord {
    std::string program_id;
    std::size_t k = 0;
    std::string label;  // benign | malicious
    std::string decision;
    std::string regime;
    double consistency = 0.0;
    double consistency_mean = 0.0;
    std::optional<double> trusted_score;
    std::optional<double> gap;
    bool flagged = false;
    double arq_overhead = 0.0;  // k+1
    std::size_t orbit_attempts = 0;
    std::size_t orbit_accepted = 0;
    bool fallback_used = false;
    std::size_t valid_traces = 0;
};

struct KAggregates {
    std::size_t k = 0;
    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
    double detection_rate = 0.0;     // TP / (TP + FN), fraction
    double fpr = 0.0;                // FP / (FP + TN), fraction
    double benign_acceptance = 0.0;  // 1 - fpr
    std::size_t variants_accepted = 0;
    std::size_t variants_attempted = 0;
    double transformation_success_rate = 0.0;  // accepted / attempted, fraction
    double avg_valid_traces = 0.0;
    double consistency_mean = 0.0;
    double consistency_median = 0.0;
    double consistency_stddev = 0.0;  // population
    double arq_mean = 0.0, arq_median = 0.0, arq_min = 0.0, arq_max = 0.0;
};

struct ThresholdPoint {
    std::size_t k = 0;
    std::size_t after_programs = 0;
    double t_strict = 0.0;
    double observed_fpr = 0.0;
};

struct ExperimentReport {
    std::uint64_t master_seed = 0;
    std::vector<std::size_t> ks;
    nlohmann::ordered_json config_snapshot;
    std::vector<PerProgramRecord> records;
    std::vector<KAggregates> aggregates;
    std::vector<ThresholdPoint> trajectory;
};

// Full sweep: for each orbit size the corpus is shuffled by a derived seed
// and verified program by program; the strict threshold is PID-adjusted
// after every update_period programs against the running FPR over labeled
// benign programs seen so far. Deterministic given (corpus, settings, seed):
// programs inside one controller window verify in parallel and results are
// keyed to logical order, never completion order.
ExperimentReport run_experiment(const Corpus& corpus, const std::vector<std::size_t>& ks,
                                const RunSettings& settings, std::uint64_t seed);

nlohmann::ordered_json report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);
std::string report_to_markdown(const ExperimentReport& report);

// Writes report.<format> under out_dir ("json", "csv", or "md").
// Returns the written path.
std::string emit_report(const ExperimentReport& report, const std::string& format,
                        const std::string& out_dir);

struct BaselineMethodRow {
    std::string method;
    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
    double detection_rate = 0.0;
    double fpr = 0.0;
    double benign_acceptance = 0.0;
};

struct BaselineEntryRow {
    std::string id;
    std::string label;
    BaselineResult result;
};

struct BaselineTable {
    std::vector<BaselineMethodRow> methods;  // static, complexity, entropy, weighted
    std::vector<BaselineEntryRow> per_entry;
};

BaselineTable run_baselines(const Corpus& corpus, const BaselinePatterns& patterns = {});
std::string baseline_table_markdown(const BaselineTable& table);
nlohmann::ordered_json baseline_table_json(const BaselineTable& table);

}  // namespace ctvp

#endif  // CTVP_EXPERIMENT_HPP
