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

#include "ctvp/experiment.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "ctvp/analytics.hpp"
#include "ctvp/rng.hpp"
#include "ctvp/subprocess.hpp"

namespace ctvp {

namespace {

std::unique_ptr<Predictor> make_benign_predictor(const RunSettings& settings,
                                                 std::uint64_t seed) {
    if (settings.untrusted == "reference") {
        return std::make_unique<ReferencePredictor>(settings.max_steps);
    }
    if (settings.untrusted == "noisy") {
        return std::make_unique<NoisyPredictor>(settings.noisy_epsilon, seed,
                                                settings.max_steps);
    }
    if (settings.untrusted.rfind("external:", 0) == 0) {
        return std::make_unique<ExternalSubprocessPredictor>(
            settings.untrusted.substr(9), settings.subprocess_timeout_ms, settings.max_steps);
    }
    throw std::runtime_error("unknown untrusted predictor: " + settings.untrusted);
}

TriggerSpec effective_trigger(const TriggerSpec& manifest_trigger,
                              const RunSettings& settings) {
    TriggerSpec spec = manifest_trigger;
    if (settings.backdoor_payload_override) spec.payload = *settings.backdoor_payload_override;
    if (settings.backdoor_rho_override) spec.survival_prob = *settings.backdoor_rho_override;
    return spec;
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double stddev_population(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mu = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

nlohmann::ordered_json settings_snapshot(const RunSettings& s) {
    nlohmann::ordered_json j;
    j["delta_min"] = s.orbit.delta_min;
    j["m_max"] = s.orbit.attempt_multiplier;
    j["r_max"] = s.orbit.failure_threshold;
    j["alpha"] = s.weights.alpha;
    j["beta"] = s.weights.beta;
    j["gamma"] = s.weights.gamma;
    j["percentile_p"] = s.thresholds.percentile_p;
    j["t_strict"] = s.thresholds.t_strict;
    j["t_soft"] = s.thresholds.t_soft;
    j["t_trust"] = s.thresholds.t_trust;
    j["gap_delta"] = s.thresholds.gap_delta;
    j["pid_kp"] = s.pid.kp;
    j["pid_ki"] = s.pid.ki;
    j["pid_kd"] = s.pid.kd;
    j["pid_fpr_target"] = s.pid.fpr_target;
    j["pid_period"] = s.pid.update_period;
    j["value_range"] = s.value_range;
    j["flops_per_token"] = s.flops_per_token;
    j["cache_cap"] = s.cache_cap;
    j["max_steps"] = s.max_steps;
    j["untrusted"] = s.untrusted;
    j["noisy_epsilon"] = s.noisy_epsilon;
    if (s.backdoor_payload_override) {
        j["backdoor_payload"] = divergence_mode_name(*s.backdoor_payload_override);
    }
    if (s.backdoor_rho_override) j["backdoor_rho"] = *s.backdoor_rho_override;
    return j;
}

}  // namespace

ExperimentReport run_experiment(const Corpus& corpus, const std::vector<std::size_t>& ks,
                                const RunSettings& settings, std::uint64_t seed) {
    if (ks.empty()) throw std::invalid_argument("at least one orbit size is required");
    if (corpus.entries.empty()) throw std::invalid_argument("corpus is empty");

    ExperimentReport report;
    report.master_seed = seed;
    report.ks = ks;
    report.config_snapshot = settings_snapshot(settings);
    report.records.resize(ks.size() * corpus.entries.size());

#ifdef _OPENMP
    int threads = settings.threads > 0 ? settings.threads : omp_get_max_threads();
#endif

    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const std::size_t k = ks[ki];
        const std::uint64_t seed_k = derive_seed(seed, 0x6B00 + k);
        Rng shuffle_rng(derive_seed(seed_k, 0x0DDE));
        std::vector<std::size_t> order = shuffle_rng.shuffled_indices(corpus.entries.size());

        TraceCache cache(settings.cache_cap);  // fresh per sweep
        ReferencePredictor trusted(settings.max_steps);

        double theta = settings.thresholds.t_strict;
        PidState pid_state;
        std::size_t benign_seen = 0;
        std::size_t false_positives = 0;

        const std::size_t total = corpus.entries.size();
        const std::size_t period = std::max<std::size_t>(1, settings.pid.update_period);

        for (std::size_t batch_start = 0; batch_start < total; batch_start += period) {
            const std::size_t batch_end = std::min(total, batch_start + period);
            Thresholds th = settings.thresholds;
            th.t_strict = theta;

            const auto batch_count = static_cast<std::ptrdiff_t>(batch_end - batch_start);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
            for (std::ptrdiff_t off = 0; off < batch_count; ++off) {
                const std::size_t pos = batch_start + static_cast<std::size_t>(off);
                const CorpusEntry& entry = corpus.entries[order[pos]];

                std::unique_ptr<Predictor> untrusted;
                if (entry.malicious) {
                    untrusted = std::make_unique<BackdooredSimPredictor>(
                        effective_trigger(*entry.trigger, settings),
                        derive_seed(seed_k, 0xADD0 + pos), settings.max_steps);
                } else {
                    untrusted = make_benign_predictor(settings, derive_seed(seed_k, 0xBE0 + pos));
                }

                OrbitConfig orbit_cfg = settings.orbit;
                orbit_cfg.k = k;
                orbit_cfg.seed = derive_seed(seed_k, 0x0B17 + pos);

                VerdictRecord verdict = verify(entry.program, orbit_cfg, th, *untrusted,
                                               trusted, settings.weights, cache);

                PerProgramRecord rec;
                rec.program_id = entry.id;
                rec.k = k;
                rec.label = entry.malicious ? "malicious" : "benign";
                rec.decision = decision_name(verdict.decision);
                rec.regime = verdict_regime_name(verdict.regime);
                rec.consistency = verdict.consistency;
                rec.consistency_mean = verdict.consistency_mean;
                rec.trusted_score = verdict.trusted_score;
                rec.gap = verdict.gap;
                rec.flagged = verdict.flagged_for_monitoring;
                rec.arq_overhead = arq_flops(k);
                rec.orbit_attempts = verdict.orbit_attempts;
                rec.orbit_accepted = verdict.orbit_accepted;
                rec.fallback_used = verdict.orbit_fallback_used;
                rec.valid_traces = verdict.valid_trace_count;
                report.records[ki * total + pos] = std::move(rec);
            }

            // Controller barrier: cumulative FPR over benign programs seen
            // so far, in shuffled order.
            for (std::size_t pos = batch_start; pos < batch_end; ++pos) {
                const PerProgramRecord& rec = report.records[ki * total + pos];
                if (rec.label == "benign") {
                    ++benign_seen;
                    if (rec.decision == "REJECT") ++false_positives;
                }
            }
            if (benign_seen > 0) {
                double fpr = static_cast<double>(false_positives) /
                             static_cast<double>(benign_seen);
                auto [next_theta, next_state] =
                    pid_update(settings.pid, pid_state, theta, fpr);
                theta = next_theta;
                pid_state = next_state;
                report.trajectory.push_back({k, batch_end, theta, fpr});
            }
        }

        // Per-k aggregates.
        KAggregates agg;
        agg.k = k;
        std::vector<double> consistencies;
        std::vector<double> arqs;
        double valid_sum = 0.0;
        for (std::size_t pos = 0; pos < total; ++pos) {
            const PerProgramRecord& rec = report.records[ki * total + pos];
            bool rejected = rec.decision == "REJECT";
            if (rec.label == "malicious") {
                rejected ? ++agg.tp : ++agg.fn;
            } else {
                rejected ? ++agg.fp : ++agg.tn;
            }
            agg.variants_accepted += rec.orbit_accepted;
            agg.variants_attempted += rec.orbit_attempts;
            consistencies.push_back(rec.consistency);
            arqs.push_back(rec.arq_overhead);
            valid_sum += static_cast<double>(rec.valid_traces);
        }
        agg.detection_rate =
            agg.tp + agg.fn == 0
                ? 0.0
                : static_cast<double>(agg.tp) / static_cast<double>(agg.tp + agg.fn);
        agg.fpr = agg.fp + agg.tn == 0
                      ? 0.0
                      : static_cast<double>(agg.fp) / static_cast<double>(agg.fp + agg.tn);
        agg.benign_acceptance = 1.0 - agg.fpr;
        agg.transformation_success_rate =
            agg.variants_attempted == 0
                ? 0.0
                : static_cast<double>(agg.variants_accepted) /
                      static_cast<double>(agg.variants_attempted);
        agg.avg_valid_traces = valid_sum / static_cast<double>(total);
        agg.consistency_mean = mean_of(consistencies);
        agg.consistency_median = median_of(consistencies);
        agg.consistency_stddev = stddev_population(consistencies);
        agg.arq_mean = mean_of(arqs);
        agg.arq_median = median_of(arqs);
        agg.arq_min = *std::min_element(arqs.begin(), arqs.end());
        agg.arq_max = *std::max_element(arqs.begin(), arqs.end());
        report.aggregates.push_back(agg);
    }
    return report;
}

namespace {

nlohmann::ordered_json record_to_json(const PerProgramRecord& r) {
    nlohmann::ordered_json j;
    j["program_id"] = r.program_id;
    j["k"] = r.k;
    j["label"] = r.label;
    j["decision"] = r.decision;
    j["regime"] = r.regime;
    j["consistency"] = r.consistency;
    j["consistency_mean"] = r.consistency_mean;
    if (r.trusted_score) {
        j["trusted_score"] = *r.trusted_score;
    } else {
        j["trusted_score"] = nullptr;
    }
    if (r.gap) {
        j["gap"] = *r.gap;
    } else {
        j["gap"] = nullptr;
    }
    j["flagged"] = r.flagged;
    j["arq_overhead"] = r.arq_overhead;
    j["orbit_attempts"] = r.orbit_attempts;
    j["orbit_accepted"] = r.orbit_accepted;
    j["fallback_used"] = r.fallback_used;
    j["valid_traces"] = r.valid_traces;
    return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["master_seed"] = report.master_seed;
    j["ks"] = report.ks;
    j["config"] = report.config_snapshot;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : report.records) j["records"].push_back(record_to_json(r));
    j["aggregates"] = nlohmann::ordered_json::array();
    for (const auto& a : report.aggregates) {
        nlohmann::ordered_json row;
        row["k"] = a.k;
        row["tp"] = a.tp;
        row["fn"] = a.fn;
        row["fp"] = a.fp;
        row["tn"] = a.tn;
        row["detection_rate"] = a.detection_rate;
        row["fpr"] = a.fpr;
        row["benign_acceptance"] = a.benign_acceptance;
        row["variants_accepted"] = a.variants_accepted;
        row["variants_attempted"] = a.variants_attempted;
        row["transformation_success_rate"] = a.transformation_success_rate;
        row["avg_valid_traces"] = a.avg_valid_traces;
        row["consistency_mean"] = a.consistency_mean;
        row["consistency_median"] = a.consistency_median;
        row["consistency_stddev"] = a.consistency_stddev;
        row["arq_mean"] = a.arq_mean;
        row["arq_median"] = a.arq_median;
        row["arq_min"] = a.arq_min;
        row["arq_max"] = a.arq_max;
        j["aggregates"].push_back(row);
    }
    j["threshold_trajectory"] = nlohmann::ordered_json::array();
    for (const auto& t : report.trajectory) {
        nlohmann::ordered_json row;
        row["k"] = t.k;
        row["after_programs"] = t.after_programs;
        row["t_strict"] = t.t_strict;
        row["observed_fpr"] = t.observed_fpr;
        j["threshold_trajectory"].push_back(row);
    }
    return j;
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "program_id,k,label,decision,regime,consistency,consistency_mean,trusted_score,gap,"
          "flagged,arq_overhead,orbit_attempts,orbit_accepted,fallback_used,valid_traces\n";
    for (const auto& r : report.records) {
        os << r.program_id << ',' << r.k << ',' << r.label << ',' << r.decision << ','
           << r.regime << ',' << r.consistency << ',' << r.consistency_mean << ',';
        if (r.trusted_score) os << *r.trusted_score;
        os << ',';
        if (r.gap) os << *r.gap;
        os << ',' << (r.flagged ? 1 : 0) << ',' << r.arq_overhead << ',' << r.orbit_attempts
           << ',' << r.orbit_accepted << ',' << (r.fallback_used ? 1 : 0) << ','
           << r.valid_traces << "\n";
    }
    return os.str();
}

namespace {

std::string pct(double fraction) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << fraction * 100.0;
    return os.str();
}

std::string num(double v, int precision = 2) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(precision);
    os << v;
    return os.str();
}

}  // namespace

std::string report_to_markdown(const ExperimentReport& report) {
    std::ostringstream os;
    os << "# Experiment report\n\n";
    os << "Seed: " << report.master_seed << "\n\n";

    os << "## Detection by orbit size\n\n";
    os << "| Orbit Size | Transformation Success Rate (%) | Generated Variants | "
          "Avg. Traces / Program | Malicious Detection | Benign False Positives | "
          "Detection Rate (%) | FPR (%) |\n";
    os << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& a : report.aggregates) {
        os << "| " << a.k << " | " << pct(a.transformation_success_rate) << " | "
           << a.variants_accepted << " / " << a.variants_attempted << " | "
           << num(a.avg_valid_traces) << " | " << a.tp << " / " << (a.tp + a.fn) << " | "
           << a.fp << " / " << (a.fp + a.tn) << " | " << pct(a.detection_rate) << " | "
           << pct(a.fpr) << " |\n";
    }

    os << "\n## ARQ ratio statistics by orbit size\n\n";
    os << "| Orbit Size | Mean | Median | Min | Max |\n";
    os << "|---|---|---|---|---|\n";
    for (const auto& a : report.aggregates) {
        os << "| " << a.k << " | " << num(a.arq_mean) << " | " << num(a.arq_median) << " | "
           << num(a.arq_min) << " | " << num(a.arq_max) << " |\n";
    }

    os << "\n## Consistency score statistics by orbit size\n\n";
    os << "| Orbit Size | Mean | Median | Standard Deviation |\n";
    os << "|---|---|---|---|\n";
    for (const auto& a : report.aggregates) {
        os << "| " << a.k << " | " << num(a.consistency_mean, 3) << " | "
           << num(a.consistency_median, 3) << " | " << num(a.consistency_stddev, 3) << " |\n";
    }

    os << "\n## Threshold trajectory\n\n";
    os << "| Orbit Size | After Programs | T_strict | Observed FPR |\n";
    os << "|---|---|---|---|\n";
    for (const auto& t : report.trajectory) {
        os << "| " << t.k << " | " << t.after_programs << " | " << num(t.t_strict, 4) << " | "
           << num(t.observed_fpr, 4) << " |\n";
    }
    return os.str();
}

std::string emit_report(const ExperimentReport& report, const std::string& format,
                        const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::string path;
    std::string payload;
    if (format == "json") {
        path = (std::filesystem::path(out_dir) / "report.json").string();
        payload = report_to_json(report).dump(2);
        payload += "\n";
    } else if (format == "csv") {
        path = (std::filesystem::path(out_dir) / "report.csv").string();
        payload = report_to_csv(report);
    } else if (format == "md") {
        path = (std::filesystem::path(out_dir) / "report.md").string();
        payload = report_to_markdown(report);
    } else {
        throw std::invalid_argument("unknown report format: " + format);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << payload;
    return path;
}

BaselineTable run_baselines(const Corpus& corpus, const BaselinePatterns& patterns) {
    BaselineTable table;
    for (const auto& entry : corpus.entries) {
        BaselineEntryRow row;
        row.id = entry.id;
        row.label = entry.malicious ? "malicious" : "benign";
        row.result = run_baseline_detectors(entry.program.source,
                                            ast_metrics(entry.program.ast), patterns);
        table.per_entry.push_back(std::move(row));
    }

    auto method_row = [&](const std::string& name, auto flag_of) {
        BaselineMethodRow row;
        row.method = name;
        for (const auto& e : table.per_entry) {
            int flagged = flag_of(e.result);
            if (e.label == "malicious") {
                flagged ? ++row.tp : ++row.fn;
            } else {
                flagged ? ++row.fp : ++row.tn;
            }
        }
        row.detection_rate =
            row.tp + row.fn == 0
                ? 0.0
                : static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fn);
        row.fpr = row.fp + row.tn == 0
                      ? 0.0
                      : static_cast<double>(row.fp) / static_cast<double>(row.fp + row.tn);
        row.benign_acceptance = 1.0 - row.fpr;
        return row;
    };

    table.methods.push_back(
        method_row("Static Analysis", [](const BaselineResult& r) { return r.b_static; }));
    table.methods.push_back(
        method_row("Complexity", [](const BaselineResult& r) { return r.b_complex; }));
    table.methods.push_back(
        method_row("Entropy", [](const BaselineResult& r) { return r.b_entropy; }));
    table.methods.push_back(
        method_row("Weighted", [](const BaselineResult& r) { return r.b_weighted; }));
    return table;
}

std::string baseline_table_markdown(const BaselineTable& table) {
    std::ostringstream os;
    os << "| Method | Detection Rate (%) | False Positive Rate (%) | Benign Acceptance (%) |\n";
    os << "|---|---|---|---|\n";
    for (const auto& row : table.methods) {
        os << "| " << row.method << " | " << pct(row.detection_rate) << " | " << pct(row.fpr)
           << " | " << pct(row.benign_acceptance) << " |\n";
    }
    return os.str();
}

nlohmann::ordered_json baseline_table_json(const BaselineTable& table) {
    nlohmann::ordered_json j;
    j["methods"] = nlohmann::ordered_json::array();
    for (const auto& row : table.methods) {
        nlohmann::ordered_json m;
        m["method"] = row.method;
        m["tp"] = row.tp;
        m["fn"] = row.fn;
        m["fp"] = row.fp;
        m["tn"] = row.tn;
        m["detection_rate"] = row.detection_rate;
        m["fpr"] = row.fpr;
        m["benign_acceptance"] = row.benign_acceptance;
        j["methods"].push_back(m);
    }
    j["per_entry"] = nlohmann::ordered_json::array();
    for (const auto& e : table.per_entry) {
        nlohmann::ordered_json row;
        row["id"] = e.id;
        row["label"] = e.label;
        row["b_static"] = e.result.b_static;
        row["b_complex"] = e.result.b_complex;
        row["b_entropy"] = e.result.b_entropy;
        row["b_weighted"] = e.result.b_weighted;
        row["shannon_entropy_bits"] = e.result.shannon_entropy_bits;
        row["matched_patterns"] = e.result.matched_patterns;
        j["per_entry"].push_back(row);
    }
    return j;
}

}  // namespace ctvp
