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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctvp/analytics.hpp"
#include "ctvp/config.hpp"
#include "ctvp/corpus.hpp"
#include "ctvp/experiment.hpp"
#include "ctvp/subprocess.hpp"

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 2;
constexpr int kExitError = 1;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ctvp::RunSettings load_settings(const std::string& config_path) {
    if (config_path.empty()) return ctvp::RunSettings::from_config(ctvp::ConfigMap{});
    return ctvp::RunSettings::from_config(ctvp::ConfigMap::load(config_path));
}

// CTVP_SEED wins over --seed so scripted sweeps can pin runs externally.
std::uint64_t effective_seed(std::uint64_t cli_seed) {
    const char* env = std::getenv("CTVP_SEED");
    if (env == nullptr || *env == '\0') return cli_seed;
    return std::stoull(env);
}

std::unique_ptr<ctvp::Predictor> make_untrusted(const ctvp::RunSettings& s,
                                                std::uint64_t seed) {
    if (s.untrusted == "reference") {
        return std::make_unique<ctvp::ReferencePredictor>(s.max_steps);
    }
    if (s.untrusted == "noisy") {
        return std::make_unique<ctvp::NoisyPredictor>(s.noisy_epsilon, seed, s.max_steps);
    }
    if (s.untrusted.rfind("external:", 0) == 0) {
        return std::make_unique<ctvp::ExternalSubprocessPredictor>(
            s.untrusted.substr(9), s.subprocess_timeout_ms, s.max_steps);
    }
    throw std::runtime_error("unknown untrusted predictor: " + s.untrusted);
}

nlohmann::ordered_json verdict_to_json(const ctvp::VerdictRecord& v) {
    nlohmann::ordered_json j;
    j["decision"] = ctvp::decision_name(v.decision);
    j["regime"] = ctvp::verdict_regime_name(v.regime);
    j["consistency"] = v.consistency;
    j["consistency_mean"] = v.consistency_mean;
    if (v.trusted_score) {
        j["trusted_score"] = *v.trusted_score;
    } else {
        j["trusted_score"] = nullptr;
    }
    if (v.gap) {
        j["gap"] = *v.gap;
    } else {
        j["gap"] = nullptr;
    }
    j["flagged_for_monitoring"] = v.flagged_for_monitoring;
    j["valid_traces"] = v.valid_trace_count;
    j["orbit_attempts"] = v.orbit_attempts;
    j["orbit_accepted"] = v.orbit_accepted;
    j["orbit_fallback_used"] = v.orbit_fallback_used;
    return j;
}

int cmd_verify(const std::string& program_path, std::size_t orbit_size, std::uint64_t seed,
               const std::string& config_path) {
    ctvp::RunSettings settings = load_settings(config_path);
    ctvp::ParseResult parsed = ctvp::parse_program(read_file(program_path));
    if (!parsed.ok()) {
        std::cerr << program_path << ": " << parsed.error->to_string() << "\n";
        return kExitError;
    }

    ctvp::OrbitConfig orbit = settings.orbit;
    orbit.k = orbit_size;
    orbit.seed = seed;

    ctvp::TraceCache cache(settings.cache_cap);
    ctvp::ReferencePredictor trusted(settings.max_steps);
    auto untrusted = make_untrusted(settings, seed);

    ctvp::VerdictRecord verdict = ctvp::verify(parsed.value(), orbit, settings.thresholds,
                                               *untrusted, trusted, settings.weights, cache);
    std::cout << verdict_to_json(verdict).dump(2) << "\n";
    return verdict.decision == ctvp::Decision::Accept ? kExitAccept : kExitReject;
}

int cmd_experiment(const std::string& corpus_dir, const std::string& orbit_sizes,
                   std::uint64_t seed, const std::string& out_dir, const std::string& format,
                   const std::string& config_path) {
    ctvp::RunSettings settings = load_settings(config_path);
    ctvp::Corpus corpus = ctvp::load_corpus(corpus_dir);
    for (const auto& err : corpus.entry_errors) {
        std::cerr << "corpus entry " << err.id << ": " << err.message << "\n";
    }
    if (corpus.entries.empty()) {
        std::cerr << "no loadable corpus entries\n";
        return kExitError;
    }

    std::vector<std::size_t> ks;
    std::istringstream is(orbit_sizes);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (!item.empty()) ks.push_back(std::stoull(item));
    }

    ctvp::ExperimentReport report = ctvp::run_experiment(corpus, ks, settings, seed);
    std::string path = ctvp::emit_report(report, format, out_dir);
    std::cerr << "wrote " << path << "\n";
    return 0;
}

int cmd_baseline(const std::string& corpus_dir, const std::string& config_path,
                 const std::string& out_path) {
    ctvp::RunSettings settings = load_settings(config_path);
    ctvp::Corpus corpus = ctvp::load_corpus(corpus_dir);
    for (const auto& err : corpus.entry_errors) {
        std::cerr << "corpus entry " << err.id << ": " << err.message << "\n";
    }
    ctvp::BaselineTable table = ctvp::run_baselines(corpus, settings.patterns);
    std::cout << ctvp::baseline_table_markdown(table);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << ctvp::baseline_table_json(table).dump(2) << "\n";
        std::cerr << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_estimate(const std::string& program_path, double value_range, std::size_t k,
                 const std::string& config_path) {
    ctvp::RunSettings settings = load_settings(config_path);
    ctvp::ParseResult parsed = ctvp::parse_program(read_file(program_path));
    if (!parsed.ok()) {
        std::cerr << program_path << ": " << parsed.error->to_string() << "\n";
        return kExitError;
    }
    if (value_range <= 0.0) value_range = settings.value_range;

    ctvp::AstMetrics metrics = ctvp::ast_metrics(parsed.value().ast);
    ctvp::SpaceEstimate space = ctvp::estimate_spaces(metrics, value_range);
    ctvp::TrialsEstimate trials = space.degenerate
                                      ? ctvp::expected_trials(1.0, 1.0, k)
                                      : ctvp::expected_trials_log(space.ln_m, space.ln_n, k);

    nlohmann::ordered_json j;
    j["n_id"] = space.n_id;
    j["n_blocks"] = space.n_blk;
    j["executable_statements"] = space.l_steps;
    j["value_range"] = space.value_range;
    j["trace_space_m"] = space.m;
    j["program_space_n"] = space.n_space;
    j["entropy_bits"] = space.entropy_bits;
    j["capped"] = space.capped;
    j["degenerate"] = space.degenerate;
    j["k"] = k;
    j["expected_trials"] = trials.expected_trials;
    j["prob_consistent_given_backdoor"] = trials.prob_consistent;
    j["invalid_ratio"] = trials.invalid_ratio;
    j["arq_overhead"] = ctvp::arq_flops(k);
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-trace verification of predicted program behavior"};
    app.require_subcommand(1);

    std::string program_path;
    std::string config_path;
    std::string corpus_dir;
    std::string out_dir = "ctvp-out";
    std::string out_path;
    std::string format = "json";
    std::string orbit_sizes = "3,5,10,20";
    std::size_t orbit_size = 5;
    std::uint64_t seed = 1;
    double value_range = 0.0;
    std::size_t k_estimate = 5;

    CLI::App* verify = app.add_subcommand("verify", "Verify one program");
    verify->add_option("--program", program_path, "Program file (.mpy)")->required();
    verify->add_option("--orbit-size", orbit_size, "Orbit size k");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--config", config_path, "Flat key=value config file");

    CLI::App* experiment = app.add_subcommand("experiment", "Run the corpus sweep");
    experiment->add_option("--corpus", corpus_dir, "Corpus directory")->required();
    experiment->add_option("--orbit-sizes", orbit_sizes, "Comma-separated orbit sizes");
    experiment->add_option("--seed", seed, "RNG seed");
    experiment->add_option("--out", out_dir, "Output directory");
    experiment->add_option("--format", format, "Report format: json|csv|md")
        ->check(CLI::IsMember({"json", "csv", "md"}));
    experiment->add_option("--config", config_path, "Flat key=value config file");

    CLI::App* baseline = app.add_subcommand("baseline", "Run static baselines on a corpus");
    baseline->add_option("--corpus", corpus_dir, "Corpus directory")->required();
    baseline->add_option("--config", config_path, "Flat key=value config file");
    baseline->add_option("--out", out_path, "Also write JSON to this path");

    CLI::App* estimate = app.add_subcommand("estimate", "Space and trial estimates");
    estimate->add_option("--program", program_path, "Program file (.mpy)")->required();
    estimate->add_option("--value-range", value_range, "Per-variable value range R");
    estimate->add_option("--k", k_estimate, "Orbit size k");
    estimate->add_option("--config", config_path, "Flat key=value config file");

    CLI11_PARSE(app, argc, argv);

    try {
        seed = effective_seed(seed);
        if (verify->parsed()) {
            return cmd_verify(program_path, orbit_size, seed, config_path);
        }
        if (experiment->parsed()) {
            return cmd_experiment(corpus_dir, orbit_sizes, seed, out_dir, format, config_path);
        }
        if (baseline->parsed()) {
            return cmd_baseline(corpus_dir, config_path, out_path);
        }
        if (estimate->parsed()) {
            return cmd_estimate(program_path, value_range, k_estimate, config_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
