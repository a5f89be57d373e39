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

#ifndef CTVP_CONFIG_HPP
#define CTVP_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ctvp/analytics.hpp"
#include "ctvp/baselines.hpp"
#include "ctvp/predictor.hpp"
#include "ctvp/protocol.hpp"
#include "ctvp/similarity.hpp"
#include "ctvp/transform.hpp"

namespace ctvp {

// Flat key=value configuration text: one pair per line, '#' comments,
// blank lines ignored.
struct ConfigMap {
    std::map<std::string, std::string> values;

    static ConfigMap parse(const std::string& text);
    static ConfigMap load(const std::string& path);  // throws std::runtime_error

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
};

// Resolved run settings with every tunable at its documented default.
struct RunSettings {
    OrbitConfig orbit;           // k filled in per call site
    SimilarityWeights weights;
    Thresholds thresholds;
    PidConfig pid;
    BaselinePatterns patterns;
    double value_range = 1000.0;
    double flops_per_token = kFlopsPerToken7B;
    std::size_t cache_cap = 10000;
    std::size_t max_steps = kDefaultMaxSteps;
    int subprocess_timeout_ms = 30000;
    int threads = 0;  // 0 = library default

    // Untrusted predictor for benign verification runs:
    // "reference", "noisy", or "external:<command>".
    std::string untrusted = "reference";
    double noisy_epsilon = 0.1;

    // Optional overrides applied to every malicious entry's trigger.
    std::optional<DivergenceMode> backdoor_payload_override;
    std::optional<double> backdoor_rho_override;

    static RunSettings from_config(const ConfigMap& map);
};

// "7B" / "1.5B" presets or a literal number.
double parse_flops_per_token(const std::string& text);

}  // namespace ctvp

#endif  // CTVP_CONFIG_HPP
