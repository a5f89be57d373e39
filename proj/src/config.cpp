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

#include "ctvp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ctvp {

ConfigMap ConfigMap::parse(const std::string& text) {
    ConfigMap map;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos || eq <= begin) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key=value");
        }
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            std::size_t e = s.find_last_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            return s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
        }
        map.values[key] = value;
    }
    return map;
}

ConfigMap ConfigMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "' is not a number: " + it->second);
    }
}

std::uint64_t ConfigMap::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "' is not an integer: " + it->second);
    }
}

double parse_flops_per_token(const std::string& text) {
    if (text == "7B") return kFlopsPerToken7B;
    if (text == "1.5B") return kFlopsPerToken1_5B;
    try {
        return std::stod(text);
    } catch (const std::exception&) {
        throw std::runtime_error("flops_per_token must be '7B', '1.5B', or a number");
    }
}

RunSettings RunSettings::from_config(const ConfigMap& map) {
    RunSettings s;
    s.orbit.delta_min = map.get_double("delta_min", s.orbit.delta_min);
    s.orbit.attempt_multiplier =
        static_cast<std::size_t>(map.get_u64("m_max", s.orbit.attempt_multiplier));
    s.orbit.failure_threshold =
        static_cast<std::size_t>(map.get_u64("r_max", s.orbit.failure_threshold));

    s.weights.alpha = map.get_double("alpha", s.weights.alpha);
    s.weights.beta = map.get_double("beta", s.weights.beta);
    s.weights.gamma = map.get_double("gamma", s.weights.gamma);
    s.weights.validate();

    s.thresholds.t_strict = map.get_double("t_strict", s.thresholds.t_strict);
    s.thresholds.t_soft = map.get_double("t_soft", s.thresholds.t_soft);
    s.thresholds.t_trust = map.get_double("t_trust", s.thresholds.t_trust);
    s.thresholds.gap_delta = map.get_double("gap_delta", s.thresholds.gap_delta);
    s.thresholds.percentile_p = map.get_double("percentile_p", s.thresholds.percentile_p);
    s.thresholds.validate();

    s.pid.kp = map.get_double("pid_kp", s.pid.kp);
    s.pid.ki = map.get_double("pid_ki", s.pid.ki);
    s.pid.kd = map.get_double("pid_kd", s.pid.kd);
    s.pid.fpr_target = map.get_double("pid_fpr_target", s.pid.fpr_target);
    s.pid.update_period =
        static_cast<std::size_t>(map.get_u64("pid_period", s.pid.update_period));

    s.value_range = map.get_double("value_range", s.value_range);
    if (map.has("flops_per_token")) {
        s.flops_per_token = parse_flops_per_token(map.get_string("flops_per_token", ""));
    }
    s.cache_cap = static_cast<std::size_t>(map.get_u64("cache_cap", s.cache_cap));
    s.max_steps = static_cast<std::size_t>(map.get_u64("max_steps", s.max_steps));
    s.subprocess_timeout_ms = static_cast<int>(
        map.get_u64("timeout_ms", static_cast<std::uint64_t>(s.subprocess_timeout_ms)));
    s.threads = static_cast<int>(map.get_u64("threads", 0));

    s.untrusted = map.get_string("untrusted", s.untrusted);
    s.noisy_epsilon = map.get_double("noisy_epsilon", s.noisy_epsilon);

    if (map.has("backdoor_payload")) {
        s.backdoor_payload_override =
            divergence_mode_from_name(map.get_string("backdoor_payload", ""));
    }
    if (map.has("backdoor_rho")) {
        s.backdoor_rho_override = map.get_double("backdoor_rho", 0.5);
    }

    if (map.has("baseline.patterns")) {
        s.patterns.substrings.clear();
        std::istringstream is(map.get_string("baseline.patterns", ""));
        std::string item;
        while (std::getline(is, item, ',')) {
            if (!item.empty()) s.patterns.substrings.push_back(item);
        }
    }
    return s;
}

}  // namespace ctvp
