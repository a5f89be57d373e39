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

#include "ctvp/baselines.hpp"

#include <array>
#include <cmath>
#include <regex>

namespace ctvp {

StaticScan static_flag(const std::string& source, const BaselinePatterns& patterns) {
    StaticScan scan;
    for (const std::string& needle : patterns.substrings) {
        if (!needle.empty() && source.find(needle) != std::string::npos) {
            scan.matched.push_back(needle);
        }
    }
    if (patterns.hex_constant_rule) {
        static const std::regex hex_re("0x[0-9A-Fa-f]{6,}");
        if (std::regex_search(source, hex_re)) {
            scan.matched.push_back("hex_constant");
        }
    }
    scan.flag = scan.matched.empty() ? 0 : 1;
    return scan;
}

int complexity_flag(const AstMetrics& metrics) {
    double n = static_cast<double>(metrics.total_nodes);
    double c = static_cast<double>(metrics.control_nodes);
    if (metrics.total_nodes > 50 && c / n > 0.3) return 1;
    if (metrics.total_nodes < 20 && metrics.control_nodes > 3) return 1;
    return 0;
}

double shannon_entropy(const std::string& text) {
    if (text.empty()) return 0.0;
    std::array<std::size_t, 256> counts{};
    for (unsigned char c : text) ++counts[c];
    double total = static_cast<double>(text.size());
    double h = 0.0;
    for (std::size_t count : counts) {
        if (count == 0) continue;
        double p = static_cast<double>(count) / total;
        h -= p * std::log2(p);
    }
    return h;
}

int entropy_flag(const std::string& source) {
    double h = shannon_entropy(source);
    return (h < 3.0 || h > 6.0) ? 1 : 0;
}

int weighted_flag(int b_static, int b_complex, int b_entropy) {
    return (b_static + b_complex + b_entropy) >= 2 ? 1 : 0;
}

BaselineResult run_baseline_detectors(const std::string& source, const AstMetrics& metrics,
                                      const BaselinePatterns& patterns) {
    BaselineResult r;
    StaticScan scan = static_flag(source, patterns);
    r.b_static = scan.flag;
    r.matched_patterns = std::move(scan.matched);
    r.b_complex = complexity_flag(metrics);
    r.shannon_entropy_bits = shannon_entropy(source);
    r.b_entropy = entropy_flag(source);
    r.b_weighted = weighted_flag(r.b_static, r.b_complex, r.b_entropy);
    return r;
}

}  // namespace ctvp
