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

#ifndef CTVP_BASELINES_HPP
#define CTVP_BASELINES_HPP

#include <string>
#include <vector>

#include "ctvp/metrics.hpp"

namespace ctvp {

// Static pattern set; overridable via configuration. Substrings are
// case-sensitive; the hex rule flags constants of the form 0x followed by
// six or more hex digits.
struct BaselinePatterns {
    std::vector<std::string> substrings = {"eval(", "exec(", "os.system", "BACKDOOR",
                                           "__import__"};
    bool hex_constant_rule = true;
};

struct StaticScan {
    int flag = 0;
    std::vector<std::string> matched;  // pattern names that hit
};

StaticScan static_flag(const std::string& source, const BaselinePatterns& patterns = {});

// 1 iff (n > 50 and c/n > 0.3) or (n < 20 and c > 3).
int complexity_flag(const AstMetrics& metrics);

// Shannon entropy in bits over the byte histogram; empty text scores 0.
double shannon_entropy(const std::string& text);

// 1 iff H < 3.0 or H > 6.0.
int entropy_flag(const std::string& source);

// 1 iff at least two of the three sub-flags are set.
int weighted_flag(int b_static, int b_complex, int b_entropy);

struct BaselineResult {
    int b_static = 0;
    int b_complex = 0;
    int b_entropy = 0;
    int b_weighted = 0;
    double shannon_entropy_bits = 0.0;
    std::vector<std::string> matched_patterns;
};

BaselineResult run_baseline_detectors(const std::string& source, const AstMetrics& metrics,
                                      const BaselinePatterns& patterns = {});

}  // namespace ctvp

#endif  // CTVP_BASELINES_HPP
