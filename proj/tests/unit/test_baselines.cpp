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

#include <algorithm>
#include <string>

#include "ctvp/baselines.hpp"
#include "ctvp/rng.hpp"

using namespace ctvp;

TEST_CASE("static patterns flag the documented tokens") {
    CHECK(static_flag("x = eval(payload)").flag == 1);
    CHECK(static_flag("# BACKDOOR v2").flag == 1);
    CHECK(static_flag("import os\nos.system(cmd)").flag == 1);
    CHECK(static_flag("key = 0xDEADBEEF12").flag == 1);
    CHECK(static_flag("x = 1\nprint(x)").flag == 0);
    CHECK(static_flag("x = 0x12AB").flag == 0);  // below six hex digits

    StaticScan scan = static_flag("eval( exec( BACKDOOR");
    CHECK(scan.matched.size() == 3);
}

TEST_CASE("static flag is monotone under source extension") {
    Rng rng(66);
    const std::string suffixes[] = {"\nprint(1)", "\n# appended", "\nx = 2", " trailing"};
    std::string base = "a = eval(data)";
    StaticScan before = static_flag(base);
    for (const std::string& suffix : suffixes) {
        StaticScan after = static_flag(base + suffix);
        CHECK(after.flag >= before.flag);
        for (const std::string& match : before.matched) {
            CHECK(std::find(after.matched.begin(), after.matched.end(), match) !=
                  after.matched.end());
        }
    }
}

TEST_CASE("pattern set is configurable") {
    BaselinePatterns custom;
    custom.substrings = {"launch_missiles"};
    custom.hex_constant_rule = false;
    CHECK(static_flag("eval(", custom).flag == 0);
    CHECK(static_flag("launch_missiles()", custom).flag == 1);
    CHECK(static_flag("k = 0xAABBCCDD11", custom).flag == 0);
}

TEST_CASE("complexity heuristic disjuncts") {
    AstMetrics m;
    m.total_nodes = 60;
    m.control_nodes = 20;
    CHECK(complexity_flag(m) == 1);  // ratio 0.333 > 0.3

    m.total_nodes = 15;
    m.control_nodes = 4;
    CHECK(complexity_flag(m) == 1);  // small but branchy

    m.total_nodes = 30;
    m.control_nodes = 5;
    CHECK(complexity_flag(m) == 0);

    m.total_nodes = 60;
    m.control_nodes = 18;
    CHECK(complexity_flag(m) == 0);  // exactly 0.3 is not > 0.3
}

TEST_CASE("shannon entropy closed-form cases") {
    CHECK(shannon_entropy("aa") == 0.0);
    CHECK(shannon_entropy("abcd") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(shannon_entropy("") == 0.0);
    CHECK(shannon_entropy("aabb") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy flag boundary behavior") {
    CHECK(entropy_flag("aa") == 1);    // H = 0 < 3
    CHECK(entropy_flag("abcd") == 1);  // H = 2 < 3
    // 16 distinct symbols evenly: H = 4, inside (3, 6).
    CHECK(entropy_flag("0123456789abcdef") == 0);
    CHECK(entropy_flag("") == 1);  // H = 0 by convention
}

TEST_CASE("entropy is invariant under character permutation") {
    Rng rng(17);
    std::string s = "def compute(x):\n    return x * 41 + 7\n";
    double h = shannon_entropy(s);
    for (int iter = 0; iter < 10; ++iter) {
        for (std::size_t i = s.size(); i > 1; --i) {
            std::swap(s[i - 1], s[rng.next_below(i)]);
        }
        CHECK(shannon_entropy(s) == doctest::Approx(h).epsilon(1e-12));
    }
}

TEST_CASE("weighted flag matches the majority indicator on all eight cases") {
    for (int b1 = 0; b1 <= 1; ++b1) {
        for (int b2 = 0; b2 <= 1; ++b2) {
            for (int b3 = 0; b3 <= 1; ++b3) {
                int expected = (b1 + b2 + b3) >= 2 ? 1 : 0;
                CHECK(weighted_flag(b1, b2, b3) == expected);
            }
        }
    }
}

TEST_CASE("combined detector wires the sub-flags together") {
    AstMetrics m;
    m.total_nodes = 15;
    m.control_nodes = 4;  // complexity fires
    BaselineResult r = run_baseline_detectors("x = eval(q)", m);
    CHECK(r.b_static == 1);
    CHECK(r.b_complex == 1);
    CHECK(r.b_weighted == 1);
    CHECK(r.b_weighted == weighted_flag(r.b_static, r.b_complex, r.b_entropy));
    CHECK(r.matched_patterns.size() == 1);
}
