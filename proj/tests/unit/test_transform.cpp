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
#include <set>
#include <string>

#include "ctvp/levenshtein.hpp"
#include "ctvp/rng.hpp"
#include "ctvp/trace.hpp"
#include "ctvp/transform.hpp"

using namespace ctvp;

namespace {

Program must_parse(const std::string& source) {
    ParseResult r = parse_program(source);
    REQUIRE(r.ok());
    return r.value();
}

// Naive recursion straight from the textbook definition; exponential, only
// usable on short strings. This is the oracle the iterative version is
// checked against.
std::size_t lev_naive(std::string_view a, std::string_view b) {
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();
    if (a.front() == b.front()) return lev_naive(a.substr(1), b.substr(1));
    return 1 + std::min({lev_naive(a.substr(1), b), lev_naive(a, b.substr(1)),
                         lev_naive(a.substr(1), b.substr(1))});
}

std::string random_string(Rng& rng, std::size_t max_len) {
    static const char alphabet[] = "abcx ";
    std::size_t len = rng.next_below(max_len + 1);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.next_below(5)];
    return s;
}

const char* kPrograms[] = {
    "x = 1\nprint(x)\n",
    "a = 2\nb = 3\nc = a * b\nprint(c)\n",
    "total = 0\nfor i in range(0, 6):\n    total = total + i\nprint(total)\n",
    "n = 9\nwhile n > 0:\n    n = n - 3\nprint(n)\n",
    "x = 4\nif x % 2 == 0:\n    print(\"even\")\nelse:\n    print(\"odd\")\n",
};

}  // namespace

TEST_CASE("levenshtein base cases and the worked example") {
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("abc", "") == 3);
    CHECK(levenshtein("same", "same") == 0);
    CHECK(levenshtein("kitten", "sitting") == 3);
}

TEST_CASE("levenshtein agrees with the naive recursive oracle") {
    Rng rng(99);
    for (int i = 0; i < 300; ++i) {
        std::string a = random_string(rng, 8);
        std::string b = random_string(rng, 8);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(levenshtein(a, b) == lev_naive(a, b));
    }
}

TEST_CASE("levenshtein metric properties on random strings") {
    Rng rng(1234);
    for (int i = 0; i < 200; ++i) {
        std::string a = random_string(rng, 12);
        std::string b = random_string(rng, 12);
        std::string c = random_string(rng, 12);
        std::size_t ab = levenshtein(a, b);
        CHECK(ab == levenshtein(b, a));
        CHECK((ab == 0) == (a == b));
        CHECK(ab <= levenshtein(a, c) + levenshtein(c, b));
    }
}

TEST_CASE("accept bound follows max(1, floor(delta * len))") {
    CHECK(accept_bound(0.05, 100) == 5);
    CHECK(accept_bound(0.0, 100) == 1);
    CHECK(accept_bound(0.05, 10) == 1);   // floor(0.5) -> floor dominated
    CHECK(accept_bound(0.05, 39) == 1);
    CHECK(accept_bound(0.05, 40) == 2);
}

TEST_CASE("rename_variables relabels uniformly and records the map") {
    Program p = must_parse("x = 1\nprint(x)");
    auto v = rename_variables(p, 5);
    REQUIRE(v.has_value());
    CHECK(v->program.canonical_source() == "v0 = 1\nprint(v0)\n");
    REQUIRE(v->rename_map.size() == 1);
    CHECK(v->rename_map[0].first == "x");
    CHECK(v->rename_map[0].second == "v0");
}

TEST_CASE("rename is deterministic per seed and injective") {
    Program p = must_parse(kPrograms[1]);
    auto a = rename_variables(p, 17);
    auto b = rename_variables(p, 17);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->program.source == b->program.source);

    std::set<std::string> targets;
    for (const auto& [from, to] : a->rename_map) targets.insert(to);
    CHECK(targets.size() == a->rename_map.size());
}

TEST_CASE("rename avoids colliding with existing identifiers") {
    Program p = must_parse("v0 = 1\nx = v0 + 1\nprint(x)\n");
    auto v = rename_variables(p, 3);
    REQUIRE(v.has_value());
    std::set<std::string> fresh;
    for (const auto& [from, to] : v->rename_map) fresh.insert(to);
    CHECK(fresh.count("v0") == 0);  // v0 already taken by the original
}

TEST_CASE("rename of an identifier-free program reports no identifiers") {
    Program p = must_parse("print(1)\npass\n");
    CHECK_FALSE(rename_variables(p, 1).has_value());
}

TEST_CASE("rename preserves interpreter output") {
    for (const char* source : kPrograms) {
        Program p = must_parse(source);
        auto v = rename_variables(p, 11);
        REQUIRE(v.has_value());
        CHECK(interpret(v->program).final_output == interpret(p).final_output);
    }
}

TEST_CASE("inject_dead_code adds fresh unread variables only") {
    for (const char* source : kPrograms) {
        Program p = must_parse(source);
        Variant v = inject_dead_code(p, 23);
        CHECK(v.edit_distance >= 1);
        std::vector<std::string> original = collect_identifiers(p.ast);
        for (const std::string& name : v.injected_vars) {
            CHECK(name.rfind("_dc", 0) == 0);
            CHECK(std::find(original.begin(), original.end(), name) == original.end());
        }
        CHECK(interpret(v.program).final_output == interpret(p).final_output);
    }
}

TEST_CASE("reorder_independent swaps disjoint assignments") {
    Program p = must_parse("x = 1\ny = 2");
    auto v = reorder_independent(p, 9);
    REQUIRE(v.has_value());
    CHECK(v->program.canonical_source() == "y = 2\nx = 1\n");
}

TEST_CASE("reorder refuses dependent adjacent statements") {
    CHECK_FALSE(reorder_independent(must_parse("x = 1\ny = x"), 1).has_value());
    // Print order is observable, so printing statements never move.
    CHECK_FALSE(reorder_independent(must_parse("print(1)\nprint(2)"), 1).has_value());
    CHECK_FALSE(reorder_independent(must_parse("x = 1\nx = 2"), 1).has_value());
}

TEST_CASE("reorder preserves interpreter output when applicable") {
    Program p = must_parse("a = 1\nb = 2\nc = a + b\nprint(c)\n");
    auto v = reorder_independent(p, 3);
    REQUIRE(v.has_value());
    CHECK(interpret(v->program).final_output == interpret(p).final_output);
}

TEST_CASE("reformat keeps the AST modulo appended comments") {
    for (const char* source : kPrograms) {
        Program p = must_parse(source);
        Variant v = reformat(p, 31);
        CHECK(block_equal(p.ast, v.program.ast, /*ignore_comments=*/true));
        CHECK(v.edit_distance >= 1);  // trailing comments are canonical content
        CHECK(interpret(v.program).final_output == interpret(p).final_output);
    }
}

TEST_CASE("comment_noop prefixes the documented no-op line") {
    Program p = must_parse("x = 1\nprint(x)");
    Variant v = comment_noop(p);
    CHECK(v.program.source == "# No-op\n" + p.source);
    CHECK(parse_program(v.program.source).ok());

    Variant v3 = comment_noop(p, 3);
    CHECK(v3.program.source == "# No-op 3\n" + p.source);
}

TEST_CASE("generate_orbit fills k distinct variants deterministically") {
    Program p = must_parse(kPrograms[1]);
    OrbitConfig cfg;
    cfg.k = 8;
    cfg.seed = 77;
    Orbit a = generate_orbit(p, cfg);
    Orbit b = generate_orbit(p, cfg);

    REQUIRE(a.variants.size() == 8);
    REQUIRE(b.variants.size() == 8);
    for (std::size_t i = 0; i < a.variants.size(); ++i) {
        CHECK(a.variants[i].program.source == b.variants[i].program.source);
        CHECK(a.variants[i].kind == b.variants[i].kind);
    }

    std::set<std::string> canon;
    for (const auto& v : a.variants) canon.insert(v.program.canonical_source());
    CHECK(canon.size() == a.variants.size());
}

TEST_CASE("accepted non-fallback variants respect the distance bound") {
    Program p = must_parse(kPrograms[2]);
    OrbitConfig cfg;
    cfg.k = 10;
    cfg.seed = 5;
    cfg.delta_min = 0.05;
    Orbit orbit = generate_orbit(p, cfg);
    std::size_t bound = accept_bound(cfg.delta_min, p.canonical_source().size());
    std::size_t non_fallback = orbit.variants.size() - orbit.fallback_count;
    for (std::size_t i = 0; i < non_fallback; ++i) {
        CHECK(orbit.variants[i].edit_distance >= bound);
        CHECK(orbit.variants[i].edit_distance ==
              levenshtein(p.canonical_source(), orbit.variants[i].program.canonical_source()));
    }
    CHECK(orbit.attempts <= cfg.k * cfg.attempt_multiplier);
}

TEST_CASE("orbit generation falls back to numbered no-ops under a harsh bound") {
    Program p = must_parse(kPrograms[0]);
    OrbitConfig cfg;
    cfg.k = 4;
    cfg.seed = 13;
    cfg.delta_min = 0.9;  // essentially nothing passes
    cfg.failure_threshold = 3;
    Orbit orbit = generate_orbit(p, cfg);
    REQUIRE(orbit.variants.size() == 4);
    CHECK(orbit.fallback_used);
    CHECK(orbit.fallback_count > 0);
    std::set<std::string> canon;
    for (const auto& v : orbit.variants) canon.insert(v.program.canonical_source());
    CHECK(canon.size() == orbit.variants.size());
}

TEST_CASE("semantic preservation holds across whole orbits") {
    OrbitConfig cfg;
    cfg.k = 6;
    cfg.seed = 2718;
    for (const char* source : kPrograms) {
        Program p = must_parse(source);
        std::string expected = interpret(p).final_output;
        Orbit orbit = generate_orbit(p, cfg);
        for (const auto& v : orbit.variants) {
            CAPTURE(v.program.source);
            ExecutionTrace t = interpret(v.program);
            CHECK(t.valid);
            CHECK(t.final_output == expected);
        }
    }
}
