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

#ifndef CTVP_TRANSFORM_HPP
#define CTVP_TRANSFORM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctvp/program.hpp"

namespace ctvp {

enum class TransformKind {
    RenameVariables,
    InjectDeadCode,
    Reformat,
    ReorderIndependent,
    CommentNoOp,
};

const char* transform_kind_name(TransformKind k);

// Sampling weight used by orbit generation. Safer transformations (less
// likely to be rejected) carry more weight; the weight of whichever kind
// produced the most recent rejection is halved (floor 1) when sampling.
double default_safety_weight(TransformKind k);

// One semantics-preserving rewrite of a program.
struct Variant {
    Program program;
    TransformKind kind = TransformKind::CommentNoOp;
    std::size_t edit_distance = 0;  // levenshtein over canonical renderings
    // original name -> new name; empty means identity.
    std::vector<std::pair<std::string, std::string>> rename_map;
    // Fresh variables introduced by dead-code injection.
    std::vector<std::string> injected_vars;
    std::uint64_t seed = 0;
};

struct Orbit {
    Program original;
    std::vector<Variant> variants;
    std::size_t attempts = 0;
    std::size_t failures_at_accept = 0;
    std::size_t fallback_count = 0;  // variants added by the fallback path
    bool fallback_used = false;
};

struct OrbitConfig {
    std::size_t k = 5;
    double delta_min = 0.05;
    std::size_t attempt_multiplier = 10;  // per-slot attempt budget
    std::size_t failure_threshold = 5;    // consecutive failures before fallback
    std::uint64_t seed = 0;
};

// Minimum accepted edit distance: max(1, floor(delta_min * source_len)).
std::size_t accept_bound(double delta_min, std::size_t source_len);

// Uniformly renames every variable through a seeded injective map to fresh
// identifiers (v0, v1, ... skipping collisions). Returns nullopt when the
// program declares no variables.
std::optional<Variant> rename_variables(const Program& p, std::uint64_t seed);

// Inserts 1-3 inert statements at seeded top-level positions: comments or
// assignments of constant expressions to fresh _dc-prefixed variables.
Variant inject_dead_code(const Program& p, std::uint64_t seed);

// Swaps one seeded adjacent pair of independent top-level statements.
// Returns nullopt when no adjacent pair qualifies.
std::optional<Variant> reorder_independent(const Program& p, std::uint64_t seed);

// Re-renders in a seeded non-canonical style and appends inert trailing
// comments (the restyle alone is invisible to the canonical edit distance).
Variant reformat(const Program& p, std::uint64_t seed);

// Fallback edit: prefixes a no-op comment line. index 1 produces exactly
// "# No-op"; larger indices produce "# No-op <index>" so repeated fallbacks
// stay pairwise distinct.
Variant comment_noop(const Program& p, std::size_t index = 1);

Orbit generate_orbit(const Program& p, const OrbitConfig& cfg);

}  // namespace ctvp

#endif  // CTVP_TRANSFORM_HPP
