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

#include "ctvp/transform.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "ctvp/levenshtein.hpp"
#include "ctvp/rng.hpp"

namespace ctvp {

const char* transform_kind_name(TransformKind k) {
    switch (k) {
        case TransformKind::RenameVariables: return "rename_variables";
        case TransformKind::InjectDeadCode: return "inject_dead_code";
        case TransformKind::Reformat: return "reformat";
        case TransformKind::ReorderIndependent: return "reorder_independent";
        case TransformKind::CommentNoOp: return "comment_noop";
    }
    return "unknown";
}

double default_safety_weight(TransformKind k) {
    switch (k) {
        case TransformKind::Reformat: return 3.0;
        case TransformKind::RenameVariables: return 3.0;
        case TransformKind::InjectDeadCode: return 2.0;
        case TransformKind::ReorderIndependent: return 1.0;
        case TransformKind::CommentNoOp: return 1.0;
    }
    return 1.0;
}

std::size_t accept_bound(double delta_min, std::size_t source_len) {
    auto scaled = static_cast<std::size_t>(delta_min * static_cast<double>(source_len));
    return std::max<std::size_t>(1, scaled);
}

namespace {

std::size_t canonical_distance(const Program& original, const Program& variant) {
    return levenshtein(original.canonical_source(), variant.canonical_source());
}

std::string fresh_name(const std::string& stem, std::size_t index,
                       const std::set<std::string>& taken) {
    std::string name = stem + std::to_string(index);
    while (taken.count(name)) {
        ++index;
        name = stem + std::to_string(index);
    }
    return name;
}

std::string hex_token(Rng& rng) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (int i = 0; i < 6; ++i) out += digits[rng.next_below(16)];
    return out;
}

}  // namespace

std::optional<Variant> rename_variables(const Program& p, std::uint64_t seed) {
    std::vector<std::string> ids = collect_identifiers(p.ast);
    if (ids.empty()) return std::nullopt;

    std::set<std::string> taken(ids.begin(), ids.end());
    std::vector<std::string> fresh;
    fresh.reserve(ids.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::string name = fresh_name("v", next, taken);
        next = std::stoull(name.substr(1)) + 1;
        taken.insert(name);
        fresh.push_back(std::move(name));
    }

    Rng rng(seed);
    std::vector<std::size_t> perm = rng.shuffled_indices(ids.size());

    Variant v;
    v.kind = TransformKind::RenameVariables;
    v.seed = seed;
    v.rename_map.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        v.rename_map.emplace_back(ids[i], fresh[perm[i]]);
    }
    v.program = program_from_ast(rename_block(p.ast, v.rename_map));
    v.edit_distance = canonical_distance(p, v.program);
    return v;
}

Variant inject_dead_code(const Program& p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> ids = collect_identifiers(p.ast);
    std::set<std::string> taken(ids.begin(), ids.end());

    static const std::int64_t kConstants[] = {0, 1, 7, 42};

    Variant v;
    v.kind = TransformKind::InjectDeadCode;
    v.seed = seed;

    AstBlock block = p.ast;
    std::size_t count = 1 + rng.next_below(3);
    std::size_t fresh_index = 0;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t pos = rng.next_below(block.size() + 1);
        StatementPtr stmt;
        if (rng.next_bool(0.5)) {
            stmt = Statement::make_comment(" dc " + hex_token(rng));
        } else {
            std::string name = fresh_name("_dc", fresh_index, taken);
            fresh_index = std::stoull(name.substr(3)) + 1;
            taken.insert(name);
            v.injected_vars.push_back(name);
            std::int64_t a = kConstants[rng.next_below(4)];
            ExprPtr value;
            if (rng.next_bool(0.5)) {
                std::int64_t b = kConstants[rng.next_below(4)];
                BinaryOp op = rng.next_bool(0.5) ? BinaryOp::Add : BinaryOp::Mul;
                value = Expr::make_binary(op, Expr::make_int(a), Expr::make_int(b));
            } else {
                value = Expr::make_int(a);
            }
            stmt = Statement::make_assign(name, value);
        }
        block.insert(block.begin() + static_cast<std::ptrdiff_t>(pos), stmt);
    }

    v.program = program_from_ast(std::move(block));
    v.edit_distance = canonical_distance(p, v.program);
    return v;
}

std::optional<Variant> reorder_independent(const Program& p, std::uint64_t seed) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i + 1 < p.ast.size(); ++i) {
        if (statements_independent(p.ast[i], p.ast[i + 1])) eligible.push_back(i);
    }
    if (eligible.empty()) return std::nullopt;

    Rng rng(seed);
    std::size_t at = eligible[rng.next_below(eligible.size())];

    AstBlock block = p.ast;
    std::swap(block[at], block[at + 1]);

    Variant v;
    v.kind = TransformKind::ReorderIndependent;
    v.seed = seed;
    v.program = program_from_ast(std::move(block));
    v.edit_distance = canonical_distance(p, v.program);
    return v;
}

Variant reformat(const Program& p, std::uint64_t seed) {
    Rng rng(seed);
    RenderStyle style = rng.next_bool(0.5) ? RenderStyle::Spaced : RenderStyle::Compact;

    AstBlock block = p.ast;
    std::size_t comments = 1 + rng.next_below(2);
    for (std::size_t i = 0; i < comments; ++i) {
        block.push_back(Statement::make_comment(" fmt " + hex_token(rng)));
    }

    Variant v;
    v.kind = TransformKind::Reformat;
    v.seed = seed;
    v.program = program_from_ast(std::move(block), style);
    v.edit_distance = canonical_distance(p, v.program);
    return v;
}

Variant comment_noop(const Program& p, std::size_t index) {
    std::string prefix = "# No-op";
    if (index > 1) prefix += " " + std::to_string(index);
    std::string source = prefix + "\n" + p.source;

    ParseResult parsed = parse_program(source);
    Variant v;
    v.kind = TransformKind::CommentNoOp;
    v.seed = 0;
    v.program = parsed.ok() ? std::move(*parsed.program) : p;
    v.edit_distance = canonical_distance(p, v.program);
    return v;
}

Orbit generate_orbit(const Program& p, const OrbitConfig& cfg) {
    Orbit orbit;
    orbit.original = p;

    static const TransformKind kKinds[] = {
        TransformKind::RenameVariables, TransformKind::InjectDeadCode, TransformKind::Reformat,
        TransformKind::ReorderIndependent, TransformKind::CommentNoOp};

    Rng rng(cfg.seed);
    std::unordered_set<std::string> history;
    const std::string canon_p = p.canonical_source();
    const std::size_t bound = accept_bound(cfg.delta_min, canon_p.size());
    const std::size_t max_attempts = cfg.k * cfg.attempt_multiplier;

    std::size_t failures = 0;
    std::size_t noop_counter = 0;
    std::optional<TransformKind> last_failed;

    auto next_noop = [&]() {
        // Numbered so the history-uniqueness invariant survives repeated
        // fallbacks.
        Variant v;
        do {
            ++noop_counter;
            v = comment_noop(p, noop_counter);
        } while (history.count(v.program.canonical_source()));
        return v;
    };

    while (orbit.variants.size() < cfg.k && orbit.attempts < max_attempts) {
        std::vector<double> weights;
        for (TransformKind kind : kKinds) {
            double w = default_safety_weight(kind);
            if (last_failed && *last_failed == kind) w = std::max(1.0, w / 2.0);
            weights.push_back(w);
        }
        TransformKind kind = kKinds[rng.next_weighted(weights)];

        std::optional<Variant> candidate;
        std::uint64_t transform_seed = rng.next_u64();
        switch (kind) {
            case TransformKind::RenameVariables:
                candidate = rename_variables(p, transform_seed);
                break;
            case TransformKind::InjectDeadCode:
                candidate = inject_dead_code(p, transform_seed);
                break;
            case TransformKind::Reformat:
                candidate = reformat(p, transform_seed);
                break;
            case TransformKind::ReorderIndependent:
                candidate = reorder_independent(p, transform_seed);
                break;
            case TransformKind::CommentNoOp:
                candidate = next_noop();
                break;
        }

        bool accepted = false;
        if (candidate && parse_program(candidate->program.source).ok()) {
            std::string canon_q = candidate->program.canonical_source();
            if (!history.count(canon_q)) {
                std::size_t d = levenshtein(canon_p, canon_q);
                if (d >= bound) {
                    candidate->edit_distance = d;
                    history.insert(std::move(canon_q));
                    orbit.variants.push_back(std::move(*candidate));
                    failures = 0;
                    accepted = true;
                }
            }
        }
        if (!accepted) {
            ++failures;
            ++orbit.failures_at_accept;
            last_failed = kind;
        }
        ++orbit.attempts;

        if (failures >= cfg.failure_threshold) {
            orbit.fallback_used = true;
            while (orbit.variants.size() < cfg.k) {
                Variant v = next_noop();
                history.insert(v.program.canonical_source());
                orbit.variants.push_back(std::move(v));
                ++orbit.fallback_count;
            }
        }
    }

    // Attempt budget exhausted short of k: complete via the fallback edit.
    if (orbit.variants.size() < cfg.k) {
        orbit.fallback_used = true;
        while (orbit.variants.size() < cfg.k) {
            Variant v = next_noop();
            history.insert(v.program.canonical_source());
            orbit.variants.push_back(std::move(v));
            ++orbit.fallback_count;
        }
    }
    return orbit;
}

}  // namespace ctvp
