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

#include "ctvp/metrics.hpp"

namespace ctvp {

namespace {

std::size_t count_expr_nodes(const ExprPtr& e) {
    if (!e) return 0;
    return 1 + count_expr_nodes(e->lhs) + count_expr_nodes(e->rhs);
}

void walk(const AstBlock& block, AstMetrics& m) {
    for (const auto& s : block) {
        m.total_nodes += 1;
        switch (s->kind) {
            case Statement::Kind::Assign:
                m.total_nodes += 1;  // assignment target
                m.total_nodes += count_expr_nodes(s->expr);
                m.executable_statements += 1;
                break;
            case Statement::Kind::Print:
                m.total_nodes += count_expr_nodes(s->expr);
                m.executable_statements += 1;
                break;
            case Statement::Kind::If:
                m.control_nodes += 1;
                m.executable_statements += 1;
                m.total_nodes += count_expr_nodes(s->expr);
                walk(s->body, m);
                walk(s->else_body, m);
                break;
            case Statement::Kind::While:
                m.control_nodes += 1;
                m.executable_statements += 1;
                m.total_nodes += count_expr_nodes(s->expr);
                walk(s->body, m);
                break;
            case Statement::Kind::ForRange:
                m.control_nodes += 1;
                m.executable_statements += 1;
                m.total_nodes += 1;  // loop variable
                m.total_nodes += count_expr_nodes(s->range_lo);
                m.total_nodes += count_expr_nodes(s->range_hi);
                walk(s->body, m);
                break;
            case Statement::Kind::Pass:
            case Statement::Kind::Comment:
                break;
        }
    }
}

}  // namespace

AstMetrics ast_metrics(const AstBlock& block) {
    AstMetrics m;
    walk(block, m);
    m.unique_identifiers = collect_identifiers(block).size();

    // Top-level blocks: greedy maximal runs where every statement is
    // pairwise independent of the rest of its run.
    std::size_t blocks = block.empty() ? 0 : 1;
    std::size_t run_start = 0;
    for (std::size_t i = 1; i < block.size(); ++i) {
        bool independent_of_run = true;
        for (std::size_t j = run_start; j < i; ++j) {
            if (!statements_independent(block[j], block[i])) {
                independent_of_run = false;
                break;
            }
        }
        if (!independent_of_run) {
            ++blocks;
            run_start = i;
        }
    }
    m.top_level_blocks = blocks;
    return m;
}

}  // namespace ctvp
