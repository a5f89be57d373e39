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

#ifndef CTVP_METRICS_HPP
#define CTVP_METRICS_HPP

#include <cstddef>

#include "ctvp/ast.hpp"

namespace ctvp {

// Shape counters used by the complexity baseline and the space estimator.
//
// Node inventory: every statement counts as one node; every expression node
// (literal, variable reference, unary or binary operator) counts as one node;
// assignment targets and loop variables count as one Var node each.
struct AstMetrics {
    std::size_t total_nodes = 0;           // n
    std::size_t control_nodes = 0;         // c: If / While / ForRange
    std::size_t unique_identifiers = 0;    // distinct variable names
    std::size_t top_level_blocks = 0;      // maximal runs of independent top-level statements
    std::size_t executable_statements = 0; // statements excluding Comment and Pass, recursive
};

AstMetrics ast_metrics(const AstBlock& block);

}  // namespace ctvp

#endif  // CTVP_METRICS_HPP
