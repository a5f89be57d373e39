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

#ifndef CTVP_RENDER_HPP
#define CTVP_RENDER_HPP

#include <string>

#include "ctvp/ast.hpp"

namespace ctvp {

enum class RenderStyle {
    // One statement per line, four-space indents, single spaces around binary
    // operators, comments verbatim. This is the normalization used for
    // content hashing.
    Canonical,
    // Canonical plus a blank line between consecutive top-level statements.
    Spaced,
    // Non-semantic spaces removed (none around operators or after commas);
    // indentation is structural and is kept.
    Compact,
};

std::string render_block(const AstBlock& block, RenderStyle style);
std::string render_expr(const ExprPtr& expr, RenderStyle style);

}  // namespace ctvp

#endif  // CTVP_RENDER_HPP
