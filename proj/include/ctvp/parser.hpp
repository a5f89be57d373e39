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

#ifndef CTVP_PARSER_HPP
#define CTVP_PARSER_HPP

#include <optional>
#include <string>

#include "ctvp/ast.hpp"

namespace ctvp {

struct SyntaxError {
    int line = 0;  // 1-based
    int col = 0;   // 1-based
    std::string message;

    std::string to_string() const;
};

struct BlockParseResult {
    std::optional<AstBlock> block;
    std::optional<SyntaxError> error;

    bool ok() const { return block.has_value(); }
};

// Parse mini-language source into a top-level block.
//
// Grammar summary: newline-terminated statements, blocks indented by exactly
// four spaces per level, statements are assignment, print(expr), if/else,
// while, for NAME in range(lo, hi), pass, and '#' comments. Values are
// integers, True/False, and double-quoted strings with \\ \" \n \t escapes.
// Blank lines are ignored. An empty program (no statements at all) is a
// syntax error.
BlockParseResult parse_block_source(const std::string& source);

}  // namespace ctvp

#endif  // CTVP_PARSER_HPP
