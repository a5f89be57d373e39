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

#ifndef CTVP_PROGRAM_HPP
#define CTVP_PROGRAM_HPP

#include <optional>
#include <string>

#include "ctvp/ast.hpp"
#include "ctvp/parser.hpp"
#include "ctvp/render.hpp"

namespace ctvp {

// A parsed program: raw source, its AST, and a content digest.
//
// The digest is SHA-256 over the canonical rendering, so any two sources
// that normalize identically share a hash regardless of formatting.
struct Program {
    std::string source;
    AstBlock ast;
    std::string hash;  // 64 hex chars

    std::string canonical_source() const { return render_block(ast, RenderStyle::Canonical); }
};

struct ParseResult {
    std::optional<Program> program;
    std::optional<SyntaxError> error;

    bool ok() const { return program.has_value(); }
    const Program& value() const { return *program; }
};

ParseResult parse_program(const std::string& source);

// Build a Program directly from an AST, rendering it in the given style.
Program program_from_ast(AstBlock ast, RenderStyle style = RenderStyle::Canonical);

// SHA-256 hex digest of arbitrary bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace ctvp

#endif  // CTVP_PROGRAM_HPP
