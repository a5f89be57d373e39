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

#include <string>

#include "ctvp/metrics.hpp"
#include "ctvp/program.hpp"
#include "ctvp/rng.hpp"

using namespace ctvp;

namespace {

Program must_parse(const std::string& source) {
    ParseResult r = parse_program(source);
    REQUIRE_MESSAGE(r.ok(), (r.error ? r.error->to_string() : std::string("?")));
    return r.value();
}

// Independent node-count oracle for the documented inventory: one node per
// statement, one per expression node, one per assignment target or loop
// variable.
std::size_t oracle_expr_nodes(const ExprPtr& e) {
    if (!e) return 0;
    return 1 + oracle_expr_nodes(e->lhs) + oracle_expr_nodes(e->rhs);
}

std::size_t oracle_total_nodes(const AstBlock& block) {
    std::size_t n = 0;
    for (const auto& s : block) {
        n += 1;
        switch (s->kind) {
            case Statement::Kind::Assign:
                n += 1 + oracle_expr_nodes(s->expr);
                break;
            case Statement::Kind::Print:
                n += oracle_expr_nodes(s->expr);
                break;
            case Statement::Kind::If:
                n += oracle_expr_nodes(s->expr) + oracle_total_nodes(s->body) +
                     oracle_total_nodes(s->else_body);
                break;
            case Statement::Kind::While:
                n += oracle_expr_nodes(s->expr) + oracle_total_nodes(s->body);
                break;
            case Statement::Kind::ForRange:
                n += 1 + oracle_expr_nodes(s->range_lo) + oracle_expr_nodes(s->range_hi) +
                     oracle_total_nodes(s->body);
                break;
            default:
                break;
        }
    }
    return n;
}

const char* kSampleSources[] = {
    "x = 1\nprint(x)\n",
    "a = 2\nb = 3\nc = a * b + 1\nprint(c)\n",
    "x = 10\nif x > 5:\n    print(\"big\")\nelse:\n    print(\"small\")\n",
    "total = 0\nfor i in range(0, 5):\n    total = total + i\nprint(total)\n",
    "n = 6\nwhile n > 0:\n    n = n - 2\nprint(n)\n",
    "s = \"ab\"\ns = s + \"cd\"\n# trailing note\nprint(s)\n",
    "flag = True\nif flag and not False:\n    pass\nprint(1)\n",
    "x = -4\ny = x // 3\nz = x % 3\nprint(y * 10 + z)\n",
};

}  // namespace

TEST_CASE("parse builds the documented two-statement AST") {
    Program p = must_parse("x = 1\nprint(x)");
    REQUIRE(p.ast.size() == 2);
    CHECK(p.ast[0]->kind == Statement::Kind::Assign);
    CHECK(p.ast[0]->name == "x");
    CHECK(p.ast[0]->expr->kind == Expr::Kind::IntLit);
    CHECK(p.ast[0]->expr->int_value == 1);
    CHECK(p.ast[1]->kind == Statement::Kind::Print);
    CHECK(p.ast[1]->expr->kind == Expr::Kind::Var);
    CHECK(p.ast[1]->expr->name == "x");
    CHECK(p.ast[0]->line == 1);
    CHECK(p.ast[1]->line == 2);
}

TEST_CASE("malformed token stream is a syntax error with position") {
    ParseResult r = parse_program("x = = 1");
    REQUIRE_FALSE(r.ok());
    CHECK(r.error->line == 1);
    CHECK(r.error->col > 0);
}

TEST_CASE("parser rejects assorted malformed inputs") {
    const char* bad[] = {
        "",                       // empty program
        "   \n\n",                // only blank lines
        "x = 1\n  y = 2\n",       // indent not a multiple of 4
        "if x > 1:\nprint(x)\n",  // missing indented block
        "else:\n    pass\n",      // dangling else
        "for i in 5:\n    pass\n",
        "x = \"unterminated\n",
        "print(1\n",
        "while True\n    pass\n",
        "1 = x\n",
        "x = 1 +\n",
        "\tx = 1\n",
    };
    for (const char* source : bad) {
        CAPTURE(source);
        CHECK_FALSE(parse_program(source).ok());
    }
}

TEST_CASE("round-trip: canonical render reparses to a structurally equal AST") {
    for (const char* source : kSampleSources) {
        CAPTURE(source);
        Program p = must_parse(source);
        for (RenderStyle style :
             {RenderStyle::Canonical, RenderStyle::Spaced, RenderStyle::Compact}) {
            std::string rendered = render_block(p.ast, style);
            Program q = must_parse(rendered);
            CHECK(block_equal(p.ast, q.ast));
            CHECK(q.hash == p.hash);
        }
    }
}

TEST_CASE("canonical render of a canonical source is a fixed point") {
    for (const char* source : kSampleSources) {
        Program p = must_parse(source);
        std::string once = render_block(p.ast, RenderStyle::Canonical);
        Program q = must_parse(once);
        CHECK(render_block(q.ast, RenderStyle::Canonical) == once);
    }
}

TEST_CASE("spaced differs from canonical only by blank lines") {
    Program p = must_parse("x = 1\ny = 2\nprint(x + y)\n");
    std::string canonical = render_block(p.ast, RenderStyle::Canonical);
    std::string spaced = render_block(p.ast, RenderStyle::Spaced);
    CHECK(canonical != spaced);
    std::string collapsed;
    for (std::size_t i = 0; i < spaced.size(); ++i) {
        if (spaced[i] == '\n' && i + 1 < spaced.size() && spaced[i + 1] == '\n') continue;
        collapsed += spaced[i];
    }
    CHECK(collapsed == canonical);
}

TEST_CASE("expression rendering preserves precedence without parser help") {
    const char* exprs[] = {
        "x = (1 + 2) * 3\n",
        "x = 1 + 2 * 3\n",
        "x = -(1 + 2)\n",
        "x = 1 - (2 - 3)\n",
        "x = not (True and False)\n",
        "x = (1 < 2) == True\n",
        "y = 0\nx = -y // 2 % 3\n",
        "x = \"a\\\"b\\\\c\\nd\\te\"\n",
    };
    for (const char* source : exprs) {
        CAPTURE(source);
        Program p = must_parse(source);
        Program q = must_parse(render_block(p.ast, RenderStyle::Canonical));
        CHECK(block_equal(p.ast, q.ast));
        Program c = must_parse(render_block(p.ast, RenderStyle::Compact));
        CHECK(block_equal(p.ast, c.ast));
    }
}

TEST_CASE("hash depends only on the canonical rendering") {
    Program a = must_parse("x   =   1\nprint( x )\n");
    Program b = must_parse("x = 1\nprint(x)");
    CHECK(a.hash == b.hash);
    Program c = must_parse("x = 2\nprint(x)");
    CHECK(a.hash != c.hash);
    CHECK(a.hash.size() == 64);
}

TEST_CASE("ast_metrics matches the independent node-count oracle") {
    for (const char* source : kSampleSources) {
        CAPTURE(source);
        Program p = must_parse(source);
        AstMetrics m = ast_metrics(p.ast);
        CHECK(m.total_nodes == oracle_total_nodes(p.ast));
        CHECK(m.control_nodes <= m.total_nodes);
    }
}

TEST_CASE("ast_metrics counts the documented example values") {
    AstMetrics simple = ast_metrics(must_parse("x = 1").ast);
    CHECK(simple.total_nodes == 3);  // Assign + target Var + IntLit
    CHECK(simple.control_nodes == 0);
    CHECK(simple.executable_statements == 1);

    AstMetrics iffy = ast_metrics(must_parse("x = 1\nif x > 0:\n    y = 2\n").ast);
    CHECK(iffy.control_nodes == 1);

    AstMetrics vars = ast_metrics(must_parse("a = 1\nb = 2\nc = a + b\n").ast);
    CHECK(vars.unique_identifiers == 3);
}

TEST_CASE("comments and pass are not executable statements") {
    AstMetrics m = ast_metrics(must_parse("# note\nx = 1\npass\nprint(x)\n").ast);
    CHECK(m.executable_statements == 2);
    CHECK(m.total_nodes == 7);  // Comment + Assign(3) + Pass + Print(2)
}

TEST_CASE("top-level blocks split on dependence") {
    // y reads x: dependent; print is never independent.
    AstMetrics chained = ast_metrics(must_parse("x = 1\ny = x\nprint(y)\n").ast);
    CHECK(chained.top_level_blocks == 3);
    // Disjoint assignments form one block.
    AstMetrics disjoint = ast_metrics(must_parse("x = 1\ny = 2\nz = 3\n").ast);
    CHECK(disjoint.top_level_blocks == 1);
}

TEST_CASE("appending an executable statement strictly grows the metrics") {
    Rng rng(2024);
    for (int iter = 0; iter < 20; ++iter) {
        const char* base = kSampleSources[rng.next_below(8)];
        Program p = must_parse(base);
        AstMetrics before = ast_metrics(p.ast);
        AstBlock extended = p.ast;
        extended.push_back(Statement::make_assign(
            "zz" + std::to_string(rng.next_below(100)),
            Expr::make_int(static_cast<std::int64_t>(rng.next_below(50)))));
        AstMetrics after = ast_metrics(extended);
        CHECK(after.total_nodes > before.total_nodes);
        CHECK(after.executable_statements > before.executable_statements);
    }
}

TEST_CASE("else-less if keeps an absent else block") {
    Program p = must_parse("x = 1\nif x == 1:\n    x = 2\n");
    REQUIRE(p.ast.size() == 2);
    CHECK(p.ast[1]->else_body.empty());
    std::string rendered = render_block(p.ast, RenderStyle::Canonical);
    CHECK(rendered.find("else") == std::string::npos);
}
