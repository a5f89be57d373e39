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

#ifndef CTVP_AST_HPP
#define CTVP_AST_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace ctvp {

enum class BinaryOp {
    Add,
    Sub,
    Mul,
    FloorDiv,
    Mod,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
};

enum class UnaryOp {
    Neg,
    Not,
};

const char* binary_op_text(BinaryOp op);
const char* unary_op_text(UnaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { IntLit, BoolLit, StrLit, Var, Binary, Unary };

    Kind kind;
    std::int64_t int_value = 0;     // IntLit
    bool bool_value = false;        // BoolLit
    std::string str_value;          // StrLit
    std::string name;               // Var
    BinaryOp bin_op = BinaryOp::Add;
    UnaryOp un_op = UnaryOp::Neg;
    ExprPtr lhs;                    // Binary / Unary operand
    ExprPtr rhs;                    // Binary only

    static ExprPtr make_int(std::int64_t v);
    static ExprPtr make_bool(bool v);
    static ExprPtr make_str(std::string v);
    static ExprPtr make_var(std::string name);
    static ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr make_unary(UnaryOp op, ExprPtr operand);
};

struct Statement;
using StatementPtr = std::shared_ptr<const Statement>;

// A block is a non-empty statement list, except else-blocks which may be empty.
using AstBlock = std::vector<StatementPtr>;

struct Statement {
    enum class Kind { Assign, Print, If, While, ForRange, Pass, Comment };

    Kind kind;
    int line = 0;              // 1-based source line of the statement header
    std::string name;          // Assign target / ForRange loop variable
    ExprPtr expr;              // Assign rhs / Print argument / If / While condition
    ExprPtr range_lo;          // ForRange
    ExprPtr range_hi;          // ForRange
    AstBlock body;             // If then-branch / While / ForRange body
    AstBlock else_body;        // If only; empty means no else
    std::string comment_text;  // Comment: text after '#', verbatim

    static StatementPtr make_assign(std::string name, ExprPtr expr, int line = 0);
    static StatementPtr make_print(ExprPtr expr, int line = 0);
    static StatementPtr make_if(ExprPtr cond, AstBlock body, AstBlock else_body, int line = 0);
    static StatementPtr make_while(ExprPtr cond, AstBlock body, int line = 0);
    static StatementPtr make_for(std::string name, ExprPtr lo, ExprPtr hi, AstBlock body,
                                 int line = 0);
    static StatementPtr make_pass(int line = 0);
    static StatementPtr make_comment(std::string text, int line = 0);
};

// Structural equality ignores source line numbers. Comment text is compared
// verbatim unless ignore_comments is set, in which case Comment statements are
// skipped on both sides before comparing.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool statement_equal(const StatementPtr& a, const StatementPtr& b, bool ignore_comments = false);
bool block_equal(const AstBlock& a, const AstBlock& b, bool ignore_comments = false);

// All identifiers appearing in the block: assignment targets, loop variables,
// and variable references, in first-occurrence order.
std::vector<std::string> collect_identifiers(const AstBlock& block);

// Variables read / written by a single statement (recursively).
std::set<std::string> statement_reads(const StatementPtr& s);
std::set<std::string> statement_writes(const StatementPtr& s);
bool statement_contains_print(const StatementPtr& s);

// Reordering-safety predicate shared by the transform engine and the
// top-level block metric: disjoint read/write sets and no printing on
// either side.
bool statements_independent(const StatementPtr& a, const StatementPtr& b);

// Deep rename of every identifier through the given map; names absent from
// the map are kept. Line numbers are preserved.
AstBlock rename_block(const AstBlock& block,
                      const std::vector<std::pair<std::string, std::string>>& mapping);

}  // namespace ctvp

#endif  // CTVP_AST_HPP
