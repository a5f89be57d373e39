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

#include "ctvp/ast.hpp"

#include <algorithm>

namespace ctvp {

const char* binary_op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::FloorDiv: return "//";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
    }
    return "?";
}

const char* unary_op_text(UnaryOp op) {
    return op == UnaryOp::Neg ? "-" : "not";
}

ExprPtr Expr::make_int(std::int64_t v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::IntLit;
    e->int_value = v;
    return e;
}

ExprPtr Expr::make_bool(bool v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::BoolLit;
    e->bool_value = v;
    return e;
}

ExprPtr Expr::make_str(std::string v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::StrLit;
    e->str_value = std::move(v);
    return e;
}

ExprPtr Expr::make_var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->bin_op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

ExprPtr Expr::make_unary(UnaryOp op, ExprPtr operand) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->un_op = op;
    e->lhs = std::move(operand);
    return e;
}

namespace {

std::shared_ptr<Statement> make_stmt(Statement::Kind kind, int line) {
    auto s = std::make_shared<Statement>();
    s->kind = kind;
    s->line = line;
    return s;
}

}  // namespace

StatementPtr Statement::make_assign(std::string name, ExprPtr expr, int line) {
    auto s = make_stmt(Kind::Assign, line);
    s->name = std::move(name);
    s->expr = std::move(expr);
    return s;
}

StatementPtr Statement::make_print(ExprPtr expr, int line) {
    auto s = make_stmt(Kind::Print, line);
    s->expr = std::move(expr);
    return s;
}

StatementPtr Statement::make_if(ExprPtr cond, AstBlock body, AstBlock else_body, int line) {
    auto s = make_stmt(Kind::If, line);
    s->expr = std::move(cond);
    s->body = std::move(body);
    s->else_body = std::move(else_body);
    return s;
}

StatementPtr Statement::make_while(ExprPtr cond, AstBlock body, int line) {
    auto s = make_stmt(Kind::While, line);
    s->expr = std::move(cond);
    s->body = std::move(body);
    return s;
}

StatementPtr Statement::make_for(std::string name, ExprPtr lo, ExprPtr hi, AstBlock body,
                                 int line) {
    auto s = make_stmt(Kind::ForRange, line);
    s->name = std::move(name);
    s->range_lo = std::move(lo);
    s->range_hi = std::move(hi);
    s->body = std::move(body);
    return s;
}

StatementPtr Statement::make_pass(int line) { return make_stmt(Kind::Pass, line); }

StatementPtr Statement::make_comment(std::string text, int line) {
    auto s = make_stmt(Kind::Comment, line);
    s->comment_text = std::move(text);
    return s;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::IntLit: return a->int_value == b->int_value;
        case Expr::Kind::BoolLit: return a->bool_value == b->bool_value;
        case Expr::Kind::StrLit: return a->str_value == b->str_value;
        case Expr::Kind::Var: return a->name == b->name;
        case Expr::Kind::Binary:
            return a->bin_op == b->bin_op && expr_equal(a->lhs, b->lhs) &&
                   expr_equal(a->rhs, b->rhs);
        case Expr::Kind::Unary:
            return a->un_op == b->un_op && expr_equal(a->lhs, b->lhs);
    }
    return false;
}

bool statement_equal(const StatementPtr& a, const StatementPtr& b, bool ignore_comments) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Statement::Kind::Assign:
            return a->name == b->name && expr_equal(a->expr, b->expr);
        case Statement::Kind::Print:
            return expr_equal(a->expr, b->expr);
        case Statement::Kind::If:
            return expr_equal(a->expr, b->expr) && block_equal(a->body, b->body, ignore_comments) &&
                   block_equal(a->else_body, b->else_body, ignore_comments);
        case Statement::Kind::While:
            return expr_equal(a->expr, b->expr) && block_equal(a->body, b->body, ignore_comments);
        case Statement::Kind::ForRange:
            return a->name == b->name && expr_equal(a->range_lo, b->range_lo) &&
                   expr_equal(a->range_hi, b->range_hi) &&
                   block_equal(a->body, b->body, ignore_comments);
        case Statement::Kind::Pass:
            return true;
        case Statement::Kind::Comment:
            return a->comment_text == b->comment_text;
    }
    return false;
}

bool block_equal(const AstBlock& a, const AstBlock& b, bool ignore_comments) {
    if (!ignore_comments) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!statement_equal(a[i], b[i], ignore_comments)) return false;
        }
        return true;
    }
    std::size_t i = 0, j = 0;
    auto skip = [](const AstBlock& blk, std::size_t& k) {
        while (k < blk.size() && blk[k]->kind == Statement::Kind::Comment) ++k;
    };
    for (;;) {
        skip(a, i);
        skip(b, j);
        if (i == a.size() || j == b.size()) break;
        if (!statement_equal(a[i], b[j], true)) return false;
        ++i;
        ++j;
    }
    skip(a, i);
    skip(b, j);
    return i == a.size() && j == b.size();
}

namespace {

void collect_expr_identifiers(const ExprPtr& e, std::vector<std::string>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::Var) {
        if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
        return;
    }
    collect_expr_identifiers(e->lhs, out);
    collect_expr_identifiers(e->rhs, out);
}

void collect_block_identifiers(const AstBlock& block, std::vector<std::string>& out) {
    auto add = [&out](const std::string& name) {
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    };
    for (const auto& s : block) {
        switch (s->kind) {
            case Statement::Kind::Assign:
                add(s->name);
                collect_expr_identifiers(s->expr, out);
                break;
            case Statement::Kind::Print:
                collect_expr_identifiers(s->expr, out);
                break;
            case Statement::Kind::If:
                collect_expr_identifiers(s->expr, out);
                collect_block_identifiers(s->body, out);
                collect_block_identifiers(s->else_body, out);
                break;
            case Statement::Kind::While:
                collect_expr_identifiers(s->expr, out);
                collect_block_identifiers(s->body, out);
                break;
            case Statement::Kind::ForRange:
                add(s->name);
                collect_expr_identifiers(s->range_lo, out);
                collect_expr_identifiers(s->range_hi, out);
                collect_block_identifiers(s->body, out);
                break;
            case Statement::Kind::Pass:
            case Statement::Kind::Comment:
                break;
        }
    }
}

void collect_expr_reads(const ExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::Var) {
        out.insert(e->name);
        return;
    }
    collect_expr_reads(e->lhs, out);
    collect_expr_reads(e->rhs, out);
}

void collect_stmt_rw(const StatementPtr& s, std::set<std::string>& reads,
                     std::set<std::string>& writes) {
    switch (s->kind) {
        case Statement::Kind::Assign:
            collect_expr_reads(s->expr, reads);
            writes.insert(s->name);
            break;
        case Statement::Kind::Print:
            collect_expr_reads(s->expr, reads);
            break;
        case Statement::Kind::If:
            collect_expr_reads(s->expr, reads);
            for (const auto& c : s->body) collect_stmt_rw(c, reads, writes);
            for (const auto& c : s->else_body) collect_stmt_rw(c, reads, writes);
            break;
        case Statement::Kind::While:
            collect_expr_reads(s->expr, reads);
            for (const auto& c : s->body) collect_stmt_rw(c, reads, writes);
            break;
        case Statement::Kind::ForRange:
            collect_expr_reads(s->range_lo, reads);
            collect_expr_reads(s->range_hi, reads);
            writes.insert(s->name);
            for (const auto& c : s->body) collect_stmt_rw(c, reads, writes);
            break;
        case Statement::Kind::Pass:
        case Statement::Kind::Comment:
            break;
    }
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& x : a) {
        if (b.count(x)) return false;
    }
    return true;
}

}  // namespace

std::vector<std::string> collect_identifiers(const AstBlock& block) {
    std::vector<std::string> out;
    collect_block_identifiers(block, out);
    return out;
}

std::set<std::string> statement_reads(const StatementPtr& s) {
    std::set<std::string> reads, writes;
    collect_stmt_rw(s, reads, writes);
    return reads;
}

std::set<std::string> statement_writes(const StatementPtr& s) {
    std::set<std::string> reads, writes;
    collect_stmt_rw(s, reads, writes);
    return writes;
}

bool statement_contains_print(const StatementPtr& s) {
    switch (s->kind) {
        case Statement::Kind::Print:
            return true;
        case Statement::Kind::If:
            for (const auto& c : s->body)
                if (statement_contains_print(c)) return true;
            for (const auto& c : s->else_body)
                if (statement_contains_print(c)) return true;
            return false;
        case Statement::Kind::While:
        case Statement::Kind::ForRange:
            for (const auto& c : s->body)
                if (statement_contains_print(c)) return true;
            return false;
        default:
            return false;
    }
}

bool statements_independent(const StatementPtr& a, const StatementPtr& b) {
    if (statement_contains_print(a) || statement_contains_print(b)) return false;
    std::set<std::string> ra, wa, rb, wb;
    collect_stmt_rw(a, ra, wa);
    collect_stmt_rw(b, rb, wb);
    return disjoint(wa, rb) && disjoint(wa, wb) && disjoint(ra, wb);
}

namespace {

std::string mapped_name(const std::vector<std::pair<std::string, std::string>>& mapping,
                        const std::string& name) {
    for (const auto& [from, to] : mapping) {
        if (from == name) return to;
    }
    return name;
}

ExprPtr rename_expr(const ExprPtr& e,
                    const std::vector<std::pair<std::string, std::string>>& mapping) {
    if (!e) return nullptr;
    switch (e->kind) {
        case Expr::Kind::Var: return Expr::make_var(mapped_name(mapping, e->name));
        case Expr::Kind::Binary:
            return Expr::make_binary(e->bin_op, rename_expr(e->lhs, mapping),
                                     rename_expr(e->rhs, mapping));
        case Expr::Kind::Unary:
            return Expr::make_unary(e->un_op, rename_expr(e->lhs, mapping));
        default:
            return e;  // literals are immutable and shared
    }
}

}  // namespace

AstBlock rename_block(const AstBlock& block,
                      const std::vector<std::pair<std::string, std::string>>& mapping) {
    AstBlock out;
    out.reserve(block.size());
    for (const auto& s : block) {
        switch (s->kind) {
            case Statement::Kind::Assign:
                out.push_back(Statement::make_assign(mapped_name(mapping, s->name),
                                                     rename_expr(s->expr, mapping), s->line));
                break;
            case Statement::Kind::Print:
                out.push_back(Statement::make_print(rename_expr(s->expr, mapping), s->line));
                break;
            case Statement::Kind::If:
                out.push_back(Statement::make_if(rename_expr(s->expr, mapping),
                                                 rename_block(s->body, mapping),
                                                 rename_block(s->else_body, mapping), s->line));
                break;
            case Statement::Kind::While:
                out.push_back(Statement::make_while(rename_expr(s->expr, mapping),
                                                    rename_block(s->body, mapping), s->line));
                break;
            case Statement::Kind::ForRange:
                out.push_back(Statement::make_for(
                    mapped_name(mapping, s->name), rename_expr(s->range_lo, mapping),
                    rename_expr(s->range_hi, mapping), rename_block(s->body, mapping), s->line));
                break;
            case Statement::Kind::Pass:
            case Statement::Kind::Comment:
                out.push_back(s);
                break;
        }
    }
    return out;
}

}  // namespace ctvp
