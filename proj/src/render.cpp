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

#include "ctvp/render.hpp"

#include <cctype>
#include <string>

namespace ctvp {

namespace {

// Higher binds tighter. Mirrors the parser's precedence ladder.
int expr_precedence(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Binary:
            switch (e->bin_op) {
                case BinaryOp::Or: return 1;
                case BinaryOp::And: return 2;
                case BinaryOp::Eq:
                case BinaryOp::Ne:
                case BinaryOp::Lt:
                case BinaryOp::Le:
                case BinaryOp::Gt:
                case BinaryOp::Ge: return 4;
                case BinaryOp::Add:
                case BinaryOp::Sub: return 5;
                default: return 6;  // Mul, FloorDiv, Mod
            }
        case Expr::Kind::Unary:
            return e->un_op == UnaryOp::Not ? 3 : 7;
        default:
            return 8;
    }
}

bool is_comparison(BinaryOp op) {
    switch (op) {
        case BinaryOp::Eq:
        case BinaryOp::Ne:
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return true;
        default: return false;
    }
}

std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

bool wordy(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Join two compact fragments, inserting a space only where the tokens would
// otherwise merge.
void append_compact(std::string& out, const std::string& next) {
    if (!out.empty() && !next.empty() && wordy(out.back()) && wordy(next.front())) {
        out += ' ';
    }
    out += next;
}

std::string render_expr_impl(const ExprPtr& e, bool compact) {
    auto child = [&](const ExprPtr& c, bool need_parens) {
        std::string s = render_expr_impl(c, compact);
        if (need_parens) return "(" + s + ")";
        return s;
    };
    switch (e->kind) {
        case Expr::Kind::IntLit:
            return std::to_string(e->int_value);
        case Expr::Kind::BoolLit:
            return e->bool_value ? "True" : "False";
        case Expr::Kind::StrLit:
            return quote_string(e->str_value);
        case Expr::Kind::Var:
            return e->name;
        case Expr::Kind::Unary: {
            int my = expr_precedence(e);
            bool parens = expr_precedence(e->lhs) < my;
            if (e->un_op == UnaryOp::Neg) {
                return "-" + child(e->lhs, parens);
            }
            std::string out = "not";
            if (compact) {
                append_compact(out, child(e->lhs, parens));
            } else {
                out += ' ';
                out += child(e->lhs, parens);
            }
            return out;
        }
        case Expr::Kind::Binary: {
            int my = expr_precedence(e);
            int lp = expr_precedence(e->lhs);
            int rp = expr_precedence(e->rhs);
            // Left-associative chains keep the left child bare; comparisons
            // are non-associative so equal precedence needs parens on both
            // sides.
            bool lparens = is_comparison(e->bin_op) ? lp <= my : lp < my;
            bool rparens = rp < my || rp == my;
            std::string l = child(e->lhs, lparens);
            std::string r = child(e->rhs, rparens);
            const char* op = binary_op_text(e->bin_op);
            if (!compact) {
                return l + " " + op + " " + r;
            }
            std::string out = l;
            append_compact(out, op);
            append_compact(out, r);
            return out;
        }
    }
    return "";
}

void render_statement(const StatementPtr& s, RenderStyle style, int level, std::string& out);

void render_inner_block(const AstBlock& block, RenderStyle style, int level, std::string& out) {
    for (const auto& s : block) {
        render_statement(s, style, level, out);
    }
}

void render_statement(const StatementPtr& s, RenderStyle style, int level, std::string& out) {
    bool compact = style == RenderStyle::Compact;
    out.append(static_cast<std::size_t>(level) * 4, ' ');
    switch (s->kind) {
        case Statement::Kind::Assign:
            if (compact) {
                out += s->name;
                out += '=';
                out += render_expr_impl(s->expr, true);
            } else {
                out += s->name + " = " + render_expr_impl(s->expr, false);
            }
            out += '\n';
            break;
        case Statement::Kind::Print:
            out += "print(" + render_expr_impl(s->expr, compact) + ")";
            out += '\n';
            break;
        case Statement::Kind::If:
            if (compact) {
                std::string head = "if";
                append_compact(head, render_expr_impl(s->expr, true));
                out += head;
            } else {
                out += "if " + render_expr_impl(s->expr, false);
            }
            out += ":\n";
            render_inner_block(s->body, style, level + 1, out);
            if (!s->else_body.empty()) {
                out.append(static_cast<std::size_t>(level) * 4, ' ');
                out += "else:\n";
                render_inner_block(s->else_body, style, level + 1, out);
            }
            break;
        case Statement::Kind::While:
            if (compact) {
                std::string head = "while";
                append_compact(head, render_expr_impl(s->expr, true));
                out += head;
            } else {
                out += "while " + render_expr_impl(s->expr, false);
            }
            out += ":\n";
            render_inner_block(s->body, style, level + 1, out);
            break;
        case Statement::Kind::ForRange: {
            if (compact) {
                out += "for " + s->name + " in range(" + render_expr_impl(s->range_lo, true) +
                       "," + render_expr_impl(s->range_hi, true) + "):\n";
            } else {
                out += "for " + s->name + " in range(" + render_expr_impl(s->range_lo, false) +
                       ", " + render_expr_impl(s->range_hi, false) + "):\n";
            }
            render_inner_block(s->body, style, level + 1, out);
            break;
        }
        case Statement::Kind::Pass:
            out += "pass\n";
            break;
        case Statement::Kind::Comment:
            out += "#" + s->comment_text + "\n";
            break;
    }
}

}  // namespace

std::string render_expr(const ExprPtr& expr, RenderStyle style) {
    return render_expr_impl(expr, style == RenderStyle::Compact);
}

std::string render_block(const AstBlock& block, RenderStyle style) {
    std::string out;
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (style == RenderStyle::Spaced && i > 0) out += '\n';
        render_statement(block[i], style, 0, out);
    }
    return out;
}

}  // namespace ctvp
