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

#include "ctvp/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ctvp {

std::string SyntaxError::to_string() const {
    std::ostringstream os;
    os << "syntax error at line " << line << ", col " << col << ": " << message;
    return os.str();
}

namespace {

struct Token {
    enum class Kind { Ident, Keyword, Int, Str, Op, End };
    Kind kind = Kind::End;
    std::string text;
    std::int64_t int_value = 0;
    std::string str_value;
    int col = 0;
};

const char* kKeywords[] = {"print", "if",   "else", "while", "for", "in",
                           "range", "pass", "True", "False", "and", "or",
                           "not"};

bool is_keyword(const std::string& s) {
    for (const char* k : kKeywords) {
        if (s == k) return true;
    }
    return false;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct LineRecord {
    int number = 0;  // 1-based
    int level = 0;   // indent depth in units of 4 spaces
    std::string text;  // content after indentation
    int indent_cols = 0;
};

class ParseFail {
  public:
    ParseFail(int line, int col, std::string message)
        : error{line, col, std::move(message)} {}
    SyntaxError error;
};

// Tokenizes one logical line (statements never span lines).
std::vector<Token> tokenize_line(const LineRecord& line) {
    std::vector<Token> out;
    const std::string& s = line.text;
    std::size_t i = 0;
    auto col_of = [&](std::size_t pos) { return line.indent_cols + static_cast<int>(pos) + 1; };
    while (i < s.size()) {
        char c = s[i];
        if (c == ' ') {
            ++i;
            continue;
        }
        if (c == '\t') {
            throw ParseFail(line.number, col_of(i), "tab characters are not allowed");
        }
        Token t;
        t.col = col_of(i);
        if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < s.size() && is_ident_char(s[j])) ++j;
            t.text = s.substr(i, j - i);
            t.kind = is_keyword(t.text) ? Token::Kind::Keyword : Token::Kind::Ident;
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && is_ident_start(s[j])) {
                throw ParseFail(line.number, col_of(j), "malformed number");
            }
            t.kind = Token::Kind::Int;
            t.text = s.substr(i, j - i);
            errno = 0;
            t.int_value = std::strtoll(t.text.c_str(), nullptr, 10);
            if (errno == ERANGE) {
                throw ParseFail(line.number, t.col, "integer literal out of range");
            }
            i = j;
        } else if (c == '"') {
            std::size_t j = i + 1;
            std::string value;
            bool closed = false;
            while (j < s.size()) {
                char d = s[j];
                if (d == '"') {
                    closed = true;
                    ++j;
                    break;
                }
                if (d == '\\') {
                    if (j + 1 >= s.size()) break;
                    char e = s[j + 1];
                    switch (e) {
                        case '\\': value += '\\'; break;
                        case '"': value += '"'; break;
                        case 'n': value += '\n'; break;
                        case 't': value += '\t'; break;
                        default:
                            throw ParseFail(line.number, col_of(j), "unsupported escape sequence");
                    }
                    j += 2;
                } else {
                    value += d;
                    ++j;
                }
            }
            if (!closed) {
                throw ParseFail(line.number, t.col, "unterminated string literal");
            }
            t.kind = Token::Kind::Str;
            t.str_value = std::move(value);
            i = j;
        } else {
            static const char* kOps[] = {"==", "!=", "<=", ">=", "//", "+", "-", "*",
                                         "%",  "<",  ">",  "=",  "(",  ")", ",", ":"};
            bool matched = false;
            for (const char* op : kOps) {
                std::size_t n = std::char_traits<char>::length(op);
                if (s.compare(i, n, op) == 0) {
                    t.kind = Token::Kind::Op;
                    t.text = op;
                    i += n;
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                throw ParseFail(line.number, col_of(i), std::string("unexpected character '") + c + "'");
            }
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.col = col_of(s.size());
    out.push_back(std::move(end));
    return out;
}

class LineParser {
  public:
    LineParser(const LineRecord& line, std::vector<Token> tokens)
        : line_(line), tokens_(std::move(tokens)) {}

    const Token& peek() const { return tokens_[pos_]; }

    Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    bool at_end() const { return peek().kind == Token::Kind::End; }

    void expect_op(const char* text) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Op || t.text != text) {
            fail(std::string("expected '") + text + "'");
        }
        take();
    }

    void expect_keyword(const char* text) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Keyword || t.text != text) {
            fail(std::string("expected '") + text + "'");
        }
        take();
    }

    std::string expect_ident() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident) fail("expected identifier");
        return take().text;
    }

    void expect_end() {
        if (!at_end()) fail("unexpected trailing tokens");
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseFail(line_.number, peek().col, message);
    }

    ExprPtr parse_expression() { return parse_or(); }

  private:
    ExprPtr parse_or() {
        ExprPtr e = parse_and();
        while (peek().kind == Token::Kind::Keyword && peek().text == "or") {
            take();
            e = Expr::make_binary(BinaryOp::Or, e, parse_and());
        }
        return e;
    }

    ExprPtr parse_and() {
        ExprPtr e = parse_not();
        while (peek().kind == Token::Kind::Keyword && peek().text == "and") {
            take();
            e = Expr::make_binary(BinaryOp::And, e, parse_not());
        }
        return e;
    }

    ExprPtr parse_not() {
        if (peek().kind == Token::Kind::Keyword && peek().text == "not") {
            take();
            return Expr::make_unary(UnaryOp::Not, parse_not());
        }
        return parse_comparison();
    }

    ExprPtr parse_comparison() {
        ExprPtr e = parse_additive();
        const Token& t = peek();
        if (t.kind == Token::Kind::Op) {
            BinaryOp op;
            if (t.text == "==") op = BinaryOp::Eq;
            else if (t.text == "!=") op = BinaryOp::Ne;
            else if (t.text == "<") op = BinaryOp::Lt;
            else if (t.text == "<=") op = BinaryOp::Le;
            else if (t.text == ">") op = BinaryOp::Gt;
            else if (t.text == ">=") op = BinaryOp::Ge;
            else return e;
            take();
            // No comparison chaining: a < b < c is rejected downstream
            // because the result feeds a second comparison only via parens.
            return Expr::make_binary(op, e, parse_additive());
        }
        return e;
    }

    ExprPtr parse_additive() {
        ExprPtr e = parse_multiplicative();
        while (peek().kind == Token::Kind::Op && (peek().text == "+" || peek().text == "-")) {
            BinaryOp op = take().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
            e = Expr::make_binary(op, e, parse_multiplicative());
        }
        return e;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr e = parse_unary();
        while (peek().kind == Token::Kind::Op &&
               (peek().text == "*" || peek().text == "//" || peek().text == "%")) {
            std::string op_text = take().text;
            BinaryOp op = op_text == "*"    ? BinaryOp::Mul
                          : op_text == "//" ? BinaryOp::FloorDiv
                                            : BinaryOp::Mod;
            e = Expr::make_binary(op, e, parse_unary());
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (peek().kind == Token::Kind::Op && peek().text == "-") {
            take();
            return Expr::make_unary(UnaryOp::Neg, parse_unary());
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::Int:
                return Expr::make_int(take().int_value);
            case Token::Kind::Str:
                return Expr::make_str(take().str_value);
            case Token::Kind::Ident:
                return Expr::make_var(take().text);
            case Token::Kind::Keyword:
                if (t.text == "True") {
                    take();
                    return Expr::make_bool(true);
                }
                if (t.text == "False") {
                    take();
                    return Expr::make_bool(false);
                }
                fail("unexpected keyword in expression");
            case Token::Kind::Op:
                if (t.text == "(") {
                    take();
                    ExprPtr e = parse_expression();
                    expect_op(")");
                    return e;
                }
                fail("expected expression");
            default:
                fail("expected expression");
        }
        return nullptr;  // unreachable
    }

    const LineRecord& line_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

bool starts_with_else_keyword(const std::string& text) {
    return text.rfind("else", 0) == 0 && (text.size() == 4 || !is_ident_char(text[4]));
}

class BlockParser {
  public:
    explicit BlockParser(std::vector<LineRecord> lines) : lines_(std::move(lines)) {}

    AstBlock parse_top() {
        AstBlock block = parse_block(0);
        if (pos_ < lines_.size()) {
            throw ParseFail(lines_[pos_].number, lines_[pos_].indent_cols + 1,
                            "unexpected indent");
        }
        return block;
    }

  private:
    AstBlock parse_block(int level) {
        AstBlock block;
        while (pos_ < lines_.size() && lines_[pos_].level == level) {
            block.push_back(parse_statement(level));
        }
        if (pos_ < lines_.size() && lines_[pos_].level > level) {
            throw ParseFail(lines_[pos_].number, lines_[pos_].indent_cols + 1,
                            "unexpected indent");
        }
        return block;
    }

    AstBlock parse_indented_block(int parent_level, int header_line) {
        if (pos_ >= lines_.size() || lines_[pos_].level != parent_level + 1) {
            throw ParseFail(header_line, 1, "expected an indented block");
        }
        return parse_block(parent_level + 1);
    }

    StatementPtr parse_statement(int level) {
        const LineRecord& line = lines_[pos_];
        if (!line.text.empty() && line.text[0] == '#') {
            ++pos_;
            return Statement::make_comment(line.text.substr(1), line.number);
        }
        LineParser lp(line, tokenize_line(line));
        const Token& first = lp.peek();
        if (first.kind == Token::Kind::Keyword) {
            if (first.text == "print") {
                lp.take();
                lp.expect_op("(");
                ExprPtr arg = lp.parse_expression();
                lp.expect_op(")");
                lp.expect_end();
                ++pos_;
                return Statement::make_print(arg, line.number);
            }
            if (first.text == "pass") {
                lp.take();
                lp.expect_end();
                ++pos_;
                return Statement::make_pass(line.number);
            }
            if (first.text == "if") {
                lp.take();
                ExprPtr cond = lp.parse_expression();
                lp.expect_op(":");
                lp.expect_end();
                ++pos_;
                AstBlock body = parse_indented_block(level, line.number);
                AstBlock else_body;
                if (pos_ < lines_.size() && lines_[pos_].level == level &&
                    starts_with_else_keyword(lines_[pos_].text)) {
                    const LineRecord& else_line = lines_[pos_];
                    LineParser ep(else_line, tokenize_line(else_line));
                    ep.expect_keyword("else");
                    ep.expect_op(":");
                    ep.expect_end();
                    ++pos_;
                    else_body = parse_indented_block(level, else_line.number);
                }
                return Statement::make_if(cond, std::move(body), std::move(else_body),
                                          line.number);
            }
            if (first.text == "while") {
                lp.take();
                ExprPtr cond = lp.parse_expression();
                lp.expect_op(":");
                lp.expect_end();
                ++pos_;
                AstBlock body = parse_indented_block(level, line.number);
                return Statement::make_while(cond, std::move(body), line.number);
            }
            if (first.text == "for") {
                lp.take();
                std::string var = lp.expect_ident();
                lp.expect_keyword("in");
                lp.expect_keyword("range");
                lp.expect_op("(");
                ExprPtr lo = lp.parse_expression();
                lp.expect_op(",");
                ExprPtr hi = lp.parse_expression();
                lp.expect_op(")");
                lp.expect_op(":");
                lp.expect_end();
                ++pos_;
                AstBlock body = parse_indented_block(level, line.number);
                return Statement::make_for(var, lo, hi, std::move(body), line.number);
            }
            if (first.text == "else") {
                lp.fail("'else' without a matching 'if'");
            }
            lp.fail("statement cannot start with keyword '" + first.text + "'");
        }
        if (first.kind == Token::Kind::Ident) {
            lp.take();
            lp.expect_op("=");
            ExprPtr rhs = lp.parse_expression();
            lp.expect_end();
            ++pos_;
            return Statement::make_assign(first.text, rhs, line.number);
        }
        lp.fail("expected a statement");
        return nullptr;  // unreachable
    }

    std::vector<LineRecord> lines_;
    std::size_t pos_ = 0;
};

std::vector<LineRecord> split_lines(const std::string& source) {
    std::vector<LineRecord> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t end = source.find('\n', start);
        std::string raw = source.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        bool blank = raw.find_first_not_of(' ') == std::string::npos;
        if (!blank) {
            std::size_t indent = raw.find_first_not_of(' ');
            if (raw[indent] == '\t' || raw.find('\t') < indent) {
                throw ParseFail(number, static_cast<int>(indent) + 1,
                                "tab characters are not allowed");
            }
            if (indent % 4 != 0) {
                throw ParseFail(number, static_cast<int>(indent) + 1,
                                "indentation must be a multiple of 4 spaces");
            }
            LineRecord rec;
            rec.number = number;
            rec.level = static_cast<int>(indent / 4);
            rec.text = raw.substr(indent);
            rec.indent_cols = static_cast<int>(indent);
            out.push_back(std::move(rec));
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

}  // namespace

BlockParseResult parse_block_source(const std::string& source) {
    BlockParseResult result;
    try {
        std::vector<LineRecord> lines = split_lines(source);
        if (lines.empty()) {
            throw ParseFail(1, 1, "empty program");
        }
        if (lines.front().level != 0) {
            throw ParseFail(lines.front().number, 1, "unexpected indent");
        }
        BlockParser parser(std::move(lines));
        result.block = parser.parse_top();
    } catch (const ParseFail& f) {
        result.error = f.error;
    }
    return result;
}

}  // namespace ctvp
