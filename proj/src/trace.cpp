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

#include "ctvp/trace.hpp"

#include <stdexcept>

namespace ctvp {

namespace {

struct Fault {
    std::string message;
};

struct StepLimit {};

class Interpreter {
  public:
    Interpreter(std::size_t fuel) : fuel_(fuel) {}

    void run(const AstBlock& block) {
        for (const auto& s : block) exec(*s);
    }

    ExecutionTrace take_trace() {
        ExecutionTrace t;
        t.steps = std::move(steps_);
        t.final_output = join_output();
        return t;
    }

    std::string join_output() const {
        std::string out;
        for (std::size_t i = 0; i < output_lines_.size(); ++i) {
            if (i > 0) out += '\n';
            out += output_lines_[i];
        }
        return out;
    }

  private:
    void charge() {
        if (fuel_ == 0) throw StepLimit{};
        --fuel_;
    }

    void exec(const Statement& s) {
        switch (s.kind) {
            case Statement::Kind::Assign: {
                charge();
                env_[s.name] = eval(*s.expr);
                steps_.push_back({s.line, env_});
                break;
            }
            case Statement::Kind::Print: {
                charge();
                output_lines_.push_back(value_to_display(eval(*s.expr)));
                steps_.push_back({s.line, env_});
                break;
            }
            case Statement::Kind::If: {
                charge();
                if (truth(eval(*s.expr))) {
                    for (const auto& c : s.body) exec(*c);
                } else {
                    for (const auto& c : s.else_body) exec(*c);
                }
                break;
            }
            case Statement::Kind::While: {
                for (;;) {
                    charge();  // one unit per condition evaluation
                    if (!truth(eval(*s.expr))) break;
                    for (const auto& c : s.body) exec(*c);
                }
                break;
            }
            case Statement::Kind::ForRange: {
                charge();
                std::int64_t lo = int_of(eval(*s.range_lo), "range bound");
                std::int64_t hi = int_of(eval(*s.range_hi), "range bound");
                for (std::int64_t i = lo; i < hi; ++i) {
                    charge();  // one unit per iteration binding
                    env_[s.name] = i;
                    for (const auto& c : s.body) exec(*c);
                }
                break;
            }
            case Statement::Kind::Pass:
                charge();
                break;
            case Statement::Kind::Comment:
                break;
        }
    }

    bool truth(const Value& v) {
        if (!is_bool(v)) throw Fault{"condition is not a boolean"};
        return as_bool(v);
    }

    std::int64_t int_of(const Value& v, const char* what) {
        if (!is_int(v)) throw Fault{std::string(what) + " is not an integer"};
        return as_int(v);
    }

    Value eval(const Expr& e) {
        switch (e.kind) {
            case Expr::Kind::IntLit: return e.int_value;
            case Expr::Kind::BoolLit: return e.bool_value;
            case Expr::Kind::StrLit: return e.str_value;
            case Expr::Kind::Var: {
                auto it = env_.find(e.name);
                if (it == env_.end()) throw Fault{"undefined variable '" + e.name + "'"};
                return it->second;
            }
            case Expr::Kind::Unary: {
                if (e.un_op == UnaryOp::Neg) {
                    std::int64_t v = int_of(eval(*e.lhs), "negation operand");
                    return static_cast<std::int64_t>(
                        -static_cast<std::uint64_t>(v));  // wraps on INT64_MIN
                }
                Value v = eval(*e.lhs);
                if (!is_bool(v)) throw Fault{"'not' operand is not a boolean"};
                return !as_bool(v);
            }
            case Expr::Kind::Binary: return eval_binary(e);
        }
        throw Fault{"unreachable expression kind"};
    }

    Value eval_binary(const Expr& e) {
        // and/or short-circuit before the right operand is evaluated.
        if (e.bin_op == BinaryOp::And || e.bin_op == BinaryOp::Or) {
            Value l = eval(*e.lhs);
            if (!is_bool(l)) throw Fault{"logical operand is not a boolean"};
            bool lv = as_bool(l);
            if (e.bin_op == BinaryOp::And && !lv) return false;
            if (e.bin_op == BinaryOp::Or && lv) return true;
            Value r = eval(*e.rhs);
            if (!is_bool(r)) throw Fault{"logical operand is not a boolean"};
            return as_bool(r);
        }

        Value l = eval(*e.lhs);
        Value r = eval(*e.rhs);
        switch (e.bin_op) {
            case BinaryOp::Add:
                if (is_int(l) && is_int(r)) {
                    return static_cast<std::int64_t>(static_cast<std::uint64_t>(as_int(l)) +
                                                     static_cast<std::uint64_t>(as_int(r)));
                }
                if (is_str(l) && is_str(r)) return as_str(l) + as_str(r);
                throw Fault{"'+' requires two integers or two strings"};
            case BinaryOp::Sub:
                return static_cast<std::int64_t>(
                    static_cast<std::uint64_t>(int_of(l, "'-' operand")) -
                    static_cast<std::uint64_t>(int_of(r, "'-' operand")));
            case BinaryOp::Mul:
                return static_cast<std::int64_t>(
                    static_cast<std::uint64_t>(int_of(l, "'*' operand")) *
                    static_cast<std::uint64_t>(int_of(r, "'*' operand")));
            case BinaryOp::FloorDiv: {
                std::int64_t a = int_of(l, "'//' operand");
                std::int64_t b = int_of(r, "'//' operand");
                if (b == 0) throw Fault{"division by zero"};
                std::int64_t q = a / b;
                if ((a % b != 0) && ((a < 0) != (b < 0))) --q;  // floor semantics
                return q;
            }
            case BinaryOp::Mod: {
                std::int64_t a = int_of(l, "'%' operand");
                std::int64_t b = int_of(r, "'%' operand");
                if (b == 0) throw Fault{"division by zero"};
                std::int64_t m = a % b;
                if (m != 0 && ((m < 0) != (b < 0))) m += b;  // result sign follows divisor
                return m;
            }
            case BinaryOp::Eq:
            case BinaryOp::Ne: {
                if (l.index() != r.index()) throw Fault{"'==' requires operands of one type"};
                bool eq = l == r;
                return e.bin_op == BinaryOp::Eq ? eq : !eq;
            }
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: {
                int cmp;
                if (is_int(l) && is_int(r)) {
                    cmp = as_int(l) < as_int(r) ? -1 : as_int(l) == as_int(r) ? 0 : 1;
                } else if (is_str(l) && is_str(r)) {
                    int c = as_str(l).compare(as_str(r));
                    cmp = c < 0 ? -1 : c == 0 ? 0 : 1;
                } else {
                    throw Fault{"ordering requires two integers or two strings"};
                }
                switch (e.bin_op) {
                    case BinaryOp::Lt: return cmp < 0;
                    case BinaryOp::Le: return cmp <= 0;
                    case BinaryOp::Gt: return cmp > 0;
                    default: return cmp >= 0;
                }
            }
            default:
                throw Fault{"unreachable binary operator"};
        }
    }

    std::size_t fuel_;
    Env env_;
    std::vector<TraceStep> steps_;
    std::vector<std::string> output_lines_;
};

}  // namespace

ExecutionTrace interpret(const Program& p, std::size_t max_steps) {
    if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
    Interpreter interp(max_steps);
    try {
        interp.run(p.ast);
    } catch (const Fault& f) {
        ExecutionTrace t = interp.take_trace();
        t.valid = false;
        t.error = f.message;
        return t;
    } catch (const StepLimit&) {
        ExecutionTrace t = interp.take_trace();
        t.valid = false;
        t.error = "step limit exceeded";
        return t;
    }
    return interp.take_trace();
}

ExecutionTrace canonicalize_trace(
    const ExecutionTrace& trace,
    const std::vector<std::pair<std::string, std::string>>& rename_map,
    const std::vector<std::string>& injected_vars,
    const std::set<std::string>& original_ids) {
    if (!trace.valid) return trace;

    std::map<std::string, std::string> inverse;
    for (const auto& [from, to] : rename_map) inverse[to] = from;
    std::set<std::string> injected(injected_vars.begin(), injected_vars.end());

    auto project = [&](const Env& env) {
        Env out;
        for (const auto& [key, value] : env) {
            if (injected.count(key)) continue;
            auto it = inverse.find(key);
            const std::string& name = it != inverse.end() ? it->second : key;
            if (!original_ids.count(name)) continue;
            out.emplace(name, value);
        }
        return out;
    };

    ExecutionTrace out;
    out.final_output = trace.final_output;
    out.valid = trace.valid;
    out.error = trace.error;

    Env prev_raw;
    Env prev_projected;
    for (const TraceStep& step : trace.steps) {
        // Keys added or changed relative to the previous raw snapshot.
        bool delta_nonempty = false;
        bool delta_injected_only = true;
        for (const auto& [key, value] : step.env) {
            auto it = prev_raw.find(key);
            if (it == prev_raw.end() || !(it->second == value)) {
                delta_nonempty = true;
                if (!injected.count(key)) delta_injected_only = false;
            }
        }
        Env projected = project(step.env);
        bool drop = delta_nonempty && delta_injected_only && projected == prev_projected;
        if (!drop) {
            out.steps.push_back({step.line, projected});
        }
        prev_raw = step.env;
        prev_projected = std::move(projected);
    }
    return out;
}

}  // namespace ctvp
