#include "expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "errors.hpp"
#include "special_functions.hpp"

namespace fracvar::expr {
namespace {

enum class TokKind {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End
};

struct Token {
    TokKind kind;
    std::size_t offset;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t')) {
            ++pos_;
        }
        current_ = Token{TokKind::End, pos_, 0.0, {}};
        if (pos_ >= src_.size()) return;
        const char c = src_[pos_];
        switch (c) {
            case '+': current_.kind = TokKind::Plus; ++pos_; return;
            case '-': current_.kind = TokKind::Minus; ++pos_; return;
            case '*': current_.kind = TokKind::Star; ++pos_; return;
            case '/': current_.kind = TokKind::Slash; ++pos_; return;
            case '^': current_.kind = TokKind::Caret; ++pos_; return;
            case '(': current_.kind = TokKind::LParen; ++pos_; return;
            case ')': current_.kind = TokKind::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[end])) ||
                    src_[end] == '.')) {
                ++end;
            }
            if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
                std::size_t exp_end = end + 1;
                if (exp_end < src_.size() &&
                    (src_[exp_end] == '+' || src_[exp_end] == '-')) {
                    ++exp_end;
                }
                if (exp_end < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[exp_end]))) {
                    end = exp_end;
                    while (end < src_.size() &&
                           std::isdigit(static_cast<unsigned char>(src_[end]))) {
                        ++end;
                    }
                }
            }
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(src_.data() + pos_,
                                                   src_.data() + end, value);
            if (ec != std::errc() || ptr != src_.data() + end) {
                throw ParseError("malformed number", pos_);
            }
            current_.kind = TokKind::Number;
            current_.number = value;
            pos_ = end;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) ||
                    src_[end] == '_')) {
                ++end;
            }
            current_.kind = TokKind::Ident;
            current_.text = std::string(src_.substr(pos_, end - pos_));
            pos_ = end;
            return;
        }
        std::ostringstream msg;
        msg << "unexpected character '" << c << "' at offset " << pos_;
        throw ParseError(msg.str(), pos_);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    NodeRef parse() {
        NodeRef root = parse_sum();
        if (lex_.peek().kind != TokKind::End) {
            std::ostringstream msg;
            msg << "unexpected trailing input at offset " << lex_.peek().offset;
            throw ParseError(msg.str(), lex_.peek().offset);
        }
        return root;
    }

private:
    NodeRef parse_sum() {
        NodeRef lhs = parse_product();
        for (;;) {
            const TokKind k = lex_.peek().kind;
            if (k != TokKind::Plus && k != TokKind::Minus) return lhs;
            const Token op = lex_.take();
            NodeRef rhs = parse_product();
            lhs = std::make_shared<Node>(Node{
                Binary{k == TokKind::Plus ? BinaryOp::Add : BinaryOp::Sub,
                       std::move(lhs), std::move(rhs)},
                op.offset});
        }
    }

    NodeRef parse_product() {
        NodeRef lhs = parse_unary();
        for (;;) {
            const TokKind k = lex_.peek().kind;
            if (k != TokKind::Star && k != TokKind::Slash) return lhs;
            const Token op = lex_.take();
            NodeRef rhs = parse_unary();
            lhs = std::make_shared<Node>(Node{
                Binary{k == TokKind::Star ? BinaryOp::Mul : BinaryOp::Div,
                       std::move(lhs), std::move(rhs)},
                op.offset});
        }
    }

    NodeRef parse_unary() {
        if (lex_.peek().kind == TokKind::Minus) {
            const Token op = lex_.take();
            return std::make_shared<Node>(Node{Negate{parse_unary()}, op.offset});
        }
        return parse_power();
    }

    NodeRef parse_power() {
        NodeRef base = parse_atom();
        if (lex_.peek().kind != TokKind::Caret) return base;
        const Token op = lex_.take();
        // The exponent re-enters at unary level, which makes '^' associate
        // to the right and admits a negated exponent.
        NodeRef exponent = parse_unary();
        return std::make_shared<Node>(
            Node{Binary{BinaryOp::Pow, std::move(base), std::move(exponent)},
                 op.offset});
    }

    NodeRef parse_atom() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case TokKind::Number: {
                lex_.take();
                return std::make_shared<Node>(Node{Number{t.number}, t.offset});
            }
            case TokKind::LParen: {
                lex_.take();
                NodeRef inner = parse_sum();
                expect(TokKind::RParen, ")");
                return inner;
            }
            case TokKind::Ident:
                return parse_ident();
            default: {
                std::ostringstream msg;
                msg << "expected a number, variable, function call, or '(' at "
                       "offset "
                    << t.offset;
                throw ParseError(msg.str(), t.offset);
            }
        }
    }

    NodeRef parse_ident() {
        const Token t = lex_.take();
        if (t.text == "t" || t.text == "u" || t.text == "v") {
            const VarName name = t.text == "t"   ? VarName::T
                                 : t.text == "u" ? VarName::U
                                                 : VarName::V;
            return std::make_shared<Node>(Node{Variable{name}, t.offset});
        }
        static constexpr std::pair<const char*, CallFn> kFns[] = {
            {"gamma", CallFn::Gamma}, {"exp", CallFn::Exp}, {"ln", CallFn::Ln},
            {"sin", CallFn::Sin},     {"cos", CallFn::Cos}, {"abs", CallFn::Abs},
        };
        for (const auto& [name, fn] : kFns) {
            if (t.text == name) {
                expect(TokKind::LParen, "(");
                NodeRef arg = parse_sum();
                expect(TokKind::RParen, ")");
                return std::make_shared<Node>(Node{Call{fn, std::move(arg)},
                                                   t.offset});
            }
        }
        std::ostringstream msg;
        msg << "unknown name '" << t.text << "' at offset " << t.offset
            << " (variables are t, u, v; functions are gamma, exp, ln, sin, "
               "cos, abs)";
        throw ParseError(msg.str(), t.offset);
    }

    void expect(TokKind kind, const char* what) {
        if (lex_.peek().kind != kind) {
            std::ostringstream msg;
            msg << "expected '" << what << "' at offset " << lex_.peek().offset;
            throw ParseError(msg.str(), lex_.peek().offset);
        }
        lex_.take();
    }

    Lexer lex_;
};

[[noreturn]] void eval_fail(const std::string& what, std::size_t offset) {
    std::ostringstream msg;
    msg << what << " at offset " << offset;
    throw EvaluationError(msg.str(), static_cast<double>(offset));
}

double eval_node(const Node& node, double t, double u, double v);

double eval_call(const Call& call, std::size_t offset, double t, double u,
                 double v) {
    const double x = eval_node(*call.arg, t, u, v);
    switch (call.fn) {
        case CallFn::Gamma:
            try {
                return gamma_fn(x);
            } catch (const DomainError&) {
                eval_fail("gamma pole", offset);
            }
        case CallFn::Exp:
            return std::exp(x);
        case CallFn::Ln:
            if (!(x > 0.0)) eval_fail("ln of a non-positive value", offset);
            return std::log(x);
        case CallFn::Sin:
            return std::sin(x);
        case CallFn::Cos:
            return std::cos(x);
        case CallFn::Abs:
            return std::abs(x);
    }
    eval_fail("unreachable call kind", offset);
}

double eval_node(const Node& node, double t, double u, double v) {
    double result = 0.0;
    if (const auto* num = std::get_if<Number>(&node.payload)) {
        result = num->value;
    } else if (const auto* var = std::get_if<Variable>(&node.payload)) {
        result = var->name == VarName::T ? t : var->name == VarName::U ? u : v;
    } else if (const auto* neg = std::get_if<Negate>(&node.payload)) {
        result = -eval_node(*neg->operand, t, u, v);
    } else if (const auto* call = std::get_if<Call>(&node.payload)) {
        result = eval_call(*call, node.offset, t, u, v);
    } else {
        const auto& bin = std::get<Binary>(node.payload);
        const double lhs = eval_node(*bin.lhs, t, u, v);
        const double rhs = eval_node(*bin.rhs, t, u, v);
        switch (bin.op) {
            case BinaryOp::Add: result = lhs + rhs; break;
            case BinaryOp::Sub: result = lhs - rhs; break;
            case BinaryOp::Mul: result = lhs * rhs; break;
            case BinaryOp::Div:
                if (rhs == 0.0) eval_fail("division by zero", node.offset);
                result = lhs / rhs;
                break;
            case BinaryOp::Pow:
                if (lhs < 0.0 && rhs != std::floor(rhs)) {
                    eval_fail("fractional power of a negative base",
                              node.offset);
                }
                if (lhs == 0.0 && rhs < 0.0) {
                    eval_fail("negative power of zero", node.offset);
                }
                result = std::pow(lhs, rhs);
                break;
        }
    }
    if (!std::isfinite(result)) eval_fail("non-finite value", node.offset);
    return result;
}

int precedence(const Node& node) {
    if (std::holds_alternative<Number>(node.payload) ||
        std::holds_alternative<Variable>(node.payload) ||
        std::holds_alternative<Call>(node.payload)) {
        return 5;
    }
    if (std::holds_alternative<Negate>(node.payload)) return 3;
    switch (std::get<Binary>(node.payload).op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
    }
    return 5;
}

void print_node(const Node& node, std::string& out);

void print_child(const Node& child, int parent_prec, bool needs_paren_on_tie,
                 std::string& out) {
    const int child_prec = precedence(child);
    const bool paren = child_prec < parent_prec ||
                       (child_prec == parent_prec && needs_paren_on_tie);
    if (paren) out.push_back('(');
    print_node(child, out);
    if (paren) out.push_back(')');
}

void print_node(const Node& node, std::string& out) {
    if (const auto* num = std::get_if<Number>(&node.payload)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", num->value);
        out += buf;
    } else if (const auto* var = std::get_if<Variable>(&node.payload)) {
        out.push_back(var->name == VarName::T   ? 't'
                      : var->name == VarName::U ? 'u'
                                                : 'v');
    } else if (const auto* neg = std::get_if<Negate>(&node.payload)) {
        out.push_back('-');
        // The operand must bind at least as tightly as the minus itself.
        print_child(*neg->operand, precedence(node), false, out);
    } else if (const auto* call = std::get_if<Call>(&node.payload)) {
        switch (call->fn) {
            case CallFn::Gamma: out += "gamma"; break;
            case CallFn::Exp: out += "exp"; break;
            case CallFn::Ln: out += "ln"; break;
            case CallFn::Sin: out += "sin"; break;
            case CallFn::Cos: out += "cos"; break;
            case CallFn::Abs: out += "abs"; break;
        }
        out.push_back('(');
        print_node(*call->arg, out);
        out.push_back(')');
    } else {
        const auto& bin = std::get<Binary>(node.payload);
        const int prec = precedence(node);
        const char* op = nullptr;
        switch (bin.op) {
            case BinaryOp::Add: op = " + "; break;
            case BinaryOp::Sub: op = " - "; break;
            case BinaryOp::Mul: op = "*"; break;
            case BinaryOp::Div: op = "/"; break;
            case BinaryOp::Pow: op = "^"; break;
        }
        // '^' associates right, everything else left; ties on the other
        // side get parentheses so the reparse rebuilds the same tree.
        const bool right_assoc = bin.op == BinaryOp::Pow;
        print_child(*bin.lhs, prec, right_assoc, out);
        out += op;
        print_child(*bin.rhs, prec, !right_assoc, out);
    }
}

bool same_node(const Node& x, const Node& y) {
    if (x.payload.index() != y.payload.index()) return false;
    if (const auto* num = std::get_if<Number>(&x.payload)) {
        return num->value == std::get<Number>(y.payload).value;
    }
    if (const auto* var = std::get_if<Variable>(&x.payload)) {
        return var->name == std::get<Variable>(y.payload).name;
    }
    if (const auto* neg = std::get_if<Negate>(&x.payload)) {
        return same_node(*neg->operand, *std::get<Negate>(y.payload).operand);
    }
    if (const auto* call = std::get_if<Call>(&x.payload)) {
        const auto& other = std::get<Call>(y.payload);
        return call->fn == other.fn && same_node(*call->arg, *other.arg);
    }
    const auto& bx = std::get<Binary>(x.payload);
    const auto& by = std::get<Binary>(y.payload);
    return bx.op == by.op && same_node(*bx.lhs, *by.lhs) &&
           same_node(*bx.rhs, *by.rhs);
}

}  // namespace

Expression Expression::parse(std::string_view source) {
    return Expression(Parser(source).parse());
}

double Expression::eval(double t, double u, double v) const {
    return eval_node(*root_, t, u, v);
}

std::string Expression::to_string() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

bool Expression::same_structure(const Expression& other) const {
    return same_node(*root_, *other.root_);
}

}  // namespace fracvar::expr
