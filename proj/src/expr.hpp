#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace fracvar::expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class CallFn { Gamma, Exp, Ln, Sin, Cos, Abs };
enum class VarName { T, U, V };

struct Node;
using NodeRef = std::shared_ptr<const Node>;

struct Number {
    double value;
};
struct Variable {
    VarName name;
};
struct Negate {
    NodeRef operand;
};
struct Call {
    CallFn fn;
    NodeRef arg;
};
struct Binary {
    BinaryOp op;
    NodeRef lhs;
    NodeRef rhs;
};

struct Node {
    std::variant<Number, Variable, Negate, Call, Binary> payload;
    std::size_t offset;  // byte position of the construct in the source text
};

// Arithmetic over the variables t, u, v with the functions gamma, exp, ln,
// sin, cos, abs.  '^' binds tightest and associates right, then unary
// minus, then '*' '/', then '+' '-'.
class Expression {
public:
    // Throws ParseError (with byte offset) on malformed input.
    static Expression parse(std::string_view source);

    // Throws EvaluationError on ln/division/fractional-power domain
    // violations or non-finite intermediates; the error's location is the
    // byte offset of the offending construct.
    double eval(double t, double u, double v) const;

    // Canonical text that parses back to the same tree.
    std::string to_string() const;

    // Tree comparison ignoring source offsets.
    bool same_structure(const Expression& other) const;

    const NodeRef& root() const { return root_; }
    explicit Expression(NodeRef root) : root_(std::move(root)) {}

private:
    NodeRef root_;
};

}  // namespace fracvar::expr
