#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "errors.hpp"
#include "expr.hpp"
#include "special_functions.hpp"

using namespace fracvar;
using expr::Expression;

namespace {

void check_eval(const char* src, double t, double u, double v, double want) {
    const Expression e = Expression::parse(src);
    CHECK(std::abs(e.eval(t, u, v) - want) <=
          1e-12 * std::max(1.0, std::abs(want)));
}

}  // namespace

TEST_CASE("literal, variable, and operator evaluation") {
    check_eval("42", 0, 0, 0, 42.0);
    check_eval("3.5e-2", 0, 0, 0, 0.035);
    check_eval("t + 2*u - v/4", 1.0, 2.0, 8.0, 3.0);
    check_eval("2^3^2", 0, 0, 0, 512.0);        // right-associative
    check_eval("(2^3)^2", 0, 0, 0, 64.0);
    check_eval("-t^2", 3.0, 0, 0, -9.0);        // unary binds looser than ^
    check_eval("(-t)^2", 3.0, 0, 0, 9.0);
    check_eval("2*-3", 0, 0, 0, -6.0);
    check_eval("v^2", 0, 0, 1.5, 2.25);
    check_eval("gamma(1.5)", 0, 0, 0, 0.88622692545275801365);
    check_eval("exp(ln(7))", 0, 0, 0, 7.0);
    check_eval("sin(t)^2 + cos(t)^2", 0.7, 0, 0, 1.0);
    check_eval("abs(-5) + abs(2)", 0, 0, 0, 7.0);
    check_eval("1 - 2 - 3", 0, 0, 0, -4.0);     // left-associative
}

TEST_CASE("parse errors carry byte offsets") {
    auto offset_of = [](const char* src) -> std::size_t {
        try {
            Expression::parse(src);
        } catch (const ParseError& e) {
            return e.offset;
        }
        FAIL("expected ParseError for: ", src);
        return 0;
    };
    CHECK(offset_of("1 + ") == 4);
    CHECK(offset_of("(1 + 2") == 6);
    CHECK(offset_of("1 + %") == 4);
    CHECK(offset_of("foo(1)") == 0);
    CHECK(offset_of("t + x") == 4);
    CHECK(offset_of("sin 2") == 4);
    CHECK(offset_of("1 2") == 2);
    CHECK(offset_of("") == 0);
}

TEST_CASE("evaluation errors carry the offending construct's offset") {
    auto eval_offset = [](const char* src, double t) -> double {
        const Expression e = Expression::parse(src);
        try {
            e.eval(t, 0.0, 0.0);
        } catch (const EvaluationError& err) {
            return err.location;
        }
        FAIL("expected EvaluationError for: ", src);
        return -1.0;
    };
    CHECK(eval_offset("1 + 1/t", 0.0) == 5.0);
    CHECK(eval_offset("ln(t - 2)", 1.0) == 0.0);
    CHECK(eval_offset("2 + (-3)^t", 0.5) == 8.0);
    CHECK(eval_offset("gamma(-1)", 0.0) == 0.0);
    CHECK(eval_offset("exp(1e6)", 0.0) == 0.0);  // overflow is not a value
    CHECK(eval_offset("t^-1", 0.0) == 1.0);
}

TEST_CASE("well-defined negative powers still work") {
    check_eval("(-2)^3", 0, 0, 0, -8.0);
    check_eval("(-2)^-2", 0, 0, 0, 0.25);
    check_eval("t^-2", 4.0, 0, 0, 0.0625);
}

TEST_CASE("printing parses back to the same tree on crafted cases") {
    const char* sources[] = {
        "t + u*v",
        "(t + u)*v",
        "t - (u - v)",
        "t - u - v",
        "2^3^2",
        "(2^3)^2",
        "-t^2",
        "(-t)^2",
        "-(t*u)",
        "t/(u/v)",
        "t/u/v",
        "gamma(t + 1) * sin(u)^2",
        "abs(-t) + exp(-(u^2))",
        "0.1 + 1e-07",
    };
    for (const char* src : sources) {
        const Expression e = Expression::parse(src);
        const Expression back = Expression::parse(e.to_string());
        CHECK_MESSAGE(e.same_structure(back), "printed form: ", e.to_string());
    }
}

namespace {

expr::NodeRef random_tree(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> leaf_pick(0, 3);
    std::uniform_int_distribution<int> node_pick(0, 7);
    std::uniform_real_distribution<double> num(0.0, 10.0);
    using expr::Node;
    if (depth <= 0 || node_pick(rng) == 7) {
        switch (leaf_pick(rng)) {
            case 0: return std::make_shared<Node>(Node{expr::Number{num(rng)}, 0});
            case 1:
                return std::make_shared<Node>(
                    Node{expr::Variable{expr::VarName::T}, 0});
            case 2:
                return std::make_shared<Node>(
                    Node{expr::Variable{expr::VarName::U}, 0});
            default:
                return std::make_shared<Node>(
                    Node{expr::Variable{expr::VarName::V}, 0});
        }
    }
    switch (node_pick(rng)) {
        case 0:
            return std::make_shared<Node>(
                Node{expr::Negate{random_tree(rng, depth - 1)}, 0});
        case 1: {
            std::uniform_int_distribution<int> fn_pick(0, 5);
            return std::make_shared<Node>(
                Node{expr::Call{static_cast<expr::CallFn>(fn_pick(rng)),
                                random_tree(rng, depth - 1)},
                     0});
        }
        default: {
            std::uniform_int_distribution<int> op_pick(0, 4);
            return std::make_shared<Node>(
                Node{expr::Binary{static_cast<expr::BinaryOp>(op_pick(rng)),
                                  random_tree(rng, depth - 1),
                                  random_tree(rng, depth - 1)},
                     0});
        }
    }
}

}  // namespace

TEST_CASE("printing parses back to the same tree on random asts") {
    std::mt19937_64 rng(271828u);
    for (int i = 0; i < 100; ++i) {
        const Expression e(random_tree(rng, 5));
        const std::string text = e.to_string();
        const Expression back = Expression::parse(text);
        CHECK_MESSAGE(e.same_structure(back), "printed form: ", text);
    }
}

TEST_CASE("structural equality ignores offsets but not shape") {
    const Expression a = Expression::parse("t +  u");
    const Expression b = Expression::parse("t+u");
    const Expression c = Expression::parse("u + t");
    CHECK(a.same_structure(b));
    CHECK_FALSE(a.same_structure(c));
}
