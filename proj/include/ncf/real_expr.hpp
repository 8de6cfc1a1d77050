#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "ncf/ball.hpp"
#include "ncf/rational.hpp"

namespace ncf {

// A small arithmetic expression over rationals and square roots
// ("(sqrt(15)-3)/2"), evaluable to a Ball at any working precision. This is
// how irrational inputs enter the library: the expression can be
// re-evaluated when digit extraction needs a tighter enclosure.
class RealExpr {
public:
    static RealExpr constant(Rational value);
    static RealExpr sqrt_of(RealExpr inner);
    // Grammar: expr = term {('+'|'-') term}; term = factor {('*'|'/') factor};
    // factor = ['-'] (number | 'sqrt' '(' expr ')' | '(' expr ')').
    // Throws std::invalid_argument on malformed input.
    static RealExpr parse(std::string_view text);

    Ball eval(mpfr_prec_t prec = Ball::kDefaultPrecision) const;

    // Exact value when the expression contains no sqrt; nullopt otherwise.
    std::optional<Rational> rational_value() const;

    friend RealExpr operator+(RealExpr a, RealExpr b);
    friend RealExpr operator-(RealExpr a, RealExpr b);
    friend RealExpr operator*(RealExpr a, RealExpr b);
    friend RealExpr operator/(RealExpr a, RealExpr b);
    RealExpr operator-() const;

private:
    enum class Op { Constant, Sqrt, Neg, Add, Sub, Mul, Div };

    struct Node {
        Op op;
        Rational value;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    explicit RealExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    static RealExpr make(Op op, RealExpr a, RealExpr b = RealExpr(nullptr));

    std::shared_ptr<const Node> root_;
};

}  // namespace ncf
