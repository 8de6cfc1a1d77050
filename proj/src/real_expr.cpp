#include "ncf/real_expr.hpp"

#include <cctype>
#include <stdexcept>

namespace ncf {

RealExpr RealExpr::constant(Rational value) {
    auto node = std::make_shared<Node>();
    node->op = Op::Constant;
    node->value = std::move(value);
    return RealExpr(std::move(node));
}

RealExpr RealExpr::make(Op op, RealExpr a, RealExpr b) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->lhs = std::move(a.root_);
    node->rhs = std::move(b.root_);
    return RealExpr(std::move(node));
}

RealExpr RealExpr::sqrt_of(RealExpr inner) { return make(Op::Sqrt, std::move(inner)); }
RealExpr operator+(RealExpr a, RealExpr b) { return RealExpr::make(RealExpr::Op::Add, std::move(a), std::move(b)); }
RealExpr operator-(RealExpr a, RealExpr b) { return RealExpr::make(RealExpr::Op::Sub, std::move(a), std::move(b)); }
RealExpr operator*(RealExpr a, RealExpr b) { return RealExpr::make(RealExpr::Op::Mul, std::move(a), std::move(b)); }
RealExpr operator/(RealExpr a, RealExpr b) { return RealExpr::make(RealExpr::Op::Div, std::move(a), std::move(b)); }
RealExpr RealExpr::operator-() const { return make(Op::Neg, *this); }

Ball RealExpr::eval(mpfr_prec_t prec) const {
    const Node& n = *root_;
    switch (n.op) {
        case Op::Constant:
            return Ball(n.value, prec);
        case Op::Sqrt:
            return ball_sqrt(RealExpr(n.lhs).eval(prec));
        case Op::Neg:
            return -RealExpr(n.lhs).eval(prec);
        case Op::Add:
            return RealExpr(n.lhs).eval(prec) + RealExpr(n.rhs).eval(prec);
        case Op::Sub:
            return RealExpr(n.lhs).eval(prec) - RealExpr(n.rhs).eval(prec);
        case Op::Mul:
            return RealExpr(n.lhs).eval(prec) * RealExpr(n.rhs).eval(prec);
        case Op::Div:
            return RealExpr(n.lhs).eval(prec) / RealExpr(n.rhs).eval(prec);
    }
    throw std::logic_error("unreachable expression kind");
}

std::optional<Rational> RealExpr::rational_value() const {
    const Node& n = *root_;
    switch (n.op) {
        case Op::Constant:
            return n.value;
        case Op::Sqrt:
            return std::nullopt;
        case Op::Neg: {
            const auto v = RealExpr(n.lhs).rational_value();
            return v ? std::optional<Rational>(-*v) : std::nullopt;
        }
        default: {
            const auto a = RealExpr(n.lhs).rational_value();
            const auto b = RealExpr(n.rhs).rational_value();
            if (!a || !b) return std::nullopt;
            switch (n.op) {
                case Op::Add: return *a + *b;
                case Op::Sub: return *a - *b;
                case Op::Mul: return *a * *b;
                case Op::Div: return *a / *b;
                default: break;
            }
            return std::nullopt;
        }
    }
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    RealExpr parse() {
        RealExpr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters");
        return e;
    }

private:
    RealExpr expr() {
        RealExpr e = term();
        for (;;) {
            skip_ws();
            if (consume('+')) {
                e = std::move(e) + term();
            } else if (consume('-')) {
                e = std::move(e) - term();
            } else {
                return e;
            }
        }
    }

    RealExpr term() {
        RealExpr e = factor();
        for (;;) {
            skip_ws();
            if (consume('*')) {
                e = std::move(e) * factor();
            } else if (consume('/')) {
                e = std::move(e) / factor();
            } else {
                return e;
            }
        }
    }

    RealExpr factor() {
        skip_ws();
        if (consume('-')) return -factor();
        if (consume('+')) return factor();
        if (consume('(')) {
            RealExpr e = expr();
            expect(')');
            return e;
        }
        if (match_word("sqrt")) {
            skip_ws();
            expect('(');
            RealExpr e = expr();
            expect(')');
            return RealExpr::sqrt_of(std::move(e));
        }
        return number();
    }

    RealExpr number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ == start) fail("number expected");
        return RealExpr::constant(rational_parse(s_.substr(start, pos_ - start)));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool match_word(std::string_view w) {
        if (s_.substr(pos_).starts_with(w)) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!consume(c)) fail(std::string("'") + c + "' expected");
    }

    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("bad real expression at offset " + std::to_string(pos_) +
                                    ": " + why);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

RealExpr RealExpr::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace ncf
