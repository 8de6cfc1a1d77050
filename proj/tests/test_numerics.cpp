#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncf/ball.hpp"
#include "ncf/interval.hpp"
#include "ncf/rational.hpp"
#include "ncf/real_expr.hpp"

using namespace ncf;

namespace {

// Independent big-integer oracle: combines a/b and c/d by cross
// multiplication on raw mpz values, then compares without going through
// Rational arithmetic.
bool add_matches_oracle(const Rational& a, const Rational& b, const Rational& sum) {
    const BigInt num = a.num() * b.den() + b.num() * a.den();
    const BigInt den = a.den() * b.den();
    return sum.num() * den == num * sum.den();
}

bool mul_matches_oracle(const Rational& a, const Rational& b, const Rational& prod) {
    const BigInt num = a.num() * b.num();
    const BigInt den = a.den() * b.den();
    return prod.num() * den == num * prod.den();
}

Rational random_rational(std::mt19937_64& gen, int bits = 64) {
    std::uniform_int_distribution<std::uint64_t> dist;
    const std::uint64_t mask = bits >= 64 ? ~0ull : ((1ull << bits) - 1);
    BigInt num(static_cast<unsigned long>(dist(gen) & mask));
    BigInt den(static_cast<unsigned long>((dist(gen) & mask) | 1));
    if (dist(gen) & 1) num = -num;
    return Rational(num, den);
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(rational_parse("3/7") == Rational(3, 7));
    CHECK(rational_parse("6/14") == Rational(3, 7));
    CHECK(rational_parse("0.25") == Rational(1, 4));
    CHECK(rational_parse("-2/4") == Rational(-1, 2));
    CHECK(rational_parse("5") == Rational(5));
    CHECK(rational_parse("-0.5") == Rational(-1, 2));
    CHECK(rational_parse(" 12/30 ") == Rational(2, 5));

    CHECK_THROWS_AS(rational_parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rational_parse("1//2"), std::invalid_argument);
    CHECK_THROWS_AS(rational_parse(""), std::invalid_argument);
    CHECK_THROWS_AS(rational_parse("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(rational_parse("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(rational_parse("1/0"), std::domain_error);
}

TEST_CASE("rational canonical form") {
    const Rational r(BigInt(-6), BigInt(-14));
    CHECK(r.num() == 3);
    CHECK(r.den() == 7);
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational(6, -4).str() == "-3/2");
}

TEST_CASE("parse/format roundtrip and arithmetic vs cross-multiplication oracle") {
    std::mt19937_64 gen(20240601);
    for (int trial = 0; trial < 10000; ++trial) {
        const Rational a = random_rational(gen);
        const Rational b = random_rational(gen);
        CHECK(rational_parse(a.str()) == a);
        CHECK(add_matches_oracle(a, b, a + b));
        CHECK(mul_matches_oracle(a, b, a * b));
    }
}

TEST_CASE("rational floor and helpers") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(4).floor() == 4);
    CHECK(Rational(3, 7).reciprocal() == Rational(7, 3));
    CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("real_floor_safe on decided and ambiguous enclosures") {
    // value 4.6667, tiny radius: far from an integer.
    const Ball far = Ball::from_interval(Rational(46667, 10000) - Rational(1, BigInt("1000000000000000000000000000000")),
                                         Rational(46667, 10000) + Rational(1, BigInt("1000000000000000000000000000000")));
    const auto f = real_floor_safe(far);
    REQUIRE(f.has_value());
    CHECK(*f == 4);

    // Enclosure straddling 5.
    const Ball at5 = Ball::from_interval(Rational(5) - Rational(1, 10000000000L),
                                         Rational(5) + Rational(1, 10000000000L));
    CHECK_FALSE(real_floor_safe(at5).has_value());

    // 2.999999 with radius 1e-9: the enclosure contains no integer, so the
    // floor is certain (it straddles nothing).
    const Ball near3 = Ball::from_interval(Rational(2999999, 1000000) - Rational(1, 1000000000L),
                                           Rational(2999999, 1000000) + Rational(1, 1000000000L));
    const auto g = real_floor_safe(near3);
    REQUIRE(g.has_value());
    CHECK(*g == 2);

    // Widen the radius past the gap to 3 and the floor becomes ambiguous.
    const Ball wide = Ball::from_interval(Rational(2999999, 1000000) - Rational(1, 100000),
                                          Rational(2999999, 1000000) + Rational(1, 100000));
    CHECK_FALSE(real_floor_safe(wide).has_value());

    // Exact integer ball.
    const Ball exact(Rational(7));
    const auto h = real_floor_safe(exact);
    REQUIRE(h.has_value());
    CHECK(*h == 7);
}

TEST_CASE("ball arithmetic soundly encloses the exact result") {
    std::mt19937_64 gen(77);
    std::uniform_int_distribution<int> op_dist(0, 3);
    int divisions = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Rational a = random_rational(gen, 40);
        const Rational b = random_rational(gen, 40);
        const Ball ba(a, 64);  // low precision forces visible rounding
        const Ball bb(b, 64);
        switch (op_dist(gen)) {
            case 0: {
                CHECK((ba + bb).contains(a + b));
                break;
            }
            case 1: {
                CHECK((ba - bb).contains(a - b));
                break;
            }
            case 2: {
                CHECK((ba * bb).contains(a * b));
                break;
            }
            default: {
                if (bb.lower().sign() * bb.upper().sign() > 0) {
                    CHECK((ba / bb).contains(a / b));
                    ++divisions;
                }
                break;
            }
        }
    }
    CHECK(divisions > 1000);  // the division branch was actually exercised
}

TEST_CASE("ball sqrt soundness") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 2000; ++trial) {
        const Rational a = random_rational(gen, 32).abs();
        const Ball s = ball_sqrt(Ball(a, 128));
        // (sqrt a)^2 must enclose a.
        CHECK((s * s).contains(a));
    }
    CHECK_THROWS_AS(ball_sqrt(Ball(Rational(-1))), std::domain_error);
}

TEST_CASE("ball comparison against rationals") {
    const Ball b = Ball::from_interval(Rational(1, 3), Rational(1, 2));
    CHECK(b.compare(Rational(1, 4)) == 1);
    CHECK(b.compare(Rational(2, 3)) == -1);
    CHECK_FALSE(b.compare(Rational(2, 5)).has_value());

    // Exact comparison needs a dyadic midpoint (radius zero).
    const Ball exact(Rational(3, 8));
    CHECK(exact.compare(Rational(3, 8)) == 0);
    // A non-dyadic constant carries a one-ulp radius and stays undecided
    // only against itself.
    const Ball third(Rational(1, 3));
    CHECK_FALSE(third.compare(Rational(1, 3)).has_value());
    CHECK(third.compare(Rational(1, 4)) == 1);
}

TEST_CASE("real expressions parse and evaluate") {
    const Ball r = RealExpr::parse("(sqrt(15)-3)/2").eval(256);
    // 2x^2 + 6x - 3 = 0 at the periodic point.
    const Ball two(Rational(2), 256);
    const Ball six(Rational(6), 256);
    const Ball three(Rational(3), 256);
    const Ball residual = two * r * r + six * r - three;
    CHECK(residual.contains(Rational(0)));
    CHECK(residual.radius_double() < 1e-60);

    CHECK(RealExpr::parse("3/7").rational_value() == Rational(3, 7));
    CHECK(RealExpr::parse("1 - 0.25").rational_value() == Rational(3, 4));
    CHECK_FALSE(RealExpr::parse("sqrt(2)").rational_value().has_value());
    CHECK_THROWS_AS(RealExpr::parse("sqrt(2"), std::invalid_argument);
    CHECK_THROWS_AS(RealExpr::parse("2 +"), std::invalid_argument);
    CHECK_THROWS_AS(RealExpr::parse("bogus(3)"), std::invalid_argument);
}

TEST_CASE("interval basics") {
    const RationalInterval iv(Rational(2, 5), Rational(1, 2), true, true);
    CHECK(iv.width() == Rational(1, 10));
    CHECK(iv.contains(Rational(9, 20)));
    CHECK_FALSE(iv.contains(Rational(2, 5)));
    CHECK_FALSE(iv.contains(Rational(1, 2)));
    CHECK_THROWS_AS(RationalInterval(Rational(1), Rational(0)), std::invalid_argument);
}

TEST_CASE("ball serialization strings") {
    const Ball b(Rational(1, 3), 128);
    CHECK(b.value_string().find("3.3333") != std::string::npos);
    CHECK(b.radius_string().find("e") != std::string::npos);
}
