#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncf/errors.hpp"
#include "ncf/expansion.hpp"
#include "ncf/real_expr.hpp"

using namespace ncf;

namespace {

Rational random_unit_rational(std::mt19937_64& gen) {
    std::uniform_int_distribution<std::uint64_t> dist;
    for (;;) {
        const std::uint64_t p = dist(gen);
        const std::uint64_t q = dist(gen);
        if (p == 0 || q == 0 || p >= q) continue;
        return Rational(BigInt(static_cast<unsigned long>(p)),
                        BigInt(static_cast<unsigned long>(q)));
    }
}

}  // namespace

TEST_CASE("gauss map on rationals") {
    // Hand iteration: 14/3 - 4 = 2/3.
    CHECK(gauss_map(Rational(3, 7), NcfParams{2}) == Rational(2, 3));
    CHECK(gauss_map(Rational(0), NcfParams{5}) == Rational(0));
    // 3/2 - 1 = 1/2.
    CHECK(gauss_map(Rational(2, 3), NcfParams{1}) == Rational(1, 2));
    CHECK(gauss_map(Rational(1), NcfParams{3}) == Rational(0));
    CHECK_THROWS_AS(gauss_map(Rational(7, 3), NcfParams{2}), std::invalid_argument);
    CHECK_THROWS_AS(gauss_map(Rational(1, 2), NcfParams{0}), std::invalid_argument);
}

TEST_CASE("index map") {
    CHECK(index_map(Rational(3, 7), NcfParams{2}) == BigInt(4));  // floor(14/3)
    CHECK_FALSE(index_map(Rational(0), NcfParams{3}).has_value());
    CHECK(index_map(Rational(1), NcfParams{3}) == BigInt(3));
    // Digits are >= N on (0, 1).
    std::mt19937_64 gen(5);
    for (int t = 0; t < 200; ++t) {
        const Rational x = random_unit_rational(gen);
        for (long n : {1L, 2L, 7L}) {
            const auto a = index_map(x, NcfParams{n});
            REQUIRE(a.has_value());
            CHECK(*a >= n);
        }
    }
}

TEST_CASE("expand: pinned examples") {
    SUBCASE("3/7 with N=2") {
        const ExpandResult r = expand(Rational(3, 7), NcfParams{2}, 10);
        CHECK(r.terminated);
        REQUIRE(r.digits.size() == 2);
        CHECK(r.digits.digits[0] == 4);
        CHECK(r.digits.digits[1] == 3);
    }
    SUBCASE("1/2 with N=2") {
        const ExpandResult r = expand(Rational(1, 2), NcfParams{2}, 10);
        CHECK(r.terminated);
        REQUIRE(r.digits.size() == 1);
        CHECK(r.digits.digits[0] == 4);
    }
    SUBCASE("5/7 with N=3: 21/5 -> a=4, T=1/5; 15 -> a=15, T=0") {
        const ExpandResult r = expand(Rational(5, 7), NcfParams{3}, 10);
        CHECK(r.terminated);
        REQUIRE(r.digits.size() == 2);
        CHECK(r.digits.digits[0] == 4);
        CHECK(r.digits.digits[1] == 15);
    }
    SUBCASE("x = 0 gives the empty terminated expansion") {
        const ExpandResult r = expand(Rational(0), NcfParams{2}, 5);
        CHECK(r.terminated);
        CHECK(r.digits.empty());
    }
    SUBCASE("x = 1 gives [N]") {
        const ExpandResult r = expand(Rational(1), NcfParams{4}, 5);
        CHECK(r.terminated);
        REQUIRE(r.digits.size() == 1);
        CHECK(r.digits.digits[0] == 4);
    }
}

TEST_CASE("eval_digits: pinned examples") {
    CHECK(eval_digits(make_digits(NcfParams{2}, {4, 3})) == Rational(3, 7));
    CHECK(eval_digits(make_digits(NcfParams{2}, {5})) == Rational(2, 5));
    CHECK(eval_digits(make_digits(NcfParams{7}, {9})) == Rational(7, 9));
    // Tail form: 2/(4 + 2/3) = 3/7.
    CHECK(eval_digits(make_digits(NcfParams{2}, {4}), Rational(2, 3)) == Rational(3, 7));
    CHECK_THROWS_AS(eval_digits(DigitSequence{NcfParams{2}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(eval_digits(make_digits(NcfParams{2}, {4}), Rational(1)),
                    std::invalid_argument);
}

TEST_CASE("convergent table: pinned examples") {
    SUBCASE("d=[4,3], N=2") {
        const ConvergentTable t = convergents(make_digits(NcfParams{2}, {4, 3}));
        CHECK(t.p(-1) == 1);
        CHECK(t.p(0) == 0);
        CHECK(t.p(1) == 2);
        CHECK(t.p(2) == 6);
        CHECK(t.q(-1) == 0);
        CHECK(t.q(0) == 1);
        CHECK(t.q(1) == 4);
        CHECK(t.q(2) == 14);
        // Determinant at n=1 from the seeds: p_0 q_1 - p_1 q_0 = -N.
        CHECK(t.determinant(1) == -2);
        CHECK(t.determinant(2) == 4);
    }
    SUBCASE("d=[2,2,2,2], N=1 approaches sqrt(2)-1") {
        const ConvergentTable t = convergents(make_digits(NcfParams{1}, {2, 2, 2, 2}));
        CHECK(t.value(1) == Rational(1, 2));
        CHECK(t.value(2) == Rational(2, 5));
        CHECK(t.value(3) == Rational(5, 12));
        CHECK(t.value(4) == Rational(12, 29));
        // |12/29 - (sqrt 2 - 1)| < 1/29^2, via enclosure arithmetic.
        const Ball root2m1 = RealExpr::parse("sqrt(2)-1").eval(128);
        const Ball err = root2m1.sub(Rational(12, 29)).abs();
        CHECK(err.compare(Rational(1, 841)) == -1);
        // Alternating monotone approach.
        const Ball e1 = root2m1.sub(Rational(1, 2)).abs();
        const Ball e2 = root2m1.sub(Rational(2, 5)).abs();
        const Ball e3 = root2m1.sub(Rational(5, 12)).abs();
        CHECK((e2 - e1).compare(Rational(0)) == -1);
        CHECK((e3 - e2).compare(Rational(0)) == -1);
        CHECK((err - e3).compare(Rational(0)) == -1);
    }
    SUBCASE("digit below N rejected") {
        DigitSequence bad{NcfParams{3}, {BigInt(2)}};
        CHECK_THROWS_AS(convergents(bad), std::invalid_argument);
    }
}

TEST_CASE("approximation error: pinned examples") {
    const DigitSequence d = make_digits(NcfParams{2}, {4, 3});
    const ConvergentTable t = convergents(d);
    // |3/7 - 1/2| = 1/14 < N/q_1^2 = 2/16.
    CHECK(approximation_error(Rational(3, 7), t, 1) == Rational(1, 14));
    CHECK(approximation_error(Rational(3, 7), t, 1) < Rational(2, 16));
    // Terminated case: zero error at the last index.
    CHECK(approximation_error(Rational(3, 7), t, 2) == Rational(0));
    CHECK_THROWS_AS(approximation_error(Rational(3, 7), t, 3), std::out_of_range);
    CHECK_THROWS_AS(approximation_error(Rational(3, 7), t, 0), std::out_of_range);
}

TEST_CASE("expansion property suite: roundtrip, determinant, growth, bounds") {
    std::mt19937_64 gen(20240915);
    const long n_values[] = {1, 2, 3, 7, 20};
    for (int trial = 0; trial < 2000; ++trial) {
        const Rational x = random_unit_rational(gen);
        const NcfParams params{n_values[trial % 5]};
        const ExpandResult r = expand(x, params, 100000);
        REQUIRE(r.terminated);  // numerators strictly decrease
        if (r.digits.empty()) continue;

        // Roundtrip is exact.
        CHECK(eval_digits(r.digits) == x);

        const ConvergentTable t = convergents(r.digits);
        const Rational n_rat(params.n_param);
        Rational n_pow(1);
        for (long n = 1; n <= t.depth(); ++n) {
            n_pow = n_pow * n_rat;
            // Determinant identity (-N)^n, exactly.
            const BigInt expected =
                (n % 2 == 0) ? n_pow.num() : BigInt(-n_pow.num());
            CHECK(t.determinant(n) == expected);
            // q_n >= N^n and q_n > N q_{n-1} for n >= 2.
            CHECK(Rational(t.q(n)) >= n_pow);
            if (n >= 2) CHECK(t.q(n) > params.n_param * t.q(n - 1));
            // All digits at least N.
            CHECK(r.digits.digits[static_cast<std::size_t>(n - 1)] >= params.n_param);
            // Strict quadratic error bound for non-terminal indices.
            if (n < t.depth()) {
                const Rational err = approximation_error(x, t, n);
                CHECK(err < n_pow / Rational(BigInt(t.q(n) * t.q(n))));
                CHECK(err <= Rational(1) / n_pow);
            }
        }
    }
}

TEST_CASE("ball expansion agrees with the exact expansion and encloses the input") {
    std::mt19937_64 gen(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const Rational x = random_unit_rational(gen);
        const NcfParams params{trial % 2 == 0 ? 1L : 2L};
        // A genuinely fuzzy ball around x.
        const Rational eps(1, BigInt("100000000000000000000000000000000000000"));
        const Ball b = Ball::from_interval(x - eps, x + eps);
        const ExpandResult exact = expand(x, params, 12);
        const ExpandResult fuzzy = expand(b, params, 12);
        // The fuzzy expansion is a prefix of the exact one.
        REQUIRE(fuzzy.digits.size() <= exact.digits.size());
        for (std::size_t k = 0; k < fuzzy.digits.size(); ++k) {
            CHECK(fuzzy.digits.digits[k] == exact.digits.digits[k]);
        }
        CHECK_FALSE(fuzzy.terminated);  // a fuzzy ball can never certify termination
    }
}

TEST_CASE("expression expansion with precision escalation") {
    // sqrt(2)-1 = [2, 2, 2, ...] for N=1.
    const RealExpr x = RealExpr::parse("sqrt(2)-1");
    const ExpandResult r = expand(x, NcfParams{1}, 30);
    CHECK_FALSE(r.terminated);
    CHECK_FALSE(r.precision_exhausted);
    REQUIRE(r.digits.size() == 30);
    for (const BigInt& a : r.digits.digits) CHECK(a == 2);

    // The periodic point (sqrt(15)-3)/2 = [4, 3, 4, 3, ...] for N=2.
    const ExpandResult p = expand(RealExpr::parse("(sqrt(15)-3)/2"), NcfParams{2}, 11);
    REQUIRE(p.digits.size() == 11);
    for (std::size_t k = 0; k < 11; ++k) {
        CHECK(p.digits.digits[k] == (k % 2 == 0 ? 4 : 3));
    }

    // A starved precision cap surfaces precision_exhausted.
    const ExpandResult starved =
        expand(RealExpr::parse("sqrt(2)-1"), NcfParams{1}, 4000, PrecisionPolicy{64, 128});
    CHECK(starved.precision_exhausted);
    CHECK(starved.digits.size() < 4000);
}

TEST_CASE("ball gauss map propagates ambiguity") {
    // Enclosure straddling the branch boundary 1/2 (digits 1 vs 2 for N=1).
    const Ball straddle = Ball::from_interval(Rational(1, 2) - Rational(1, 100),
                                              Rational(1, 2) + Rational(1, 100));
    CHECK_THROWS_AS(gauss_map(straddle, NcfParams{1}), AmbiguousEnclosureError);
    CHECK_THROWS_AS(index_map(straddle, NcfParams{1}), AmbiguousEnclosureError);

    // A decided enclosure maps soundly: T(x) enclosure contains T(mid).
    const Ball fine = Ball::from_interval(Rational(3, 7) - Rational(1, 1000000),
                                          Rational(3, 7) + Rational(1, 1000000));
    const Ball image = gauss_map(fine, NcfParams{2});
    CHECK(image.contains(Rational(2, 3)));
}
