#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "ncf/cylinders.hpp"
#include "ncf/errors.hpp"
#include "ncf/real_expr.hpp"

using namespace ncf;

namespace {

// All digit strings of length <= max_len with digits in [N, N+span].
void enumerate_words(long n, int max_len, long span, std::vector<long>& cur,
                     const std::function<void(const std::vector<long>&)>& visit) {
    if (!cur.empty()) visit(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (long d = n; d <= n + span; ++d) {
        cur.push_back(d);
        enumerate_words(n, max_len, span, cur, visit);
        cur.pop_back();
    }
}

Ball periodic_point_43() {  // [4,3,4,3,...] for N=2: (sqrt(15)-3)/2
    return RealExpr::parse("(sqrt(15)-3)/2").eval(320);
}

}  // namespace

TEST_CASE("cylinder endpoints: pinned examples") {
    SUBCASE("d=[4], N=2 -> (2/5, 1/2), width 1/10") {
        const Cylinder c = cylinder(make_digits(NcfParams{2}, {4}));
        REQUIRE_FALSE(c.whole_interval());
        CHECK(c.bounds->lo == Rational(2, 5));
        CHECK(c.bounds->hi == Rational(1, 2));
        CHECK(c.width() == Rational(1, 10));
        CHECK(cylinder_measure(make_digits(NcfParams{2}, {4})) == Rational(1, 10));
    }
    SUBCASE("d=[4,3], N=2 -> (3/7, 4/9), width 1/63") {
        const Cylinder c = cylinder(make_digits(NcfParams{2}, {4, 3}));
        CHECK(c.bounds->lo == Rational(3, 7));
        CHECK(c.bounds->hi == Rational(4, 9));
        CHECK(cylinder_measure(make_digits(NcfParams{2}, {4, 3})) == Rational(1, 63));
    }
    SUBCASE("empty digit string is the whole interval") {
        const Cylinder c = cylinder(DigitSequence{NcfParams{2}, {}});
        CHECK(c.whole_interval());
        CHECK(c.width() == Rational(1));
        CHECK(cylinder_measure(DigitSequence{NcfParams{2}, {}}) == Rational(1));
    }
    SUBCASE("single digit: measure N/(i(i+1)) for any N") {
        for (long n : {1L, 2L, 5L}) {
            for (long i = n; i < n + 6; ++i) {
                CHECK(cylinder_measure(make_digits(NcfParams{n}, {i})) ==
                      Rational(n) / Rational(i * (i + 1)));
            }
        }
    }
}

TEST_CASE("cylinder membership") {
    const Cylinder c = cylinder(make_digits(NcfParams{2}, {4, 3}));
    // Rational endpoints are excluded (open interval).
    CHECK_FALSE(cylinder_contains(c, Rational(3, 7)));
    CHECK_FALSE(cylinder_contains(c, Rational(4, 9)));
    // 0.44 lies inside; its first two digits are 4, 3.
    CHECK(cylinder_contains(c, Rational(11, 25)));
    const ExpandResult e = expand(Rational(11, 25), NcfParams{2}, 2);
    CHECK(e.digits.digits[0] == 4);
    CHECK(e.digits.digits[1] == 3);
    // 0.45 > 4/9 lies outside; its second digit differs.
    CHECK_FALSE(cylinder_contains(c, Rational(9, 20)));
    const ExpandResult e2 = expand(Rational(9, 20), NcfParams{2}, 2);
    CHECK(e2.digits.digits[1] != 3);

    // Ball membership: decided inside, decided outside, straddling.
    const Ball inside = Ball::from_interval(Rational(44, 100), Rational(441, 1000));
    CHECK(cylinder_contains(c, inside) == true);
    const Ball outside(Rational(9, 20));
    CHECK(cylinder_contains(c, outside) == false);
    const Ball straddling = Ball::from_interval(Rational(3, 7) - Rational(1, 1000),
                                                Rational(3, 7) + Rational(1, 1000));
    CHECK_FALSE(cylinder_contains(c, straddling).has_value());
}

TEST_CASE("membership matches digit extraction for interior points") {
    std::mt19937_64 gen(424242);
    std::uniform_int_distribution<long> num(1, 9999);
    for (int trial = 0; trial < 500; ++trial) {
        const Rational x(num(gen), 10000);
        if (x.is_zero() || x >= Rational(1)) continue;
        const NcfParams params{trial % 2 == 0 ? 1L : 2L};
        const ExpandResult e = expand(x, params, 3);
        if (e.digits.size() < 3) continue;  // avoid boundary/terminated cases
        DigitSequence prefix{params, {e.digits.digits[0], e.digits.digits[1]}};
        CHECK(cylinder_contains(cylinder(prefix), x));
        // And a wrong prefix is excluded.
        DigitSequence wrong{params, {e.digits.digits[0] + 1, e.digits.digits[1]}};
        CHECK_FALSE(cylinder_contains(cylinder(wrong), x));
    }
}

TEST_CASE("width formula equals endpoint difference for all short words") {
    for (long n : {1L, 2L, 3L}) {
        std::vector<long> cur;
        long count = 0;
        enumerate_words(n, 3, 4, cur, [&](const std::vector<long>& word) {
            const DigitSequence d = make_digits(NcfParams{n}, word);
            const Cylinder c = cylinder(d);
            CHECK(cylinder_measure(d) == c.width());
            ++count;
        });
        CHECK(count == 5 + 25 + 125);
    }
}

TEST_CASE("fixed-length cylinders partition their parent") {
    SUBCASE("n=0: partial sums of N/(i(i+1)) reach 1 - N/(I+1) exactly") {
        for (long n : {1L, 2L, 7L}) {
            Rational sum(0);
            const long upto = 5000;
            for (long i = n; i <= upto; ++i) {
                sum = sum + cylinder_measure(make_digits(NcfParams{n}, {i}));
            }
            CHECK(sum == Rational(1) - Rational(n, upto + 1));
        }
    }
    SUBCASE("the children of a word telescope towards its measure") {
        for (long n : {1L, 2L}) {
            const std::vector<std::vector<long>> parents = {
                {n + 3}, {n, n + 1}, {n + 2, n}};
            for (const auto& parent : parents) {
                const DigitSequence d = make_digits(NcfParams{n}, parent);
                Rational sum(0);
                const long upto = 4000;
                for (long i = n; i <= upto; ++i) {
                    std::vector<long> child = parent;
                    child.push_back(i);
                    sum = sum + cylinder_measure(make_digits(NcfParams{n}, child));
                }
                const Rational deficit = cylinder_measure(d) - sum;
                CHECK(deficit.sign() > 0);
                // Exact remainder is measure(d) (t+N)/(t+I+1) with t in
                // [0,1]; bound it by measure(d) (N+1)/(I+1).
                CHECK(deficit < cylinder_measure(d) * Rational(n + 1, upto + 1));
            }
        }
    }
}

TEST_CASE("theta: pinned examples and the two routes agree") {
    const DigitSequence d43 = make_digits(NcfParams{2}, {4, 3});
    SUBCASE("periodic point, n=2") {
        const Ball x = periodic_point_43();
        const Ball th = theta(x, d43, 2);
        const Ball th_orbit = theta_via_orbit(x, d43, 2);
        CHECK(th.mid_double() == doctest::Approx(th_orbit.mid_double()).epsilon(1e-12));
        CHECK(th.mid_double() == doctest::Approx(0.3880926).epsilon(2e-5));
        // Theta < q_n/(q_n+q_{n-1}) = 14/18.
        CHECK(th.compare(Rational(14, 18)) == -1);
    }
    SUBCASE("terminated rational: theta = 0 at the last index") {
        CHECK(theta(Rational(3, 7), d43, 2) == Rational(0));
        CHECK(theta(Rational(3, 7), d43, 1) == Rational(16, 2) * Rational(1, 14));
    }
    SUBCASE("theta bound on random prefixes") {
        std::mt19937_64 gen(7);
        std::uniform_int_distribution<long> num(1, 999);
        int checked = 0;
        for (int trial = 0; trial < 300; ++trial) {
            const Rational x(num(gen), 1000);
            if (x.is_zero()) continue;
            const NcfParams params{2};
            const ExpandResult e = expand(x, params, 6);
            if (e.digits.size() < 3) continue;
            DigitSequence prefix{params, {e.digits.digits[0], e.digits.digits[1]}};
            const ConvergentTable t = convergents(prefix);
            const Rational bound(t.q(2), t.q(2) + t.q(1));
            CHECK(theta(x, prefix, 2) < bound);
            ++checked;
        }
        CHECK(checked > 100);
    }
}

TEST_CASE("legendre test: pinned examples") {
    const NcfParams params{2};
    const Ball x = periodic_point_43();

    SUBCASE("3/7 is the 2nd convergent") {
        const LegendreCertificate cert = legendre_test(Rational(3, 7), x, params);
        CHECK(cert.accepted());
        CHECK(cert.n == 2);
        CHECK(cert.q_n == 14);
        CHECK(cert.q_n_minus_1 == 4);
        CHECK(cert.bound == Rational(14, 18));
        CHECK(cert.theta_mid == doctest::Approx(0.3880926).epsilon(2e-5));
    }
    SUBCASE("1/2 is the 1st convergent") {
        const LegendreCertificate cert = legendre_test(Rational(1, 2), x, params);
        CHECK(cert.accepted());
        CHECK(cert.n == 1);
        CHECK(cert.q_n == 4);
        CHECK(cert.bound == Rational(4, 5));
        CHECK(cert.theta_mid == doctest::Approx(0.50807).epsilon(1e-4));
    }
    SUBCASE("2/5 is not a convergent") {
        const LegendreCertificate cert = legendre_test(Rational(2, 5), x, params);
        CHECK_FALSE(cert.accepted());
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(legendre_test(Rational(7, 5), x, params), std::invalid_argument);
        CHECK_THROWS_AS(legendre_test(Rational(0), x, params), std::invalid_argument);
    }
}

TEST_CASE("trailing-digit rewriting identity") {
    // [i_1, ..., i_m]_N = [i_1, ..., i_m - 1, N]_N whenever i_m >= N+1.
    std::mt19937_64 gen(1312);
    std::uniform_int_distribution<long> digit(0, 5);
    for (int trial = 0; trial < 500; ++trial) {
        const long n = 1 + trial % 3;
        std::vector<long> word;
        const int len = 1 + static_cast<int>(gen() % 4);
        for (int k = 0; k < len; ++k) word.push_back(n + digit(gen));
        if (word.back() == n) word.back() = n + 1;
        std::vector<long> sibling = word;
        sibling.back() -= 1;
        sibling.push_back(n);
        CHECK(eval_digits(make_digits(NcfParams{n}, word)) ==
              eval_digits(make_digits(NcfParams{n}, sibling)));
    }
}

TEST_CASE("legendre soundness against the direct-expansion oracle") {
    std::mt19937_64 gen(591);
    std::uniform_int_distribution<long> small(2, 600);
    int surds = 0;
    int convergents_accepted = 0;
    int candidates_rejected = 0;
    while (surds < 30) {
        const NcfParams params{surds % 2 == 0 ? 1L : 2L};
        const long a = small(gen);
        const long b = a + small(gen);
        const BigInt an(a), bn(b);
        if (mpz_perfect_square_p(an.get_mpz_t()) && mpz_perfect_square_p(bn.get_mpz_t())) {
            continue;
        }
        const RealExpr expr = RealExpr::sqrt_of(RealExpr::constant(Rational(a, b)));
        const Ball x = expr.eval(512);
        const ExpandResult e = expand(expr, params, 10);
        if (e.digits.size() < 6) continue;
        ++surds;

        // Every true convergent up to depth 6 must be accepted at its index.
        // p_1/q_1 = 1 happens when a_1 = N and sits outside the test's
        // (0, 1) domain; the criterion covers fractions strictly inside.
        for (long n = 1; n <= 6; ++n) {
            DigitSequence prefix{params, {e.digits.digits.begin(),
                                          e.digits.digits.begin() + n}};
            const Rational v = eval_digits(prefix);
            if (v == Rational(1)) continue;
            const LegendreCertificate cert = legendre_test(v, x, params);
            CHECK(cert.accepted());
            CHECK(cert.n == static_cast<std::size_t>(n));
            ++convergents_accepted;
        }

        // Random small-denominator fractions: an accept certifies the exact
        // convergent index, checked against the direct expansion.
        for (int k = 0; k < 20; ++k) {
            const long q = 2 + static_cast<long>(gen() % 60);
            const long p = 1 + static_cast<long>(gen() % (q - 1));
            const Rational pq(p, q);
            const LegendreCertificate cert = legendre_test(pq, x, params);
            if (cert.accepted()) {
                DigitSequence prefix{
                    params,
                    {e.digits.digits.begin(),
                     e.digits.digits.begin() + static_cast<long>(cert.n)}};
                CHECK(eval_digits(prefix) == pq);
            } else {
                ++candidates_rejected;
            }
        }
    }
    CHECK(convergents_accepted >= 30 * 5);
    CHECK(candidates_rejected > 400);
}
