#include "ncf/cylinders.hpp"

#include <stdexcept>

#include "ncf/errors.hpp"

namespace ncf {

Cylinder cylinder(const DigitSequence& d) {
    validate(d.params);
    if (d.empty()) return Cylinder{d, std::nullopt};

    const ConvergentTable t = ConvergentTable::build(d);
    const long n = t.depth();
    const Rational value = t.value(n);
    const Rational mediant = t.mediant(n);
    const bool odd = (n % 2) != 0;
    // Odd n: (mediant, p_n/q_n); even n: (p_n/q_n, mediant).
    const Rational& lo = odd ? mediant : value;
    const Rational& hi = odd ? value : mediant;
    return Cylinder{d, RationalInterval(lo, hi, /*lo_open=*/true, /*hi_open=*/true)};
}

Rational cylinder_measure(const DigitSequence& d) {
    validate(d.params);
    if (d.empty()) return Rational(1);
    const ConvergentTable t = ConvergentTable::build(d);
    const long n = t.depth();
    const Rational n_pow = rational_pow(Rational(d.params.n_param), n);
    return n_pow / Rational(BigInt(t.q(n) * (t.q(n) + t.q(n - 1))));
}

bool cylinder_contains(const Cylinder& c, const Rational& x) {
    if (c.whole_interval()) return Rational(0) < x && x < Rational(1);
    return c.bounds->lo < x && x < c.bounds->hi;
}

std::optional<bool> cylinder_contains(const Cylinder& c, const Ball& x) {
    const Rational lo = c.whole_interval() ? Rational(0) : c.bounds->lo;
    const Rational hi = c.whole_interval() ? Rational(1) : c.bounds->hi;
    const auto cmp_lo = x.compare(lo);
    const auto cmp_hi = x.compare(hi);
    if (cmp_lo && *cmp_lo <= 0) return false;
    if (cmp_hi && *cmp_hi >= 0) return false;
    if (cmp_lo && cmp_hi) return true;  // strictly inside
    return std::nullopt;
}

namespace {

Rational theta_scale(const ConvergentTable& t, long n) {
    // q_n^2 / N^n
    const Rational q(t.q(n));
    return q * q / rational_pow(Rational(t.params().n_param), n);
}

}  // namespace

Rational theta(const Rational& x, const DigitSequence& d, long n) {
    const ConvergentTable t = ConvergentTable::build(d);
    return theta_scale(t, n) * approximation_error(x, t, n);
}

Ball theta(const Ball& x, const DigitSequence& d, long n) {
    const ConvergentTable t = ConvergentTable::build(d);
    return approximation_error(x, t, n).mul(theta_scale(t, n));
}

Ball theta_via_orbit(const Ball& x, const DigitSequence& d, long n) {
    const ConvergentTable t = ConvergentTable::build(d);
    if (n < 1 || n > t.depth()) throw std::out_of_range("theta index out of range");
    Ball orbit = x;
    for (long k = 0; k < n; ++k) orbit = gauss_map(orbit, d.params);
    const Rational qn(t.q(n));
    const Ball num = orbit.mul(qn);
    const Ball den = orbit.mul(Rational(t.q(n - 1))).add(qn);
    return num / den;
}

LegendreCertificate legendre_test(const Rational& pq, const Ball& x, NcfParams params) {
    validate(params);
    if (pq.sign() <= 0 || pq >= Rational(1)) {
        throw std::invalid_argument("fraction must lie in (0, 1)");
    }

    const auto side = x.compare(pq);
    if (!side) throw AmbiguousEnclosureError("cannot order x against p/q");
    const bool need_even = *side > 0;  // p/q < x

    // Greedy representation; for p/q in (0,1) it is finite and its last
    // digit is >= N+1, so the sibling [.., a_m - 1, N] always exists and has
    // the opposite length parity.
    const ExpandResult greedy = expand(pq, params, std::size_t(1) << 20);
    if (!greedy.terminated) throw std::logic_error("rational expansion did not terminate");
    std::vector<BigInt> word = greedy.digits.digits;
    const bool greedy_even = word.size() % 2 == 0;
    if (greedy_even != need_even) {
        const BigInt n_min(params.n_param);
        if (word.empty() || word.back() <= n_min) {
            LegendreCertificate cert;
            cert.outcome = LegendreOutcome::ParityUnreachable;
            return cert;
        }
        word.back() -= 1;
        word.push_back(n_min);
    }

    DigitSequence rep{params, word};
    const ConvergentTable t = ConvergentTable::build(rep);
    const long n = t.depth();

    LegendreCertificate cert;
    cert.word = std::move(word);
    cert.n = static_cast<std::size_t>(n);
    cert.q_n = t.q(n);
    cert.q_n_minus_1 = t.q(n - 1);
    cert.bound = Rational(cert.q_n, cert.q_n + cert.q_n_minus_1);

    const Ball th = x.sub(pq).abs().mul(theta_scale(t, n));
    cert.theta_mid = th.mid_double();
    cert.theta_radius = th.radius_double();

    const auto order = th.compare(cert.bound);
    if (!order) throw AmbiguousEnclosureError("Theta enclosure straddles the Legendre bound");
    cert.outcome = *order < 0 ? LegendreOutcome::Convergent : LegendreOutcome::NotConvergent;
    return cert;
}

}  // namespace ncf
