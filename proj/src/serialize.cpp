#include "ncf/serialize.hpp"

namespace ncf {

namespace {

Json bigint_to_json(const BigInt& v) {
    if (v.fits_slong_p()) {
        const long x = v.get_si();
        if (x > -(1L << 53) && x < (1L << 53)) return Json(x);
    }
    return Json(v.get_str());
}

BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long>());
    if (j.is_string()) {
        BigInt v;
        if (v.set_str(j.get<std::string>(), 10) != 0) {
            throw std::invalid_argument("malformed integer string in JSON");
        }
        return v;
    }
    throw std::invalid_argument("expected an integer or integer string");
}

}  // namespace

Json to_json(const Rational& r) { return Json(r.str()); }

Json to_json(const Ball& b) {
    return Json{{"value", b.value_string()}, {"radius", b.radius_string()}};
}

Json to_json(const DigitSequence& d) {
    Json digits = Json::array();
    for (const BigInt& a : d.digits) digits.push_back(bigint_to_json(a));
    return Json{{"N", d.params.n_param}, {"digits", std::move(digits)}};
}

Json to_json(const ConvergentTable& t) {
    Json p = Json::array();
    Json q = Json::array();
    for (long n = -1; n <= t.depth(); ++n) {
        p.push_back(t.p(n).get_str());
        q.push_back(t.q(n).get_str());
    }
    return Json{{"N", t.params().n_param},
                {"index_base", -1},
                {"p", std::move(p)},
                {"q", std::move(q)}};
}

Json to_json(const Cylinder& c) {
    Json j{{"N", c.digits.params.n_param},
           {"digits", to_json(c.digits)["digits"]},
           {"measure", cylinder_measure(c.digits).str()}};
    if (c.whole_interval()) {
        j["lo"] = nullptr;
        j["hi"] = nullptr;
    } else {
        j["lo"] = c.bounds->lo.str();
        j["hi"] = c.bounds->hi.str();
    }
    return j;
}

Json to_json(const LegendreCertificate& cert) {
    const char* outcome = nullptr;
    switch (cert.outcome) {
        case LegendreOutcome::Convergent: outcome = "convergent"; break;
        case LegendreOutcome::NotConvergent: outcome = "not_convergent"; break;
        case LegendreOutcome::ParityUnreachable: outcome = "parity_unreachable"; break;
    }
    Json word = Json::array();
    for (const BigInt& a : cert.word) word.push_back(bigint_to_json(a));
    return Json{{"outcome", outcome},
                {"accepted", cert.accepted()},
                {"word", std::move(word)},
                {"n", cert.n},
                {"q_n", cert.q_n.get_str()},
                {"q_n_minus_1", cert.q_n_minus_1.get_str()},
                {"bound", cert.bound.str()},
                {"theta", cert.theta_mid},
                {"theta_radius", cert.theta_radius}};
}

Json to_json(const NatExtPoint& p) {
    return Json{{"x", p.x.str()}, {"y", p.y.str()}};
}

DigitSequence digit_sequence_from_json(const Json& j) {
    DigitSequence d;
    d.params.n_param = j.at("N").get<long>();
    validate(d.params);
    for (const Json& a : j.at("digits")) d.digits.push_back(bigint_from_json(a));
    return d;
}

}  // namespace ncf
