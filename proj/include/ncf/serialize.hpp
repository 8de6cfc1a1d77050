#pragma once

#include <json.hpp>

#include "ncf/ball.hpp"
#include "ncf/cylinders.hpp"
#include "ncf/expansion.hpp"
#include "ncf/natext.hpp"
#include "ncf/rational.hpp"

// JSON wire formats. Schema version 1:
//   Rational          -> "p/q" string
//   Ball              -> {"value": <decimal string>, "radius": <decimal string>}
//   DigitSequence     -> {"N": n, "digits": [...]}; digits are JSON numbers
//                        when they fit 53 bits, decimal strings otherwise
//   ConvergentTable   -> {"N": n, "index_base": -1, "p": [...], "q": [...]}
//                        with decimal-string entries
//   Cylinder          -> {"N": n, "digits": [...], "lo": "p/q" | null,
//                         "hi": "p/q" | null, "measure": "p/q"}
//   LegendreCertificate -> {"outcome", "word", "n", "q_n", "q_n_minus_1",
//                           "bound", "theta", "theta_radius"}
namespace ncf {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const Ball& b);
Json to_json(const DigitSequence& d);
Json to_json(const ConvergentTable& t);
Json to_json(const Cylinder& c);
Json to_json(const LegendreCertificate& cert);
Json to_json(const NatExtPoint& p);

DigitSequence digit_sequence_from_json(const Json& j);

}  // namespace ncf
