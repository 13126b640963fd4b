#pragma once

#include "ultrachase/chase.hpp"
#include "ultrachase/ideals.hpp"

#include <nlohmann/json.hpp>

namespace ultrachase {

/// Ordered JSON keeps key order stable, which the byte-identical report
/// guarantee relies on.
using Json = nlohmann::ordered_json;

/// Raised on malformed spec documents; the message names the offending
/// field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Norms travel as exponent strings: {"zero":true} or {"exp":"<rational>"}.
Json to_json(const NormValue& v);
NormValue norm_value_from_json(const Json& j, const std::string& where);

// Scalars travel as [["q","c"], ...].
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const std::string& where);

Json to_json(const WeightFamily& w);
WeightFamily weight_family_from_json(const Json& j, const std::string& where);

/// Entries only; the space is supplied on the way back in.
Json entries_to_json(const PVector& x);
PVector pvector_from_json(const WeightFamily& space, const Json& j, const std::string& where);

/// Domain, codomain and entry blocks in one document.
Json to_json(const OperatorDesc& f);
OperatorDesc operator_from_json(const Json& j, const std::string& where);

Json to_json(const Witness& w);
Json to_json(const UltraWitness& w);
Json to_json(const Transcript& t);
Json to_json(const TranscriptReport& r);

Json to_json(const IndexSetOf& s);
IndexSetOf index_set_of_from_json(const Json& j, const std::string& where);

/// Sets of ground-set elements as ascending arrays, e.g. {0,2} -> [0,2].
Json mask_to_json(Mask m);

} // namespace ultrachase
