#pragma once

#include <json.hpp>
#include <string>

#include "urnlab/asymptotics.hpp"
#include "urnlab/distribution_oracle.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/exact_moments.hpp"
#include "urnlab/simulator.hpp"
#include "urnlab/urn_model.hpp"

namespace urnlab {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" strings; floating values as JSON numbers in
// shortest round-trip form.
Json rational_to_json(const BigRational& value);
BigRational rational_from_json(const Json& value);

// Floating value with the same text JSON would use; shared with the CSV writer.
std::string format_double(double value);

// {"model": "M", "m": 2, "c": 1, "counts": [2, 1]}, plus "nb": [a, b] and
// "sampling" for NB.
Json spec_to_json(const UrnSpec& spec);
UrnSpec spec_from_json(const Json& value);

// Array of {"state": w | [x1, ...], "p": "num/den"} in state order.
Json distribution_to_json(const StateDistribution& dist);

Json error_to_json(ErrorCode code, const std::string& message);

}  // namespace urnlab
