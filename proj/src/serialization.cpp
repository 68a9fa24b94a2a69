#include "urnlab/serialization.hpp"

namespace urnlab {

Json rational_to_json(const BigRational& value) { return to_string(value); }

BigRational rational_from_json(const Json& value) {
  if (!value.is_string()) throw Error(ErrorCode::BadParameter, "rational must be a \"p/q\" string");
  return parse_rational(value.get<std::string>());
}

std::string format_double(double value) { return Json(value).dump(); }

Json spec_to_json(const UrnSpec& spec) {
  Json out;
  out["model"] = std::string(to_string(spec.model));
  out["m"] = spec.m;
  out["c"] = spec.c;
  out["counts"] = spec.initial_counts;
  if (spec.nb) {
    out["nb"] = Json::array({spec.nb->a, spec.nb->b});
    out["sampling"] = spec.nb_sampling == Sampling::WithReplacement ? "with" : "without";
  }
  return out;
}

UrnSpec spec_from_json(const Json& value) {
  try {
    UrnSpec spec;
    spec.model = parse_model(value.at("model").get<std::string>());
    spec.m = value.at("m").get<std::int64_t>();
    spec.c = value.at("c").get<std::int64_t>();
    spec.initial_counts = value.at("counts").get<std::vector<std::int64_t>>();
    if (value.contains("nb")) {
      const auto pair = value.at("nb").get<std::vector<std::int64_t>>();
      if (pair.size() != 2) throw Error(ErrorCode::BadParameter, "nb must be [a, b]");
      spec.nb = NonBalancedParams{pair[0], pair[1]};
    }
    if (value.contains("sampling")) {
      const auto mode = value.at("sampling").get<std::string>();
      if (mode != "with" && mode != "without") {
        throw Error(ErrorCode::BadParameter, "sampling must be \"with\" or \"without\"");
      }
      spec.nb_sampling = mode == "with" ? Sampling::WithReplacement : Sampling::WithoutReplacement;
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadParameter, std::string("malformed urn spec: ") + e.what());
  }
}

Json distribution_to_json(const StateDistribution& dist) {
  Json out = Json::array();
  const bool scalar_state = dist.spec.model != Model::MC && dist.spec.model != Model::NB;
  for (const auto& [state, mass] : dist.mass) {
    Json record;
    if (scalar_state) {
      record["state"] = state.at(0);
    } else {
      record["state"] = state;
    }
    record["p"] = rational_to_json(mass);
    out.push_back(std::move(record));
  }
  return out;
}

Json error_to_json(ErrorCode code, const std::string& message) {
  Json out;
  out["error"]["code"] = std::string(to_string(code));
  out["error"]["message"] = message;
  return out;
}

}  // namespace urnlab
