#include "urnlab/urn_model.hpp"

#include <numeric>
#include <string>

#include "urnlab/combinatorics.hpp"
#include "urnlab/errors.hpp"

namespace urnlab {

std::string_view to_string(Model model) noexcept {
  switch (model) {
    case Model::M: return "M";
    case Model::R: return "R";
    case Model::FM: return "FM";
    case Model::FR: return "FR";
    case Model::MC: return "MC";
    case Model::NB: return "NB";
  }
  return "?";
}

Model parse_model(std::string_view text) {
  for (Model model : {Model::M, Model::R, Model::FM, Model::FR, Model::MC, Model::NB}) {
    if (text == to_string(model)) return model;
  }
  throw Error(ErrorCode::BadParameter, "unknown model '" + std::string(text) + "'");
}

std::int64_t UrnSpec::initial_total() const noexcept {
  return std::accumulate(initial_counts.begin(), initial_counts.end(), std::int64_t{0});
}

bool is_balanced(Model model) noexcept { return model != Model::NB; }

bool is_friedman(Model model) noexcept { return model == Model::FM || model == Model::FR; }

Sampling sampling_of(const UrnSpec& spec) noexcept {
  switch (spec.model) {
    case Model::R:
    case Model::FR: return Sampling::WithReplacement;
    case Model::NB: return spec.nb_sampling;
    default: return Sampling::WithoutReplacement;
  }
}

void validate_spec(const UrnSpec& spec) {
  if (spec.m < 1) throw Error(ErrorCode::BadParameter, "m must be >= 1");
  if (spec.c < 1) throw Error(ErrorCode::BadParameter, "c must be >= 1");
  const bool multicolor = spec.model == Model::MC;
  if (multicolor ? spec.initial_counts.size() < 2 : spec.initial_counts.size() != 2) {
    throw Error(ErrorCode::BadParameter,
                multicolor ? "MC needs at least two initial counts"
                           : "two-colour models need exactly two initial counts (W0, B0)");
  }
  for (auto count : spec.initial_counts) {
    if (count <= 0) throw Error(ErrorCode::NonPositiveCount, "initial counts must be positive");
  }
  if (spec.model == Model::NB) {
    if (!spec.nb) throw Error(ErrorCode::ModelMismatch, "model NB requires nb parameters (a, b)");
    if (spec.nb->a < 1 || spec.nb->b < 1) {
      throw Error(ErrorCode::BadParameter, "nb parameters must be >= 1");
    }
  } else if (spec.nb) {
    throw Error(ErrorCode::ModelMismatch,
                "nb parameters are only allowed for model NB");
  }
  if (spec.initial_total() < spec.m) {
    throw Error(ErrorCode::DegenerateUrn,
                "initial total T0=" + std::to_string(spec.initial_total()) +
                    " is smaller than the sample size m=" + std::to_string(spec.m));
  }
}

std::int64_t total_balls(const UrnSpec& spec, std::int64_t n) {
  if (!is_balanced(spec.model)) {
    throw Error(ErrorCode::Unsupported, "total ball count is random for model NB");
  }
  return spec.initial_total() + n * spec.m * spec.c;
}

UrnSpec marginal_spec(const UrnSpec& spec, std::size_t color) {
  if (color >= spec.initial_counts.size()) {
    throw Error(ErrorCode::BadParameter, "colour index out of range");
  }
  UrnSpec marginal;
  marginal.model = Model::M;
  marginal.m = spec.m;
  marginal.c = spec.c;
  const auto tracked = spec.initial_counts[color];
  marginal.initial_counts = {tracked, spec.initial_total() - tracked};
  return marginal;
}

std::vector<BigRational> sample_pmf(Sampling sampling, std::int64_t m, std::int64_t white,
                                    std::int64_t total) {
  if (white < 0 || white > total || total < 1) {
    throw Error(ErrorCode::OutOfRangeState,
                "state " + std::to_string(white) + " outside [0, " + std::to_string(total) + "]");
  }
  std::vector<BigRational> pmf(m + 1);
  if (sampling == Sampling::WithoutReplacement) {
    if (total < m) {
      throw Error(ErrorCode::OutOfRangeState, "cannot draw m balls without replacement");
    }
    const BigInt denominator = binomial(total, m);
    for (std::int64_t k = 0; k <= m; ++k) {
      pmf[k] = make_rational(binomial(white, k) * binomial(total - white, m - k), denominator);
    }
  } else {
    const BigInt denominator = pow(BigInt(static_cast<long>(total)), static_cast<unsigned>(m));
    for (std::int64_t k = 0; k <= m; ++k) {
      pmf[k] = make_rational(binomial(m, k) * pow(BigInt(static_cast<long>(white)), k) *
                                 pow(BigInt(static_cast<long>(total - white)), m - k),
                             denominator);
    }
  }
  return pmf;
}

TransitionDistribution transition_distribution(const UrnSpec& spec, std::int64_t white,
                                               std::int64_t n) {
  if (spec.model == Model::NB || spec.model == Model::MC) {
    throw Error(ErrorCode::UnsupportedModel,
                "use nb_transition / multicolor_transition for model " +
                    std::string(to_string(spec.model)));
  }
  const auto total = total_balls(spec, n);
  auto pmf = sample_pmf(sampling_of(spec), spec.m, white, total);
  TransitionDistribution result;
  result.time = n;
  result.outcomes.reserve(pmf.size());
  const auto added = spec.m * spec.c;
  for (std::int64_t k = 0; k <= spec.m; ++k) {
    const auto delta = is_friedman(spec.model) ? spec.c * (spec.m - k) : spec.c * k;
    result.outcomes.push_back({k, std::move(pmf[k]), delta, added - delta});
  }
  return result;
}

TransitionDistribution nb_transition(const UrnSpec& spec, std::int64_t white, std::int64_t black) {
  if (spec.model != Model::NB || !spec.nb) {
    throw Error(ErrorCode::UnsupportedModel, "nb_transition requires model NB");
  }
  if (white < 0 || black < 0) {
    throw Error(ErrorCode::OutOfRangeState, "negative ball count");
  }
  auto pmf = sample_pmf(spec.nb_sampling, spec.m, white, white + black);
  TransitionDistribution result;
  result.outcomes.reserve(pmf.size());
  // Row l of the replacement matrix (l black drawn) adds ((m-l)a, l*b).
  for (std::int64_t k = 0; k <= spec.m; ++k) {
    result.outcomes.push_back({k, std::move(pmf[k]), k * spec.nb->a, (spec.m - k) * spec.nb->b});
  }
  return result;
}

std::vector<std::vector<std::int64_t>> compositions(std::int64_t total, std::size_t parts) {
  std::vector<std::vector<std::int64_t>> out;
  if (parts == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<std::int64_t> current(parts, 0);
  // Recursive fill of leading parts; the last part takes the remainder.
  auto fill = [&](auto&& self, std::size_t index, std::int64_t remaining) -> void {
    if (index + 1 == parts) {
      current[index] = remaining;
      out.push_back(current);
      return;
    }
    for (std::int64_t k = 0; k <= remaining; ++k) {
      current[index] = k;
      self(self, index + 1, remaining - k);
    }
  };
  fill(fill, 0, total);
  return out;
}

std::vector<CompositionOutcome> multicolor_transition(const UrnSpec& spec,
                                                      std::span<const std::int64_t> counts) {
  if (spec.model != Model::MC && spec.model != Model::M) {
    throw Error(ErrorCode::UnsupportedModel, "multicolor_transition requires model MC or M");
  }
  if (counts.size() != spec.initial_counts.size()) {
    throw Error(ErrorCode::OutOfRangeState, "state has the wrong number of colours");
  }
  std::int64_t total = 0;
  for (auto count : counts) {
    if (count < 0) throw Error(ErrorCode::OutOfRangeState, "negative colour count");
    total += count;
  }
  if (total < spec.m) throw Error(ErrorCode::OutOfRangeState, "fewer balls than the sample size");
  const BigInt denominator = binomial(total, spec.m);
  std::vector<CompositionOutcome> result;
  for (auto& drawn : compositions(spec.m, counts.size())) {
    BigInt numerator(1);
    for (std::size_t i = 0; i < counts.size(); ++i) numerator *= binomial(counts[i], drawn[i]);
    result.push_back({std::move(drawn), make_rational(numerator, denominator)});
  }
  return result;
}

}  // namespace urnlab
