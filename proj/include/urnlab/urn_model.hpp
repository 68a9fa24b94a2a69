#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "urnlab/rational.hpp"

namespace urnlab {

// M/R: multi-draw Polya urns sampling without/with replacement.
// FM/FR: Friedman-type variants (opposite-colour additions).
// MC: multi-colour model M. NB: non-balanced (a, b) matrix, simulation/oracle only.
enum class Model { M, R, FM, FR, MC, NB };

std::string_view to_string(Model model) noexcept;
Model parse_model(std::string_view text);

enum class Sampling { WithoutReplacement, WithReplacement };

struct NonBalancedParams {
  std::int64_t a = 1;  // white balls added per observed white
  std::int64_t b = 1;  // black balls added per observed black
  friend bool operator==(const NonBalancedParams&, const NonBalancedParams&) = default;
};

struct UrnSpec {
  Model model = Model::M;
  std::int64_t m = 1;  // balls drawn per step
  std::int64_t c = 1;  // balls added per observed ball
  // (W0, B0) for two-colour models, (X0_1, ..., X0_r) for MC.
  std::vector<std::int64_t> initial_counts;
  std::optional<NonBalancedParams> nb;
  // Only consulted for NB; every other model fixes its own sampling mode.
  Sampling nb_sampling = Sampling::WithoutReplacement;

  std::int64_t initial_total() const noexcept;
  std::int64_t initial_white() const { return initial_counts.at(0); }
  std::size_t colors() const noexcept { return initial_counts.size(); }

  friend bool operator==(const UrnSpec&, const UrnSpec&) = default;
};

bool is_balanced(Model model) noexcept;
bool is_friedman(Model model) noexcept;
Sampling sampling_of(const UrnSpec& spec) noexcept;

// Throws Error with DegenerateUrn, NonPositiveCount, BadParameter or
// ModelMismatch.
void validate_spec(const UrnSpec& spec);

// T0 + n*m*c. Unsupported for NB, where the total is random.
std::int64_t total_balls(const UrnSpec& spec, std::int64_t n);

// Two-colour model M with colour `color` tracked as white and all other
// colours merged into black; the marginal law of X_{n,color} under MC.
UrnSpec marginal_spec(const UrnSpec& spec, std::size_t color);

struct Outcome {
  std::int64_t drawn_white = 0;
  BigRational probability;
  std::int64_t white_delta = 0;
  std::int64_t black_delta = 0;
};

struct TransitionDistribution {
  std::int64_t time = 0;
  std::vector<Outcome> outcomes;  // indexed by drawn_white = 0..m
};

// Law of the number of white balls in one sample of size m from an urn
// holding `white` of `total` balls.
std::vector<BigRational> sample_pmf(Sampling sampling, std::int64_t m, std::int64_t white,
                                    std::int64_t total);

// One-step kernel from a two-colour balanced state (`white` of T_n) at time n.
TransitionDistribution transition_distribution(const UrnSpec& spec, std::int64_t white,
                                               std::int64_t n);

// One-step kernel for NB from the explicit (white, black) state.
TransitionDistribution nb_transition(const UrnSpec& spec, std::int64_t white,
                                     std::int64_t black);

struct CompositionOutcome {
  std::vector<std::int64_t> drawn;  // k_1 + ... + k_r = m
  BigRational probability;
};

// Multivariate hypergeometric PMF over all compositions of m into r parts,
// in lexicographic order of `drawn`. Balls added are c * drawn.
std::vector<CompositionOutcome> multicolor_transition(const UrnSpec& spec,
                                                      std::span<const std::int64_t> counts);

// All compositions of `total` into `parts` nonnegative parts, lexicographic.
std::vector<std::vector<std::int64_t>> compositions(std::int64_t total, std::size_t parts);

}  // namespace urnlab
