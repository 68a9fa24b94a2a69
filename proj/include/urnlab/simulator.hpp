#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "urnlab/rational.hpp"
#include "urnlab/urn_model.hpp"

namespace urnlab {

// Per-run generator. Bounded draws use rejection on top of mt19937_64 so the
// stream is identical on every standard library.
class UrnRng {
 public:
  explicit UrnRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// Seed of run `index` under master seed `seed` (splitmix64 of a counter), so
// runs can be spread over workers in any order.
std::uint64_t derive_run_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// Colour counts after every step: {W, B} for two-colour models, the full
// colour vector for MC. The result has n+1 entries, starting at the
// initial counts.
std::vector<std::vector<std::int64_t>> simulate_path(const UrnSpec& spec, std::int64_t n,
                                                     std::uint64_t seed);

struct SimulationSummary {
  UrnSpec spec;
  std::int64_t n = 0;
  std::int64_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<double> empirical_moments;  // [s], 0 <= s <= s_max
  std::vector<double> standard_errors;    // [s]
  // Mean of W_n/T_n (M, R, MC colour 1) or phi_n W_n + psi_n (FM, FR);
  // absent for NB.
  std::optional<double> martingale_mean;
  // Exact sums of W_n^p over all runs, 0 <= p <= 2 s_max.
  std::vector<BigInt> power_sums;
};

// workers = 0 picks the hardware concurrency. The summary does not depend
// on the number of workers.
SimulationSummary estimate_moments(const UrnSpec& spec, std::int64_t n, unsigned s_max,
                                   std::int64_t runs, std::uint64_t seed, unsigned workers = 1);

double martingale_diagnostic(const UrnSpec& spec, std::int64_t n, std::int64_t runs,
                             std::uint64_t seed, unsigned workers = 1);

}  // namespace urnlab
