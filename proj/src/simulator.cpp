#include "urnlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "urnlab/errors.hpp"
#include "urnlab/exact_moments.hpp"

namespace urnlab {

std::uint64_t UrnRng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::BadParameter, "empty sampling range");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

std::uint64_t derive_run_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Number of balls drawn of each colour in one sample of size m.
void draw_sample(const std::vector<std::int64_t>& counts, std::int64_t m, Sampling sampling,
                 UrnRng& rng, std::vector<std::int64_t>& drawn) {
  std::fill(drawn.begin(), drawn.end(), 0);
  std::int64_t total = 0;
  for (auto count : counts) total += count;
  std::vector<std::int64_t> remaining(counts);
  std::int64_t left = total;
  for (std::int64_t d = 0; d < m; ++d) {
    auto ticket = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(left)));
    std::size_t color = 0;
    const auto& pool = sampling == Sampling::WithoutReplacement ? remaining : counts;
    while (ticket >= pool[color]) {
      ticket -= pool[color];
      ++color;
    }
    ++drawn[color];
    if (sampling == Sampling::WithoutReplacement) {
      --remaining[color];
      --left;
    }
  }
}

void step(const UrnSpec& spec, std::vector<std::int64_t>& counts, UrnRng& rng,
          std::vector<std::int64_t>& drawn) {
  draw_sample(counts, spec.m, sampling_of(spec), rng, drawn);
  switch (spec.model) {
    case Model::M:
    case Model::R:
    case Model::MC:
      for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += spec.c * drawn[i];
      break;
    case Model::FM:
    case Model::FR:
      // k white drawn adds c(m-k) white and ck black
      counts[0] += spec.c * drawn[1];
      counts[1] += spec.c * drawn[0];
      break;
    case Model::NB:
      counts[0] += spec.nb->a * drawn[0];
      counts[1] += spec.nb->b * drawn[1];
      break;
  }
}

std::int64_t final_tracked_count(const UrnSpec& spec, std::int64_t n, std::uint64_t run_seed) {
  UrnRng rng(run_seed);
  std::vector<std::int64_t> counts(spec.initial_counts);
  std::vector<std::int64_t> drawn(counts.size());
  for (std::int64_t t = 0; t < n; ++t) step(spec, counts, rng, drawn);
  return counts[0];
}

std::vector<BigInt> accumulate_power_sums(const UrnSpec& spec, std::int64_t n, unsigned max_power,
                                          std::int64_t runs, std::uint64_t seed, unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, std::max<std::int64_t>(runs, 1)));
  std::vector<std::vector<BigInt>> partial(workers, std::vector<BigInt>(max_power + 1, BigInt(0)));

  auto work = [&](unsigned worker) {
    auto& sums = partial[worker];
    for (std::int64_t run = worker; run < runs; run += workers) {
      const BigInt value(static_cast<long>(
          final_tracked_count(spec, n, derive_run_seed(seed, static_cast<std::uint64_t>(run)))));
      BigInt power(1);
      for (unsigned p = 0; p <= max_power; ++p) {
        sums[p] += power;
        power *= value;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }
  std::vector<BigInt> sums(max_power + 1, BigInt(0));
  for (const auto& p : partial) {
    for (unsigned i = 0; i <= max_power; ++i) sums[i] += p[i];
  }
  return sums;
}

BigRational exact_martingale_mean(const UrnSpec& spec, std::int64_t n, const BigInt& sum,
                                  std::int64_t runs) {
  const BigRational mean = make_rational(sum, BigInt(static_cast<long>(runs)));
  if (is_friedman(spec.model)) {
    const auto coefficients = friedman_martingale_coefficients(spec, n);
    return coefficients.phi * mean + coefficients.psi;
  }
  return mean / BigRational(total_balls(spec, n));
}

void validate_run_request(const UrnSpec& spec, std::int64_t n, std::int64_t runs) {
  validate_spec(spec);
  if (n < 0) throw Error(ErrorCode::BadParameter, "n must be >= 0");
  if (runs < 1) throw Error(ErrorCode::BadParameter, "runs must be >= 1");
}

}  // namespace

std::vector<std::vector<std::int64_t>> simulate_path(const UrnSpec& spec, std::int64_t n,
                                                     std::uint64_t seed) {
  validate_spec(spec);
  if (n < 0) throw Error(ErrorCode::BadParameter, "n must be >= 0");
  UrnRng rng(seed);
  std::vector<std::vector<std::int64_t>> path;
  path.reserve(static_cast<std::size_t>(n) + 1);
  path.push_back(spec.initial_counts);
  std::vector<std::int64_t> counts(spec.initial_counts);
  std::vector<std::int64_t> drawn(counts.size());
  for (std::int64_t t = 0; t < n; ++t) {
    step(spec, counts, rng, drawn);
    path.push_back(counts);
  }
  return path;
}

SimulationSummary estimate_moments(const UrnSpec& spec, std::int64_t n, unsigned s_max,
                                   std::int64_t runs, std::uint64_t seed, unsigned workers) {
  validate_run_request(spec, n, runs);
  SimulationSummary summary;
  summary.spec = spec;
  summary.n = n;
  summary.runs = runs;
  summary.seed = seed;
  summary.power_sums = accumulate_power_sums(spec, n, 2 * s_max, runs, seed, workers);

  const BigInt count(static_cast<long>(runs));
  for (unsigned s = 0; s <= s_max; ++s) {
    const auto& first = summary.power_sums[s];
    const auto& second = summary.power_sums[2 * s];
    summary.empirical_moments.push_back(to_double(make_rational(first, count)));
    if (runs < 2) {
      summary.standard_errors.push_back(0.0);
      continue;
    }
    // unbiased sample variance of W^s, divided by the run count
    const BigRational variance =
        make_rational(second * count - first * first, count * (count - 1));
    summary.standard_errors.push_back(std::sqrt(to_double(variance / BigRational(count))));
  }
  if (spec.model != Model::NB) {
    summary.martingale_mean =
        to_double(exact_martingale_mean(spec, n, summary.power_sums.at(1), runs));
  }
  return summary;
}

double martingale_diagnostic(const UrnSpec& spec, std::int64_t n, std::int64_t runs,
                             std::uint64_t seed, unsigned workers) {
  validate_run_request(spec, n, runs);
  if (spec.model == Model::NB) {
    throw Error(ErrorCode::UnsupportedModel, "no martingale is known for model NB");
  }
  const auto sums = accumulate_power_sums(spec, n, 1, runs, seed, workers);
  return to_double(exact_martingale_mean(spec, n, sums[1], runs));
}

}  // namespace urnlab
