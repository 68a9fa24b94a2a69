#pragma once

#include <cstdint>
#include <vector>

#include "urnlab/rational.hpp"
#include "urnlab/urn_model.hpp"

namespace urnlab {

// Dense table of E(W_n^s) for 0 <= n <= n_max, 0 <= s <= s_max. Entries are
// filled in lexicographic (n, s) order; a finished table is immutable.
class MomentTable {
 public:
  MomentTable(UrnSpec spec, std::int64_t n_max, unsigned s_max);

  const UrnSpec& spec() const noexcept { return spec_; }
  std::int64_t n_max() const noexcept { return n_max_; }
  unsigned s_max() const noexcept { return s_max_; }

  bool contains(std::int64_t n, unsigned s) const noexcept;
  // Throws MissingMoment for entries that were never set.
  const BigRational& at(std::int64_t n, unsigned s) const;
  void set(std::int64_t n, unsigned s, BigRational value);

 private:
  std::size_t index(std::int64_t n, unsigned s) const noexcept;

  UrnSpec spec_;
  std::int64_t n_max_;
  unsigned s_max_;
  std::vector<BigRational> values_;
  std::vector<bool> present_;
};

// E(W_{n+1}^s) = multiplier * E(W_n^s) + inhomogeneous.
struct RecurrenceCoefficients {
  BigRational multiplier;     // alpha_{n,s} (M) or gamma_{n,s} (R)
  BigRational inhomogeneous;  // beta_{n,s} (M) or delta_{n,s} (R)
};

// Both recurrences share one shape in the kernel factors
//   g_o(T) = binom(m,o) / binom(T,o)   (M, hypergeometric sampling)
//   g_o(T) = (m)_o / T^o               (R, binomial sampling)
// namely
//   multiplier(n)    = sum_o multiplier[o] g_o(T_n)
//   inhomogeneous(n) = sum_{q=1}^{s-1} E(W_n^q) sum_o inhomogeneous[q][o] g_o(T_n).
// The integer weights come from the Stirling-number conversions between
// powers and falling factorials.
struct RecurrenceWeights {
  unsigned s = 0;
  std::vector<BigInt> multiplier;                  // [o], 0 <= o <= s
  std::vector<std::vector<BigInt>> inhomogeneous;  // [q][o], 0 <= q < s
};
RecurrenceWeights recurrence_weights(const UrnSpec& spec, unsigned s);

BigRational kernel_factor(const UrnSpec& spec, std::int64_t total, unsigned order);

// Requires lower_moments to hold (n, r) for 1 <= r <= s-1. Models M and R only.
RecurrenceCoefficients recurrence_coefficients(const UrnSpec& spec, std::int64_t n, unsigned s,
                                               const MomentTable& lower_moments);

// Fills every (n, s) with n <= n_max, s <= s_max. MC tracks colour 0 through
// its two-colour marginal.
MomentTable compute_moment_table(const UrnSpec& spec, std::int64_t n_max, unsigned s_max);

BigRational moment(const UrnSpec& spec, std::int64_t n, unsigned s);

// M/R/MC: W0 (n m c + T0) / T0. FM/FR: the two-branch Friedman formula.
BigRational closed_form_expectation(const UrnSpec& spec, std::int64_t n, std::size_t color = 0);

/// Elementary symmetric functions of the two roots that factor the
/// second-moment multiplier, together with its two pole locations:
///   multiplier(n) = (n^2 + root_sum n + root_product) / ((n + pole_a)(n + pole_b)).
/// Model M: pole_a = T0/(mc), pole_b = (T0-1)/(mc). Model R: both T0/(mc).
struct QuadraticFactors {
  BigRational root_sum;
  BigRational root_product;
  BigRational pole_a;
  BigRational pole_b;
};
QuadraticFactors second_moment_factors(const UrnSpec& spec);

// prod_{j<n} multiplier(j), evaluated from the symmetric functions.
BigRational second_moment_product(const UrnSpec& spec, std::int64_t n);

// The closed expression for E(W_n^2) built from the product factors and the
// explicit partial sum, kept independent of the recurrence table.
BigRational closed_form_second_moment(const UrnSpec& spec, std::int64_t n);

// E((W_n)_s) for model M with c = 1, from its own falling-factorial recurrence:
//   E((W_n)_s) = sum_{i=0}^{s} i! E((W_{n-1})_{s-i})
//                * sum_{l=i}^{s} binom(s,l) binom(m,l) binom(s-l,i) binom(l,i) / binom(T_{n-1},l).
BigRational factorial_moment_c1(const UrnSpec& spec, std::int64_t n, unsigned s);

// Cov(X_{n,i}, X_{n,j}) for MC with r >= 3 and i != j (0-based colours).
BigRational covariance_multicolor(const UrnSpec& spec, std::int64_t n, std::size_t i,
                                  std::size_t j);

// phi_n W_n + psi_n is a martingale for FM/FR.
struct MartingaleCoefficients {
  BigRational phi;
  BigRational psi;
  std::int64_t n = 0;
};
MartingaleCoefficients friedman_martingale_coefficients(const UrnSpec& spec, std::int64_t n);

}  // namespace urnlab
