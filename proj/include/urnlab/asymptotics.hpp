#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "urnlab/polynomial.hpp"
#include "urnlab/rational.hpp"
#include "urnlab/urn_model.hpp"

namespace urnlab {

// Monic degree-s polynomial whose negated roots factor the order-s
// recurrence multiplier:
//   multiplier(j) = prod_l (j + root_l) / prod_l (j + pole_l).
struct CharacteristicPolynomial {
  UrnSpec spec;
  unsigned s = 0;
  RationalPolynomial polynomial;

  const std::vector<BigRational>& coefficients() const noexcept {
    return polynomial.coefficients();
  }
};

CharacteristicPolynomial characteristic_polynomial(const UrnSpec& spec, unsigned s);

// Exact poles of the order-s multiplier: (T0+1-l)/(mc), l = 1..s, for M and
// T0/(mc) repeated s times for R.
std::vector<BigRational> multiplier_poles(const UrnSpec& spec, unsigned s);

// Negated polynomial roots (the lambda / mu values).
struct RootSet {
  std::vector<std::complex<long double>> roots;
  std::vector<long double> residuals;  // |p(-root)|
  long double precision = 0.0L;
};

// Aberth iteration followed by Newton polishing on the exact coefficients.
// Throws RootFindingFailed if a residual or the root-sum check exceeds tol.
RootSet characteristic_roots(const CharacteristicPolynomial& poly, long double tol);

// Closed forms for the s = 2 roots:
//   M: (mc + T0 - 1/2 +- sqrt(1 + 4mc(1+c))/2) / (mc)
//   R: (T0 + mc +- c sqrt(m)) / (mc)
std::array<long double, 2> closed_form_second_order_roots(const UrnSpec& spec);

struct LimitResult {
  long double value = 0.0L;
  std::int64_t terms_used = 0;
  // Estimated error of the extrapolated series tail.
  long double tail_bound = 0.0L;
  // K / L with K = max term_l * l^2 over the last 16 summed terms.
  long double comparison_bound = 0.0L;
  long double prefactor = 0.0L;
  // W0^s + sum over the series.
  long double series = 0.0L;
  std::optional<BigRational> exact;  // s = 1 only
  RootSet roots;
};

// lim E(W_n^s)/n^s = prefactor * (W0^s + sum_l inhomogeneous_l / prod_{j<=l} multiplier_j).
LimitResult normalized_moment_limit(const UrnSpec& spec, unsigned s, long double tol,
                                    std::int64_t max_terms);

// lim Cov(X_{n,i}/n, X_{n,j}/n) for MC, r >= 3, i != j (0-based colours).
long double covariance_limit(const UrnSpec& spec, std::size_t i, std::size_t j);

// Ratio Gamma(a)Gamma(b) / (Gamma(lambda_1)Gamma(lambda_2)) for the s = 2
// multiplier; equals lim prod_{j<n} multiplier(j) / n^2.
long double second_order_gamma_ratio(const UrnSpec& spec);

}  // namespace urnlab
