#pragma once

#include <cstdint>
#include <vector>

#include "urnlab/rational.hpp"

namespace urnlab {

/// Triangular tables of unsigned Stirling numbers of both kinds, filled by
/// the standard recurrences up to a fixed max_n. Immutable after
/// construction, so one instance can be read from any number of threads.
class StirlingCache {
 public:
  explicit StirlingCache(unsigned max_n);

  unsigned max_n() const noexcept { return max_n_; }

  /// Unsigned first kind (cycle numbers). Zero outside 0 <= k <= n.
  const BigInt& first_kind(unsigned n, unsigned k) const;
  /// Second kind (partition numbers). Zero outside 0 <= k <= n.
  const BigInt& second_kind(unsigned n, unsigned k) const;

 private:
  unsigned max_n_;
  std::vector<std::vector<BigInt>> first_;
  std::vector<std::vector<BigInt>> second_;
};

// The free functions below read a shared cache and rebuild a larger
// temporary table when n exceeds it.
BigInt stirling_first(unsigned n, unsigned k);
BigInt stirling_second(unsigned n, unsigned k);

BigInt factorial(unsigned n);

// Integer binomial with the conventions binom(x,k)=0 for k<0 and for
// k>x>=0. Negative upper arguments use the generalized definition.
BigInt binomial(std::int64_t n, std::int64_t k);

// x(x-1)...(x-l+1), with l = 0 giving 1.
BigRational falling_factorial(const BigRational& x, unsigned l);

// falling_factorial(x, k) / k!
BigRational generalized_binomial(const BigRational& x, unsigned k);

}  // namespace urnlab
