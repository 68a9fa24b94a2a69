#include "urnlab/combinatorics.hpp"

namespace urnlab {

namespace {

const BigInt& zero_int() {
  static const BigInt zero(0);
  return zero;
}

constexpr unsigned kSharedCacheSize = 64;

const StirlingCache& shared_cache() {
  static const StirlingCache cache(kSharedCacheSize);
  return cache;
}

}  // namespace

StirlingCache::StirlingCache(unsigned max_n)
    : max_n_(max_n), first_(max_n + 1), second_(max_n + 1) {
  for (unsigned n = 0; n <= max_n; ++n) {
    first_[n].assign(n + 1, BigInt(0));
    second_[n].assign(n + 1, BigInt(0));
  }
  first_[0][0] = 1;
  second_[0][0] = 1;
  for (unsigned n = 1; n <= max_n; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      const BigInt& same_first = k < n ? first_[n - 1][k] : zero_int();
      first_[n][k] = first_[n - 1][k - 1] + BigInt(n - 1) * same_first;

      const BigInt& diag_second = second_[n - 1][k - 1];
      const BigInt& same_second = k < n ? second_[n - 1][k] : zero_int();
      second_[n][k] = BigInt(k) * same_second + diag_second;
    }
  }
}

const BigInt& StirlingCache::first_kind(unsigned n, unsigned k) const {
  if (n > max_n_ || k > n) return zero_int();
  return first_[n][k];
}

const BigInt& StirlingCache::second_kind(unsigned n, unsigned k) const {
  if (n > max_n_ || k > n) return zero_int();
  return second_[n][k];
}

BigInt stirling_first(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (n <= shared_cache().max_n()) return shared_cache().first_kind(n, k);
  return StirlingCache(n).first_kind(n, k);
}

BigInt stirling_second(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (n <= shared_cache().max_n()) return shared_cache().second_kind(n, k);
  return StirlingCache(n).second_kind(n, k);
}

BigInt factorial(unsigned n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0) return 0;
  BigInt result;
  mpz_bin_ui(result.get_mpz_t(), BigInt(static_cast<long>(n)).get_mpz_t(),
             static_cast<unsigned long>(k));
  return result;
}

BigRational falling_factorial(const BigRational& x, unsigned l) {
  BigRational result(1);
  for (unsigned i = 0; i < l; ++i) {
    result *= x - i;
  }
  return result;
}

BigRational generalized_binomial(const BigRational& x, unsigned k) {
  BigRational result = falling_factorial(x, k) / BigRational(factorial(k));
  return result;
}

}  // namespace urnlab
