#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "urnlab/rational.hpp"

namespace urnlab {

// Dense univariate polynomial with exact coefficients, lowest degree first.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<BigRational> coefficients);

  static RationalPolynomial constant(const BigRational& value);
  // a*x + b
  static RationalPolynomial linear(const BigRational& a, const BigRational& b);

  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<BigRational>& coefficients() const noexcept { return coefficients_; }
  const BigRational& coefficient(std::size_t power) const;
  const BigRational& leading() const;

  BigRational operator()(const BigRational& x) const;
  std::complex<long double> evaluate(std::complex<long double> x) const;

  RationalPolynomial& operator+=(const RationalPolynomial& other);
  RationalPolynomial& operator*=(const RationalPolynomial& other);
  RationalPolynomial& operator*=(const BigRational& factor);

  friend RationalPolynomial operator+(RationalPolynomial lhs, const RationalPolynomial& rhs) {
    return lhs += rhs;
  }
  friend RationalPolynomial operator*(RationalPolynomial lhs, const RationalPolynomial& rhs) {
    return lhs *= rhs;
  }
  friend RationalPolynomial operator*(RationalPolynomial lhs, const BigRational& rhs) {
    return lhs *= rhs;
  }
  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

 private:
  void trim();

  std::vector<BigRational> coefficients_;
};

}  // namespace urnlab
