#include "urnlab/polynomial.hpp"

#include "urnlab/errors.hpp"

namespace urnlab {

RationalPolynomial::RationalPolynomial(std::vector<BigRational> coefficients)
    : coefficients_(std::move(coefficients)) {
  trim();
}

RationalPolynomial RationalPolynomial::constant(const BigRational& value) {
  return RationalPolynomial({value});
}

RationalPolynomial RationalPolynomial::linear(const BigRational& a, const BigRational& b) {
  return RationalPolynomial({b, a});
}

const BigRational& RationalPolynomial::coefficient(std::size_t power) const {
  static const BigRational zero(0);
  return power < coefficients_.size() ? coefficients_[power] : zero;
}

const BigRational& RationalPolynomial::leading() const {
  if (coefficients_.empty()) {
    throw Error(ErrorCode::BadParameter, "zero polynomial has no leading coefficient");
  }
  return coefficients_.back();
}

BigRational RationalPolynomial::operator()(const BigRational& x) const {
  BigRational acc(0);
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

std::complex<long double> RationalPolynomial::evaluate(std::complex<long double> x) const {
  std::complex<long double> acc(0.0L);
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * x + static_cast<long double>(it->get_d());
  }
  return acc;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) {
    coefficients_.resize(other.coefficients_.size(), BigRational(0));
  }
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) {
    coefficients_[i] += other.coefficients_[i];
  }
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& other) {
  if (coefficients_.empty() || other.coefficients_.empty()) {
    coefficients_.clear();
    return *this;
  }
  std::vector<BigRational> product(coefficients_.size() + other.coefficients_.size() - 1,
                                   BigRational(0));
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < other.coefficients_.size(); ++j) {
      product[i + j] += coefficients_[i] * other.coefficients_[j];
    }
  }
  coefficients_ = std::move(product);
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const BigRational& factor) {
  for (auto& coefficient : coefficients_) coefficient *= factor;
  trim();
  return *this;
}

void RationalPolynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

}  // namespace urnlab
