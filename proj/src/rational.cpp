#include "urnlab/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "urnlab/errors.hpp"

namespace urnlab {

BigRational make_rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) {
    throw Error(ErrorCode::BadParameter, "rational with zero denominator");
  }
  BigRational value(numerator, denominator);
  value.canonicalize();
  return value;
}

BigRational make_rational(std::int64_t numerator, std::int64_t denominator) {
  return make_rational(BigInt(static_cast<long>(numerator)),
                       BigInt(static_cast<long>(denominator)));
}

BigInt pow(const BigInt& base, unsigned exponent) {
  BigInt result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

BigRational pow(const BigRational& base, unsigned exponent) {
  BigRational result(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
  // numerator and denominator stay coprime, sign lives in the numerator
  return result;
}

std::string to_string(const BigRational& value) { return value.get_str(); }

std::string to_string(const BigInt& value) { return value.get_str(); }

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  const auto den_text = slash == std::string_view::npos ? std::string_view("1")
                                                        : text.substr(slash + 1);
  if (!is_integer_literal(num_text) || !is_integer_literal(den_text) ||
      den_text.front() == '-' || den_text.front() == '+') {
    throw Error(ErrorCode::BadParameter,
                "malformed rational '" + std::string(text) + "'");
  }
  std::string num(num_text);
  if (num.front() == '+') num.erase(0, 1);
  return make_rational(BigInt(num), BigInt(std::string(den_text)));
}

// mpq get_d truncates; going through 40 significant decimal digits lets
// strtod do the rounding to nearest.
double to_double(const BigRational& value) {
  if (value == 0) return 0.0;
  const mpf_class wide(value, 256);
  mp_exp_t exponent = 0;
  std::string digits = wide.get_str(exponent, 10, 40);
  const bool negative = digits.front() == '-';
  if (negative) digits.erase(0, 1);
  const std::string text = (negative ? "-0." : "0.") + digits + "e" + std::to_string(exponent);
  return std::strtod(text.c_str(), nullptr);
}

}  // namespace urnlab
