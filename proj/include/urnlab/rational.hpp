#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace urnlab {

using BigInt = mpz_class;

// GMP keeps results of arithmetic canonical (lowest terms, positive
// denominator); only values assembled by hand need make_rational.
using BigRational = mpq_class;

BigRational make_rational(const BigInt& numerator, const BigInt& denominator);
BigRational make_rational(std::int64_t numerator, std::int64_t denominator = 1);

BigRational pow(const BigRational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const BigRational& value);
std::string to_string(const BigInt& value);

// Accepts "p/q" or "p" with an optional leading minus sign.
BigRational parse_rational(std::string_view text);

double to_double(const BigRational& value);

}  // namespace urnlab
