#include "urnlab/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "urnlab/errors.hpp"

namespace urnlab {

namespace {

constexpr long double kG = 7.0L;
constexpr std::array<long double, 9> kLanczos = {
    0.99999999999980993227684700473478L,  676.520368121885098567009190444019L,
    -1259.13921672240287047156078755283L, 771.3234287776530788486528258894L,
    -176.61502916214059906584551354L,     12.507343278686904814458936853L,
    -0.13857109526572011689554707L,       9.984369578019570859563e-6L,
    1.50563273514931155834e-7L,
};

using Complex = std::complex<long double>;

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0L && z.real() <= 0.0L && std::floor(z.real()) == z.real();
}

}  // namespace

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorCode::BadParameter, "Gamma has a pole at nonpositive integers");
  }
  constexpr long double pi = std::numbers::pi_v<long double>;
  if (z.real() < 0.5L) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(Complex(pi)) - std::log(std::sin(pi * z)) - log_gamma(1.0L - z);
  }
  z -= 1.0L;
  Complex series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<long double>(i));
  }
  const Complex t = z + kG + 0.5L;
  return 0.5L * std::log(2.0L * pi) + (z + 0.5L) * std::log(t) - t + std::log(series);
}

Complex gamma(Complex z) {
  if (z.imag() == 0.0L) return gamma(z.real());
  return std::exp(log_gamma(z));
}

long double gamma(long double x) {
  if (x <= 0.0L && std::floor(x) == x) {
    throw Error(ErrorCode::BadParameter, "Gamma has a pole at nonpositive integers");
  }
  constexpr long double pi = std::numbers::pi_v<long double>;
  if (x < 0.5L) return pi / (std::sin(pi * x) * gamma(1.0L - x));
  x -= 1.0L;
  long double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (x + static_cast<long double>(i));
  }
  const long double t = x + kG + 0.5L;
  return std::sqrt(2.0L * pi) * std::pow(t, x + 0.5L) * std::exp(-t) * series;
}

}  // namespace urnlab
