#include "urnlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "urnlab/combinatorics.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/exact_moments.hpp"
#include "urnlab/gamma.hpp"

namespace urnlab {

namespace {

using Complex = std::complex<long double>;

void require_recurrence_model(const UrnSpec& spec) {
  if (spec.model != Model::M && spec.model != Model::R) {
    throw Error(ErrorCode::UnsupportedModel,
                "characteristic roots are defined for models M and R, not " +
                    std::string(to_string(spec.model)));
  }
}

long double to_ld(const BigRational& value) { return static_cast<long double>(value.get_d()); }

}  // namespace

CharacteristicPolynomial characteristic_polynomial(const UrnSpec& spec, unsigned s) {
  validate_spec(spec);
  require_recurrence_model(spec);
  if (s == 0) throw Error(ErrorCode::BadParameter, "s must be >= 1");
  const BigRational mc(spec.m * spec.c);
  const BigRational t0(spec.initial_total());
  const BigInt c(static_cast<long>(spec.c));

  RationalPolynomial sum;
  for (unsigned l = 0; l <= s; ++l) {
    const BigInt m_choose_l = binomial(spec.m, l);
    if (m_choose_l == 0) continue;
    RationalPolynomial term;
    if (spec.model == Model::M) {
      // c^l binom(m,l) binom(mc x + T0 - l, s - l)
      term = RationalPolynomial::constant(BigRational(pow(c, l) * m_choose_l) /
                                          BigRational(factorial(s - l)));
      for (unsigned i = 0; i < s - l; ++i) {
        term *= RationalPolynomial::linear(mc, t0 - l - i);
      }
    } else {
      // binom(s,l) binom(m,l) c^l l! (mc x + T0)^{s-l}
      term = RationalPolynomial::constant(
          BigRational(binomial(s, l) * m_choose_l * pow(c, l) * factorial(l)));
      for (unsigned i = 0; i < s - l; ++i) term *= RationalPolynomial::linear(mc, t0);
    }
    sum += term;
  }
  const BigRational scale = spec.model == Model::M
                                ? BigRational(factorial(s)) / pow(mc, s)
                                : BigRational(1) / pow(mc, s);
  sum *= scale;
  return CharacteristicPolynomial{spec, s, std::move(sum)};
}

std::vector<BigRational> multiplier_poles(const UrnSpec& spec, unsigned s) {
  require_recurrence_model(spec);
  const BigRational mc(spec.m * spec.c);
  const BigRational t0(spec.initial_total());
  std::vector<BigRational> poles;
  for (unsigned l = 1; l <= s; ++l) {
    poles.push_back(spec.model == Model::M ? BigRational((t0 + 1 - l) / mc) : BigRational(t0 / mc));
  }
  return poles;
}

namespace {

std::vector<Complex> aberth_roots(const std::vector<long double>& coefficients) {
  const std::size_t degree = coefficients.size() - 1;
  auto evaluate = [&](Complex z, Complex& derivative) {
    Complex value = coefficients[degree];
    derivative = 0.0L;
    for (std::size_t i = degree; i-- > 0;) {
      derivative = derivative * z + value;
      value = value * z + coefficients[i];
    }
    return value;
  };

  long double radius = 0.0L;
  for (std::size_t i = 0; i < degree; ++i) {
    radius = std::max(radius, std::pow(std::fabs(coefficients[i]),
                                       1.0L / static_cast<long double>(degree - i)));
  }
  radius = std::max(radius, 1.0L);
  std::vector<Complex> z(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    const long double angle =
        2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
            static_cast<long double>(degree) + 0.4L;
    z[k] = std::polar(radius, angle);
  }

  for (int iteration = 0; iteration < 2000; ++iteration) {
    long double largest_step = 0.0L;
    for (std::size_t k = 0; k < degree; ++k) {
      Complex derivative;
      const Complex value = evaluate(z[k], derivative);
      if (value == Complex(0.0L)) continue;
      const Complex ratio = value / derivative;
      Complex repulsion = 0.0L;
      for (std::size_t j = 0; j < degree; ++j) {
        if (j != k) repulsion += 1.0L / (z[k] - z[j]);
      }
      const Complex step = ratio / (1.0L - ratio * repulsion);
      z[k] -= step;
      largest_step = std::max(largest_step, std::abs(step) / (1.0L + std::abs(z[k])));
    }
    if (largest_step < 1e-19L) break;
  }
  // Newton polish
  for (auto& root : z) {
    for (int i = 0; i < 4; ++i) {
      Complex derivative;
      const Complex value = evaluate(root, derivative);
      if (derivative == Complex(0.0L)) break;
      root -= value / derivative;
    }
  }
  return z;
}

}  // namespace

RootSet characteristic_roots(const CharacteristicPolynomial& poly, long double tol) {
  if (!(tol > 0.0L)) throw Error(ErrorCode::BadParameter, "tolerance must be positive");
  const auto& coefficients = poly.coefficients();
  const int degree = poly.polynomial.degree();
  if (degree < 1 || poly.polynomial.leading() != 1) {
    throw Error(ErrorCode::BadParameter, "characteristic polynomial must be monic of degree >= 1");
  }
  std::vector<long double> numeric;
  numeric.reserve(coefficients.size());
  for (const auto& coefficient : coefficients) numeric.push_back(to_ld(coefficient));

  RootSet result;
  result.precision = tol;
  std::vector<Complex> x_roots =
      degree == 1 ? std::vector<Complex>{Complex(-numeric[0])} : aberth_roots(numeric);
  for (auto& x : x_roots) {
    if (std::fabs(x.imag()) <= tol * (1.0L + std::abs(x))) x = Complex(x.real(), 0.0L);
    result.roots.push_back(Complex(-x.real(), x.imag() == 0.0L ? 0.0L : -x.imag()));
    result.residuals.push_back(std::abs(poly.polynomial.evaluate(x)));
  }
  std::sort(result.roots.begin(), result.roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  // Recompute residuals in sorted order.
  for (std::size_t i = 0; i < result.roots.size(); ++i) {
    result.residuals[i] = std::abs(poly.polynomial.evaluate(-result.roots[i]));
    if (result.residuals[i] > tol) {
      throw Error(ErrorCode::RootFindingFailed,
                  "root residual " + std::to_string(static_cast<double>(result.residuals[i])) +
                      " exceeds tolerance");
    }
  }
  // Non-real roots must come in conjugate pairs.
  for (const auto& root : result.roots) {
    if (root.imag() == 0.0L) continue;
    const bool paired = std::any_of(result.roots.begin(), result.roots.end(), [&](Complex other) {
      return std::abs(other - std::conj(root)) <= tol * (1.0L + std::abs(root));
    });
    if (!paired) throw Error(ErrorCode::RootFindingFailed, "unpaired complex root");
  }

  Complex root_sum = 0.0L;
  for (const auto& root : result.roots) root_sum += root;
  const long double expected_sum = to_ld(poly.polynomial.coefficient(degree - 1));
  if (std::abs(root_sum - expected_sum) > tol * (1.0L + std::fabs(expected_sum))) {
    throw Error(ErrorCode::RootFindingFailed, "root sum disagrees with the x^(s-1) coefficient");
  }
  if (poly.spec.model == Model::M) {
    // (s T0 - binom(s,2)) / (mc) + s
    const auto s = poly.s;
    const BigRational identity =
        (BigRational(s * poly.spec.initial_total()) - BigRational(binomial(s, 2))) /
            BigRational(poly.spec.m * poly.spec.c) +
        s;
    if (std::abs(root_sum - to_ld(identity)) > tol * (1.0L + std::fabs(to_ld(identity)))) {
      throw Error(ErrorCode::RootFindingFailed, "root sum violates the model-M identity");
    }
  }
  return result;
}

std::array<long double, 2> closed_form_second_order_roots(const UrnSpec& spec) {
  require_recurrence_model(spec);
  const long double mc = static_cast<long double>(spec.m * spec.c);
  const long double t0 = static_cast<long double>(spec.initial_total());
  const long double c = static_cast<long double>(spec.c);
  if (spec.model == Model::M) {
    const long double half_root = 0.5L * std::sqrt(1.0L + 4.0L * mc * (1.0L + c));
    return {(mc + t0 - 0.5L + half_root) / mc, (mc + t0 - 0.5L - half_root) / mc};
  }
  const long double spread = c * std::sqrt(static_cast<long double>(spec.m));
  return {(t0 + mc + spread) / mc, (t0 + mc - spread) / mc};
}

namespace {

// prod Gamma(poles) / prod Gamma(roots). A pole sitting on a nonpositive
// integer cancels against the root that must coincide with it.
long double gamma_prefactor(const std::vector<BigRational>& poles, const RootSet& roots,
                            long double tol) {
  std::vector<Complex> remaining(roots.roots.begin(), roots.roots.end());
  Complex log_sum = 0.0L;
  for (const auto& pole : poles) {
    const long double value = to_ld(pole);
    if (pole <= 0 && pole.get_den() == 1) {
      auto match = std::min_element(remaining.begin(), remaining.end(), [&](Complex a, Complex b) {
        return std::abs(a - value) < std::abs(b - value);
      });
      if (match == remaining.end() || std::abs(*match - value) > 1e-6L) {
        throw Error(ErrorCode::RootFindingFailed, "pole at a nonpositive integer has no matching root");
      }
      remaining.erase(match);
      continue;
    }
    log_sum += log_gamma(Complex(value));
  }
  for (const auto& root : remaining) log_sum -= log_gamma(root);
  const Complex prefactor = std::exp(log_sum);
  if (std::fabs(prefactor.imag()) > std::max(tol, 1e-9L) * std::abs(prefactor)) {
    throw Error(ErrorCode::NonRealResult, "Gamma product has a non-negligible imaginary part");
  }
  return prefactor.real();
}

// Floating-point replay of the moment recurrences for orders 1..s.
class SeriesRecurrence {
 public:
  SeriesRecurrence(const UrnSpec& spec, unsigned s) : spec_(spec), s_(s) {
    for (unsigned r = 1; r <= s; ++r) {
      const auto exact = recurrence_weights(spec, r);
      std::vector<long double> multiplier;
      for (const auto& w : exact.multiplier) multiplier.push_back(to_ld(BigRational(w)));
      std::vector<std::vector<long double>> inhomogeneous;
      for (const auto& row : exact.inhomogeneous) {
        std::vector<long double> converted;
        for (const auto& w : row) converted.push_back(to_ld(BigRational(w)));
        inhomogeneous.push_back(std::move(converted));
      }
      multiplier_.push_back(std::move(multiplier));
      inhomogeneous_.push_back(std::move(inhomogeneous));
    }
    factors_.resize(s + 1);
  }

  // Kernel factors g_o(T) for the given total.
  void set_total(long double total) {
    factors_[0] = 1.0L;
    const long double m = static_cast<long double>(spec_.m);
    for (unsigned o = 1; o <= s_; ++o) {
      if (spec_.model == Model::M) {
        factors_[o] = static_cast<long double>(o) > m
                          ? 0.0L
                          : factors_[o - 1] * (m - (o - 1)) / (total - (o - 1));
      } else {
        factors_[o] = factors_[o - 1] * (m - (o - 1)) / total;
      }
    }
  }

  long double multiplier(unsigned r) const {
    long double sum = 0.0L;
    for (unsigned o = 0; o <= r; ++o) sum += multiplier_[r - 1][o] * factors_[o];
    return sum;
  }

  // moments[q] = E(W^q), q < r
  long double inhomogeneous(unsigned r, const std::vector<long double>& moments) const {
    long double sum = 0.0L;
    for (unsigned q = 1; q < r; ++q) {
      long double weight = 0.0L;
      for (unsigned o = 0; o <= r; ++o) weight += inhomogeneous_[r - 1][q][o] * factors_[o];
      sum += moments[q] * weight;
    }
    return sum;
  }

 private:
  const UrnSpec& spec_;
  unsigned s_;
  std::vector<std::vector<long double>> multiplier_;
  std::vector<std::vector<std::vector<long double>>> inhomogeneous_;
  std::vector<long double> factors_;
};

constexpr std::int64_t kExactHorizon = 32;
constexpr std::int64_t kFirstCheckpoint = 64;
constexpr std::size_t kRichardsonDepth = 5;
constexpr std::size_t kComparisonWindow = 16;

}  // namespace

LimitResult normalized_moment_limit(const UrnSpec& spec, unsigned s, long double tol,
                                    std::int64_t max_terms) {
  validate_spec(spec);
  require_recurrence_model(spec);
  if (s == 0) throw Error(ErrorCode::BadParameter, "s must be >= 1");
  if (!(tol > 0.0L)) throw Error(ErrorCode::BadParameter, "tolerance must be positive");

  LimitResult result;
  const auto poly = characteristic_polynomial(spec, s);
  result.roots = characteristic_roots(poly, std::max(tol, 1e-12L));
  result.prefactor = gamma_prefactor(multiplier_poles(spec, s), result.roots, tol);

  const BigRational mc(spec.m * spec.c);
  const BigRational t0(spec.initial_total());
  const BigRational w0(spec.initial_white());
  if (s == 1) {
    result.exact = w0 * mc / t0;
    result.value = to_ld(*result.exact);
    result.series = to_ld(w0);
    return result;
  }

  // Lower moments are exact up to the horizon and replayed in long double
  // beyond it.
  const auto exact_lower = compute_moment_table(spec, kExactHorizon, s - 1);
  SeriesRecurrence recurrence(spec, s);
  std::vector<long double> moments(s, 0.0L);
  for (unsigned q = 0; q < s; ++q) moments[q] = to_ld(exact_lower.at(0, q));

  const long double mc_ld = to_ld(mc);
  const long double t0_ld = to_ld(t0);
  long double product = 1.0L;
  long double partial = 0.0L;
  long double compensation = 0.0L;
  std::vector<long double> recent;  // term * l^2
  std::vector<std::vector<long double>> table;
  std::int64_t checkpoint = kFirstCheckpoint;
  bool converged = false;

  for (std::int64_t l = 0;; ++l) {
    if (l == checkpoint) {
      std::vector<long double> row{partial};
      for (std::size_t d = 1; d <= std::min(table.size(), kRichardsonDepth); ++d) {
        const long double factor = std::ldexp(1.0L, static_cast<int>(d));
        row.push_back((factor * row[d - 1] - table.back()[d - 1]) / (factor - 1.0L));
      }
      if (table.size() >= 2) {
        const std::size_t d = row.size() - 1;
        result.tail_bound = std::fabs(row[d] - table.back()[d - 1]);
        if (result.tail_bound <= tol) {
          result.series = to_ld(pow(w0, s)) + row[d];
          converged = true;
        }
      }
      table.push_back(std::move(row));
      long double k_max = 0.0L;
      for (auto value : recent) k_max = std::max(k_max, value);
      result.comparison_bound = k_max / static_cast<long double>(l);
      result.terms_used = l;
      if (converged) break;
      checkpoint *= 2;
    }
    if (l >= max_terms) break;

    const long double total = t0_ld + static_cast<long double>(l) * mc_ld;
    recurrence.set_total(total);
    product *= recurrence.multiplier(s);
    const long double term = recurrence.inhomogeneous(s, moments) / product;
    // Kahan summation
    const long double y = term - compensation;
    const long double t = partial + y;
    compensation = (t - partial) - y;
    partial = t;
    if (l > 0) {
      recent.push_back(term * static_cast<long double>(l) * static_cast<long double>(l));
      if (recent.size() > kComparisonWindow) recent.erase(recent.begin());
    }

    // advance lower moments to time l+1
    if (l + 1 <= kExactHorizon) {
      for (unsigned q = 1; q < s; ++q) moments[q] = to_ld(exact_lower.at(l + 1, q));
    } else {
      std::vector<long double> next(moments);
      for (unsigned q = 1; q < s; ++q) {
        next[q] = recurrence.multiplier(q) * moments[q] + recurrence.inhomogeneous(q, moments);
      }
      moments = std::move(next);
    }
  }

  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "series tail estimate " + std::to_string(static_cast<double>(result.tail_bound)) +
                    " above tolerance after " + std::to_string(result.terms_used) + " terms");
  }
  result.value = result.prefactor * result.series;
  return result;
}

long double second_order_gamma_ratio(const UrnSpec& spec) {
  const auto roots = closed_form_second_order_roots(spec);
  const auto f = second_moment_factors(spec);
  const Complex log_ratio = log_gamma(Complex(to_ld(f.pole_a))) +
                            log_gamma(Complex(to_ld(f.pole_b))) - log_gamma(Complex(roots[0])) -
                            log_gamma(Complex(roots[1]));
  return std::exp(log_ratio).real();
}

long double covariance_limit(const UrnSpec& spec, std::size_t i, std::size_t j) {
  validate_spec(spec);
  if (spec.model != Model::MC || spec.colors() < 3) {
    throw Error(ErrorCode::UnsupportedModel, "covariance limit requires model MC with r >= 3");
  }
  if (i == j) throw Error(ErrorCode::SameColor, "covariance needs two different colours");
  if (i >= spec.colors() || j >= spec.colors()) {
    throw Error(ErrorCode::BadParameter, "colour index out of range");
  }
  const long double weight =
      static_cast<long double>(spec.initial_counts[i]) * static_cast<long double>(spec.initial_counts[j]);
  const long double mc = static_cast<long double>(spec.m * spec.c);
  const long double t0 = static_cast<long double>(spec.initial_total());
  return weight * (second_order_gamma_ratio(marginal_spec(spec, i)) - mc * mc / (t0 * t0));
}

}  // namespace urnlab
