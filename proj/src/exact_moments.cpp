#include "urnlab/exact_moments.hpp"

#include <string>

#include "urnlab/combinatorics.hpp"
#include "urnlab/errors.hpp"

namespace urnlab {

MomentTable::MomentTable(UrnSpec spec, std::int64_t n_max, unsigned s_max)
    : spec_(std::move(spec)), n_max_(n_max), s_max_(s_max) {
  if (n_max < 0) throw Error(ErrorCode::BadParameter, "n_max must be >= 0");
  const auto size = static_cast<std::size_t>(n_max + 1) * (s_max + 1);
  values_.resize(size);
  present_.assign(size, false);
}

std::size_t MomentTable::index(std::int64_t n, unsigned s) const noexcept {
  return static_cast<std::size_t>(n) * (s_max_ + 1) + s;
}

bool MomentTable::contains(std::int64_t n, unsigned s) const noexcept {
  return n >= 0 && n <= n_max_ && s <= s_max_ && present_[index(n, s)];
}

const BigRational& MomentTable::at(std::int64_t n, unsigned s) const {
  if (!contains(n, s)) {
    throw Error(ErrorCode::MissingMoment,
                "moment table has no entry (n=" + std::to_string(n) + ", s=" + std::to_string(s) +
                    ")");
  }
  return values_[index(n, s)];
}

void MomentTable::set(std::int64_t n, unsigned s, BigRational value) {
  if (n < 0 || n > n_max_ || s > s_max_) {
    throw Error(ErrorCode::BadParameter, "moment table index out of range");
  }
  values_[index(n, s)] = std::move(value);
  present_[index(n, s)] = true;
}

namespace {

void require_recurrence_model(const UrnSpec& spec) {
  if (spec.model != Model::M && spec.model != Model::R) {
    throw Error(ErrorCode::UnsupportedModel,
                "moment recurrence is defined for models M and R, not " +
                    std::string(to_string(spec.model)));
  }
}

BigRational mc_of(const UrnSpec& spec) { return BigRational(spec.m * spec.c); }

// Model M: binom(m,j)/binom(T,j); zero when j > m, which also covers j > T.
BigRational hypergeometric_ratio(std::int64_t m, std::int64_t total, unsigned j) {
  if (static_cast<std::int64_t>(j) > m) return 0;
  return make_rational(binomial(m, j), binomial(total, j));
}

}  // namespace

RecurrenceWeights recurrence_weights(const UrnSpec& spec, unsigned s) {
  require_recurrence_model(spec);
  if (s == 0) throw Error(ErrorCode::BadParameter, "recurrence order s must be >= 1");
  const BigInt c(static_cast<long>(spec.c));
  RecurrenceWeights w;
  w.s = s;
  w.multiplier.resize(s + 1);
  w.inhomogeneous.assign(s, std::vector<BigInt>(s + 1, BigInt(0)));
  for (unsigned o = 0; o <= s; ++o) w.multiplier[o] = pow(c, o) * binomial(s, o);

  if (spec.model == Model::M) {
    // W^{s+1-i} collects sum_{l>=i} binom(s,l) c^l
    //   sum_{j=l+1-i}^{l} (-1)^{j+i-1-l} S(l,j) s(j,l+1-i) g_j.
    for (unsigned i = 2; i <= s; ++i) {
      auto& row = w.inhomogeneous[s + 1 - i];
      for (unsigned l = i; l <= s; ++l) {
        const BigInt scale = binomial(s, l) * pow(c, l);
        for (unsigned j = l + 1 - i; j <= l; ++j) {
          BigInt term = scale * stirling_second(l, j) * stirling_first(j, l + 1 - i);
          if ((j + i - 1 - l) % 2 == 1) term = -term;
          row[j] += term;
        }
      }
    }
  } else {
    // W^{s+1-j} collects sum_{l>=j} binom(s,l) c^l S(l, l+1-j) g_{l+1-j}.
    for (unsigned j = 2; j <= s; ++j) {
      auto& row = w.inhomogeneous[s + 1 - j];
      for (unsigned l = j; l <= s; ++l) {
        const unsigned order = l + 1 - j;
        row[order] += binomial(s, l) * pow(c, l) * stirling_second(l, order);
      }
    }
  }
  return w;
}

BigRational kernel_factor(const UrnSpec& spec, std::int64_t total, unsigned order) {
  require_recurrence_model(spec);
  if (spec.model == Model::M) return hypergeometric_ratio(spec.m, total, order);
  return falling_factorial(BigRational(spec.m), order) /
         BigRational(pow(BigInt(static_cast<long>(total)), order));
}

namespace {

RecurrenceCoefficients apply_weights(const UrnSpec& spec, const RecurrenceWeights& weights,
                                     std::int64_t n, const MomentTable& lower_moments) {
  const unsigned s = weights.s;
  const auto total = total_balls(spec, n);
  std::vector<BigRational> factors(s + 1);
  for (unsigned o = 0; o <= s; ++o) factors[o] = kernel_factor(spec, total, o);

  RecurrenceCoefficients out{0, 0};
  for (unsigned o = 0; o <= s; ++o) out.multiplier += BigRational(weights.multiplier[o]) * factors[o];
  for (unsigned q = 1; q < s; ++q) {
    BigRational weight(0);
    for (unsigned o = 0; o <= s; ++o) {
      if (weights.inhomogeneous[q][o] != 0) {
        weight += BigRational(weights.inhomogeneous[q][o]) * factors[o];
      }
    }
    if (weight != 0) out.inhomogeneous += lower_moments.at(n, q) * weight;
  }
  return out;
}

}  // namespace

RecurrenceCoefficients recurrence_coefficients(const UrnSpec& spec, std::int64_t n, unsigned s,
                                               const MomentTable& lower_moments) {
  return apply_weights(spec, recurrence_weights(spec, s), n, lower_moments);
}

MomentTable compute_moment_table(const UrnSpec& spec, std::int64_t n_max, unsigned s_max) {
  validate_spec(spec);
  const UrnSpec engine_spec = spec.model == Model::MC ? marginal_spec(spec, 0) : spec;
  require_recurrence_model(engine_spec);
  MomentTable table(engine_spec, n_max, s_max);
  std::vector<RecurrenceWeights> weights;
  for (unsigned s = 1; s <= s_max; ++s) weights.push_back(recurrence_weights(engine_spec, s));
  const BigRational w0(engine_spec.initial_white());
  for (unsigned s = 0; s <= s_max; ++s) table.set(0, s, pow(w0, s));
  for (std::int64_t n = 0; n < n_max; ++n) {
    table.set(n + 1, 0, 1);
    for (unsigned s = 1; s <= s_max; ++s) {
      const auto coefficients = apply_weights(engine_spec, weights[s - 1], n, table);
      table.set(n + 1, s, coefficients.multiplier * table.at(n, s) + coefficients.inhomogeneous);
    }
  }
  return table;
}

BigRational moment(const UrnSpec& spec, std::int64_t n, unsigned s) {
  if (n < 0) throw Error(ErrorCode::BadParameter, "n must be >= 0");
  return compute_moment_table(spec, n, s).at(n, s);
}

BigRational closed_form_expectation(const UrnSpec& spec, std::int64_t n, std::size_t color) {
  validate_spec(spec);
  if (n < 0) throw Error(ErrorCode::BadParameter, "n must be >= 0");
  const BigRational t0(spec.initial_total());
  const BigRational mc = mc_of(spec);
  switch (spec.model) {
    case Model::M:
    case Model::R:
    case Model::MC: {
      const BigRational w0(spec.initial_counts.at(spec.model == Model::MC ? color : 0));
      return w0 * (n * mc + t0) / t0;
    }
    case Model::FM:
    case Model::FR: {
      const BigRational w0(spec.initial_white());
      if (n == 0) return w0;
      // With mc = T0 the first step forgets W0.
      if (mc == t0) return mc * (n + 1) / 2;
      const BigRational pairs(binomial(n, 2));
      return (mc * mc * pairs + mc * t0 * n + (t0 - mc) * w0) / (mc * (n - 1) + t0);
    }
    case Model::NB: break;
  }
  throw Error(ErrorCode::UnsupportedModel, "no closed-form expectation for model NB");
}

QuadraticFactors second_moment_factors(const UrnSpec& spec) {
  require_recurrence_model(spec);
  const BigRational mc = mc_of(spec);
  const BigRational t0(spec.initial_total());
  const BigRational m(spec.m);
  QuadraticFactors f;
  f.pole_a = t0 / mc;
  if (spec.model == Model::M) {
    f.pole_b = (t0 - 1) / mc;
    // (n + 2 + T0/mc)(n + (T0-1)/mc) + 1 - 1/m
    f.root_sum = 2 + f.pole_a + f.pole_b;
    f.root_product = (2 + f.pole_a) * f.pole_b + 1 - 1 / m;
  } else {
    f.pole_b = f.pole_a;
    // (n + T0/mc)^2 + 2 (n + T0/mc) + (m-1)/m
    f.root_sum = 2 * f.pole_a + 2;
    f.root_product = f.pole_a * f.pole_a + 2 * f.pole_a + (m - 1) / m;
  }
  return f;
}

BigRational second_moment_product(const UrnSpec& spec, std::int64_t n) {
  const auto f = second_moment_factors(spec);
  BigRational product(1);
  for (std::int64_t j = 0; j < n; ++j) {
    const BigRational x(j);
    product *= (x * x + f.root_sum * x + f.root_product) / ((x + f.pole_a) * (x + f.pole_b));
  }
  return product;
}

BigRational closed_form_second_moment(const UrnSpec& spec, std::int64_t n) {
  validate_spec(spec);
  const auto f = second_moment_factors(spec);
  const BigRational mc = mc_of(spec);
  const BigRational t0(spec.initial_total());
  const BigRational w0(spec.initial_white());
  const BigRational c(spec.c);
  const BigRational m(spec.m);
  const BigRational shift_m = (t0 - m) / mc;

  // Running product prod_{j<=l} multiplier(j) gives the reciprocal binomial
  // ratio of every summand.
  BigRational product(1);
  BigRational sum(0);
  for (std::int64_t l = 0; l < n; ++l) {
    const BigRational x(l);
    product *= (x * x + f.root_sum * x + f.root_product) / ((x + f.pole_a) * (x + f.pole_b));
    const BigRational shape = spec.model == Model::M ? BigRational((x + shift_m) / (x + f.pole_b)) : BigRational(1);
    sum += shape / product;
  }
  return product * (w0 * w0 + w0 * c * c * m / t0 * sum);
}

BigRational factorial_moment_c1(const UrnSpec& spec, std::int64_t n, unsigned s) {
  validate_spec(spec);
  if (spec.model != Model::M) {
    throw Error(ErrorCode::UnsupportedModel, "factorial-moment recurrence is for model M");
  }
  if (spec.c != 1) throw Error(ErrorCode::RequiresCEquals1, "factorial-moment recurrence needs c = 1");
  if (n < 0) throw Error(ErrorCode::BadParameter, "n must be >= 0");

  const BigRational w0(spec.initial_white());
  std::vector<BigRational> current(s + 1);
  for (unsigned r = 0; r <= s; ++r) current[r] = falling_factorial(w0, r);
  for (std::int64_t h = 1; h <= n; ++h) {
    const auto total = total_balls(spec, h - 1);
    std::vector<BigRational> next(s + 1);
    for (unsigned r = 0; r <= s; ++r) {
      BigRational value(0);
      for (unsigned i = 0; i <= r; ++i) {
        BigRational weight(0);
        for (unsigned l = i; l <= r; ++l) {
          const auto ratio = hypergeometric_ratio(spec.m, total, l);
          if (ratio == 0) continue;
          weight += BigRational(binomial(r, l) * binomial(r - l, i) * binomial(l, i)) * ratio;
        }
        value += BigRational(factorial(i)) * current[r - i] * weight;
      }
      next[r] = std::move(value);
    }
    current = std::move(next);
  }
  return current[s];
}

BigRational covariance_multicolor(const UrnSpec& spec, std::int64_t n, std::size_t i,
                                  std::size_t j) {
  validate_spec(spec);
  if (spec.model != Model::MC || spec.colors() < 3) {
    throw Error(ErrorCode::UnsupportedModel, "covariance formula requires model MC with r >= 3");
  }
  if (i == j) throw Error(ErrorCode::SameColor, "covariance needs two different colours");
  if (i >= spec.colors() || j >= spec.colors()) {
    throw Error(ErrorCode::BadParameter, "colour index out of range");
  }
  if (n < 0) throw Error(ErrorCode::BadParameter, "n must be >= 0");
  const BigRational weight(spec.initial_counts[i] * spec.initial_counts[j]);
  const BigRational t0(spec.initial_total());
  const BigRational tn(total_balls(spec, n));
  return second_moment_product(marginal_spec(spec, i), n) * weight - tn * tn / (t0 * t0) * weight;
}

MartingaleCoefficients friedman_martingale_coefficients(const UrnSpec& spec, std::int64_t n) {
  validate_spec(spec);
  if (!is_friedman(spec.model)) {
    throw Error(ErrorCode::UnsupportedModel, "martingale coefficients are defined for FM/FR");
  }
  if (n < 0) throw Error(ErrorCode::BadParameter, "n must be >= 0");
  const BigRational t0(spec.initial_total());
  const BigRational mc = mc_of(spec);
  MartingaleCoefficients out;
  out.n = n;
  // T_{n-1} with T_{-1} = T0 - mc for the n = 0 convention.
  out.phi = (t0 + (n - 1) * mc) / t0;
  BigRational totals(0);
  for (std::int64_t k = 0; k < n; ++k) totals += t0 + k * mc;
  out.psi = -mc * totals / t0;
  return out;
}

}  // namespace urnlab
