#include "urnlab/distribution_oracle.hpp"

#include <string>

#include "urnlab/combinatorics.hpp"
#include "urnlab/errors.hpp"

namespace urnlab {

BigInt projected_state_count(const UrnSpec& spec, std::int64_t n) {
  const auto draws = spec.m * n;
  if (spec.model == Model::MC) {
    const auto r = static_cast<std::int64_t>(spec.colors());
    return binomial(draws + r - 1, r - 1);
  }
  return BigInt(static_cast<long>(draws + 1));
}

namespace {

using MassMap = std::map<UrnState, BigRational>;

void add_mass(MassMap& next, UrnState state, const BigRational& mass) {
  if (mass == 0) return;
  auto [it, inserted] = next.try_emplace(std::move(state), mass);
  if (!inserted) it->second += mass;
}

MassMap step_two_colour(const UrnSpec& spec, const MassMap& current, std::int64_t time) {
  MassMap next;
  for (const auto& [state, mass] : current) {
    const auto kernel = transition_distribution(spec, state[0], time);
    for (const auto& outcome : kernel.outcomes) {
      if (outcome.probability == 0) continue;
      add_mass(next, {state[0] + outcome.white_delta}, mass * outcome.probability);
    }
  }
  return next;
}

MassMap step_non_balanced(const UrnSpec& spec, const MassMap& current) {
  MassMap next;
  for (const auto& [state, mass] : current) {
    const auto kernel = nb_transition(spec, state[0], state[1]);
    for (const auto& outcome : kernel.outcomes) {
      if (outcome.probability == 0) continue;
      add_mass(next, {state[0] + outcome.white_delta, state[1] + outcome.black_delta},
               mass * outcome.probability);
    }
  }
  return next;
}

MassMap step_multicolor(const UrnSpec& spec, const MassMap& current) {
  MassMap next;
  for (const auto& [state, mass] : current) {
    for (const auto& outcome : multicolor_transition(spec, state)) {
      if (outcome.probability == 0) continue;
      UrnState target = state;
      for (std::size_t i = 0; i < target.size(); ++i) target[i] += spec.c * outcome.drawn[i];
      add_mass(next, std::move(target), mass * outcome.probability);
    }
  }
  return next;
}

}  // namespace

StateDistribution exact_distribution(const UrnSpec& spec, std::int64_t n, std::size_t state_cap) {
  validate_spec(spec);
  if (n < 0) throw Error(ErrorCode::BadParameter, "n must be >= 0");
  const auto projected = projected_state_count(spec, n);
  if (projected > BigInt(static_cast<unsigned long>(state_cap))) {
    throw Error(ErrorCode::StateSpaceTooLarge,
                "projected state count " + projected.get_str() + " exceeds the cap of " +
                    std::to_string(state_cap));
  }

  MassMap mass;
  switch (spec.model) {
    case Model::MC: mass.emplace(spec.initial_counts, 1); break;
    case Model::NB: mass.emplace(spec.initial_counts, 1); break;
    default: mass.emplace(UrnState{spec.initial_white()}, 1); break;
  }
  for (std::int64_t time = 0; time < n; ++time) {
    switch (spec.model) {
      case Model::MC: mass = step_multicolor(spec, mass); break;
      case Model::NB: mass = step_non_balanced(spec, mass); break;
      default: mass = step_two_colour(spec, mass, time); break;
    }
  }
  return StateDistribution{spec, n, std::move(mass)};
}

BigRational oracle_moment(const StateDistribution& dist, unsigned s) {
  BigRational total(0);
  for (const auto& [state, mass] : dist.mass) {
    total += mass * pow(BigInt(static_cast<long>(state[0])), s);
  }
  return total;
}

BigRational oracle_joint_moment(const StateDistribution& dist,
                                std::span<const unsigned> exponents) {
  BigRational total(0);
  for (const auto& [state, mass] : dist.mass) {
    if (exponents.size() > state.size()) {
      throw Error(ErrorCode::BadParameter, "more exponents than state components");
    }
    BigInt weight(1);
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      weight *= pow(BigInt(static_cast<long>(state[i])), exponents[i]);
    }
    total += mass * weight;
  }
  return total;
}

namespace {

struct LemmaContext {
  std::int64_t total;
  std::int64_t m;
  std::int64_t c;
};

LemmaContext lemma_context(const UrnSpec& spec, std::int64_t n, std::int64_t j, std::int64_t k) {
  validate_spec(spec);
  if (spec.model != Model::R) {
    throw Error(ErrorCode::UnsupportedModel, "the transition-sum identity is for model R");
  }
  LemmaContext ctx{total_balls(spec, n), spec.m, spec.c};
  for (std::int64_t i = 0; i <= ctx.m; ++i) {
    const auto source = j + ctx.c * (k - i);
    if (source < 0 || source > ctx.total) {
      throw Error(ErrorCode::OutOfRangeState,
                  "source state " + std::to_string(source) + " outside [0, " +
                      std::to_string(ctx.total) + "]");
    }
  }
  return ctx;
}

// Numerator of the direct sum over the common denominator T_n^m.
BigInt direct_numerator(const LemmaContext& ctx, std::int64_t j, std::int64_t k) {
  BigInt numerator(0);
  for (std::int64_t i = 0; i <= ctx.m; ++i) {
    const BigInt source(static_cast<long>(j + ctx.c * (k - i)));
    const auto ui = static_cast<unsigned>(i);
    numerator += binomial(ctx.m, i) * pow(source, ui) *
                 pow(BigInt(BigInt(static_cast<long>(ctx.total)) - source), static_cast<unsigned>(ctx.m) - ui);
  }
  return numerator;
}

}  // namespace

BigRational lemma_transition_sum(const UrnSpec& spec, std::int64_t n, std::int64_t j,
                                  std::int64_t k) {
  const auto ctx = lemma_context(spec, n, j, k);
  // P{W_{n+1} = w + c i | W_n = w} = binom(m,i) w^i (T_n - w)^{m-i} / T_n^m.
  BigRational sum(0);
  const BigInt total(static_cast<long>(ctx.total));
  const BigInt denominator = pow(total, static_cast<unsigned>(ctx.m));
  for (std::int64_t i = 0; i <= ctx.m; ++i) {
    const BigInt source(static_cast<long>(j + ctx.c * (k - i)));
    const auto ui = static_cast<unsigned>(i);
    sum += make_rational(binomial(ctx.m, i) * pow(source, ui) *
                             pow(BigInt(total - source), static_cast<unsigned>(ctx.m) - ui),
                         denominator);
  }
  return sum;
}

BigRational lemma_transition_sum_expanded(const UrnSpec& spec, std::int64_t n, std::int64_t j,
                                          std::int64_t k) {
  const auto ctx = lemma_context(spec, n, j, k);
  const BigInt total(static_cast<long>(ctx.total));
  BigInt numerator(0);
  for (std::int64_t l = 0; l <= ctx.m; ++l) {
    BigInt inner(0);
    for (std::int64_t i = 0; i <= ctx.m - l; ++i) {
      const BigInt source(static_cast<long>(j + ctx.c * (k - i)));
      inner += binomial(ctx.m, i) * binomial(ctx.m - i, l) * pow(source, static_cast<unsigned>(i)) *
               pow(BigInt(-source), static_cast<unsigned>(ctx.m - i - l));
    }
    numerator += pow(total, static_cast<unsigned>(l)) * inner;
  }
  return make_rational(numerator, pow(total, static_cast<unsigned>(ctx.m)));
}

LemmaBoundScan scan_lemma_bound(const UrnSpec& spec, std::int64_t ell, std::int64_t n_lo,
                                std::int64_t n_hi) {
  validate_spec(spec);
  if (spec.model != Model::R) {
    throw Error(ErrorCode::UnsupportedModel, "the transition-sum bound is for model R");
  }
  if (ell < 1 || n_lo < 1 || n_hi < n_lo) {
    throw Error(ErrorCode::BadParameter, "bound scan needs ell >= 1 and 1 <= n_lo <= n_hi");
  }
  const auto m = spec.m;
  const auto c = spec.c;
  const auto j_hi = total_balls(spec, ell - 1);
  LemmaBoundScan scan;
  bool first = true;
  for (std::int64_t n = std::max(n_lo, ell); n <= n_hi; ++n) {
    const auto total = total_balls(spec, n);
    const LemmaContext ctx{total, m, c};
    const BigInt denominator = pow(BigInt(static_cast<long>(total)), static_cast<unsigned>(m));
    const BigInt n_big(static_cast<long>(n));
    for (std::int64_t j = c * m; j <= j_hi; ++j) {
      // j >= cm keeps every source state nonnegative; the top state j+ck
      // must stay within T_n.
      for (std::int64_t k = 0; k < m * (n + 1) && j + c * k <= total; ++k) {
        const auto numerator = direct_numerator(ctx, j, k);
        // n^2 (num/den - 1 + 1/n) = (n^2 num - n^2 den + n den) / den
        BigRational excess = make_rational(
            n_big * n_big * numerator - n_big * n_big * denominator + n_big * denominator,
            denominator);
        ++scan.evaluated;
        if (first || excess > scan.max_excess) {
          scan.max_excess = std::move(excess);
          scan.arg_n = n;
          scan.arg_j = j;
          scan.arg_k = k;
          first = false;
        }
      }
    }
  }
  if (first) throw Error(ErrorCode::BadParameter, "bound scan range contains no admissible (j, k)");
  return scan;
}

}  // namespace urnlab
