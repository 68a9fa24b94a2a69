#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "urnlab/rational.hpp"
#include "urnlab/urn_model.hpp"

namespace urnlab {

// State keys: {white} for balanced two-colour models, the full colour vector
// for MC, and {white, black} for NB.
using UrnState = std::vector<std::int64_t>;

struct StateDistribution {
  UrnSpec spec;
  std::int64_t time = 0;
  std::map<UrnState, BigRational> mass;  // positive masses only
};

constexpr std::size_t kDefaultStateCap = 1'000'000;

// Upper bound on the number of states at time n: mn+1 for two-colour models
// (NB included, since the state is fixed by the cumulative white draws) and
// binom(mn+r-1, r-1) for MC.
BigInt projected_state_count(const UrnSpec& spec, std::int64_t n);

// Exact law at time n by forward propagation of the one-step kernels.
// Throws StateSpaceTooLarge when the projected count exceeds state_cap.
StateDistribution exact_distribution(const UrnSpec& spec, std::int64_t n,
                                     std::size_t state_cap = kDefaultStateCap);

// sum_state mass * state[0]^s (white count, or colour 1 for MC).
BigRational oracle_moment(const StateDistribution& dist, unsigned s);

// sum_state mass * prod_i state[i]^exponents[i].
BigRational oracle_joint_moment(const StateDistribution& dist,
                                std::span<const unsigned> exponents);

// Model R, sum_{i=0}^{m} P{W_{n+1} = j+ck | W_n = j+c(k-i)} summed directly
// over the binomial kernel.
BigRational lemma_transition_sum(const UrnSpec& spec, std::int64_t n, std::int64_t j,
                                 std::int64_t k);

// The same quantity from the expansion in powers of T_n:
//   T_n^{-m} sum_l T_n^l sum_{i<=m-l} binom(m,i) binom(m-i,l) w_i^i (-w_i)^{m-i-l},
// with w_i = j + c(k-i).
BigRational lemma_transition_sum_expanded(const UrnSpec& spec, std::int64_t n, std::int64_t j,
                                          std::int64_t k);

// Largest scaled excess n^2 (sum - 1 + 1/n) over n in [n_lo, n_hi],
// cm <= j <= T_{ell-1}, and 0 <= k < m(n+1) with every source state inside
// [0, T_n]. The bound sum <= 1 - 1/n + kappa/n^2 holds on that range exactly
// when kappa >= max_excess.
struct LemmaBoundScan {
  BigRational max_excess;
  std::int64_t arg_n = 0;
  std::int64_t arg_j = 0;
  std::int64_t arg_k = 0;
  std::int64_t evaluated = 0;
};
LemmaBoundScan scan_lemma_bound(const UrnSpec& spec, std::int64_t ell, std::int64_t n_lo,
                                std::int64_t n_hi);

}  // namespace urnlab
