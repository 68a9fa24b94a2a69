#include <doctest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "urnlab/distribution_oracle.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/exact_moments.hpp"

using namespace urnlab;

namespace {

UrnSpec two_colour(Model model, std::int64_t w, std::int64_t b, std::int64_t m, std::int64_t c) {
  return UrnSpec{model, m, c, {w, b}, std::nullopt, Sampling::WithoutReplacement};
}

// Collapses the brute-force colour vectors onto the oracle's state keys.
std::map<UrnState, BigRational> keyed(const UrnSpec& spec, std::int64_t n) {
  std::map<UrnState, BigRational> out;
  for (const auto& [state, p] : oracle::brute_force_law(spec, n)) {
    const bool full = spec.model == Model::MC || spec.model == Model::NB;
    out[full ? state : UrnState{state[0]}] += p;
  }
  return out;
}

}  // namespace

TEST_CASE("exact_distribution examples") {
  const auto r = exact_distribution(two_colour(Model::R, 1, 1, 2, 1), 1);
  const std::map<UrnState, BigRational> r_expected{
      {{1}, make_rational(1, 4)}, {{2}, make_rational(1, 2)}, {{3}, make_rational(1, 4)}};
  CHECK(r.mass == r_expected);

  const auto m = exact_distribution(two_colour(Model::M, 2, 1, 2, 1), 1);
  const std::map<UrnState, BigRational> m_expected{{{3}, make_rational(2, 3)},
                                                   {{4}, make_rational(1, 3)}};
  CHECK(m.mass == m_expected);
  CHECK(oracle_moment(m, 2) == make_rational(34, 3));
  CHECK(oracle_moment(m, 0) == 1);

  const auto start = exact_distribution(two_colour(Model::FR, 5, 2, 3, 2), 0);
  CHECK(start.mass.size() == 1);
  CHECK(oracle_moment(start, 1) == 5);
}

TEST_CASE("oracle agrees with labelled-ball enumeration for every model") {
  std::vector<UrnSpec> specs;
  for (Model model : {Model::M, Model::R, Model::FM, Model::FR}) {
    specs.push_back(two_colour(model, 2, 1, 2, 1));
    specs.push_back(two_colour(model, 1, 2, 3, 2));
  }
  specs.push_back(UrnSpec{Model::MC, 2, 1, {1, 1, 1}, std::nullopt, Sampling::WithoutReplacement});
  specs.push_back(UrnSpec{Model::MC, 1, 2, {2, 1, 1, 1}, std::nullopt, Sampling::WithoutReplacement});
  for (auto sampling : {Sampling::WithoutReplacement, Sampling::WithReplacement}) {
    auto nb = two_colour(Model::NB, 2, 1, 2, 1);
    nb.nb = NonBalancedParams{2, 3};
    nb.nb_sampling = sampling;
    specs.push_back(nb);
  }
  for (const auto& spec : specs) {
    for (std::int64_t n = 0; n <= 3; ++n) {
      const auto dist = exact_distribution(spec, n);
      CHECK(dist.time == n);
      CHECK(dist.mass == keyed(spec, n));
      BigRational total(0);
      for (const auto& [state, p] : dist.mass) {
        CHECK(p > 0);
        total += p;
      }
      CHECK(total == 1);
    }
  }
}

TEST_CASE("support structure") {
  const auto spec = two_colour(Model::M, 3, 2, 2, 3);
  const auto dist = exact_distribution(spec, 5);
  for (const auto& [state, p] : dist.mass) {
    const auto gained = state[0] - 3;
    CHECK(gained % 3 == 0);
    CHECK(gained >= 0);
    CHECK(gained <= 3 * 2 * 5);
  }
  CHECK(dist.mass.size() <= 11);

  // Friedman urns add to the colour that was not drawn; only the first
  // draw from (1, 1) is forced.
  const auto fm = exact_distribution(two_colour(Model::FM, 1, 1, 2, 1), 1);
  CHECK(fm.mass.size() == 1);
  CHECK(fm.mass.begin()->first == UrnState{2});
  const auto later = exact_distribution(two_colour(Model::FM, 1, 1, 2, 1), 2);
  const std::map<UrnState, BigRational> expected{
      {{2}, make_rational(1, 6)}, {{3}, make_rational(2, 3)}, {{4}, make_rational(1, 6)}};
  CHECK(later.mass == expected);
}

TEST_CASE("multicolour with two colours is model M") {
  const UrnSpec mc{Model::MC, 2, 2, {2, 3}, std::nullopt, Sampling::WithoutReplacement};
  const auto m = two_colour(Model::M, 2, 3, 2, 2);
  for (std::int64_t n = 0; n <= 5; ++n) {
    const auto a = exact_distribution(mc, n);
    const auto b = exact_distribution(m, n);
    std::map<UrnState, BigRational> projected;
    for (const auto& [state, p] : a.mass) projected[{state[0]}] += p;
    CHECK(projected == b.mass);
  }
}

TEST_CASE("oracle moments match the recurrence") {
  const UrnSpec mc{Model::MC, 2, 1, {1, 2, 2}, std::nullopt, Sampling::WithoutReplacement};
  const auto table = compute_moment_table(mc, 4, 3);
  for (std::int64_t n = 0; n <= 4; ++n) {
    const auto dist = exact_distribution(mc, n);
    for (unsigned s = 0; s <= 3; ++s) CHECK(oracle_moment(dist, s) == table.at(n, s));
    const std::vector<unsigned> exps{1, 1, 0};
    CHECK(oracle_joint_moment(dist, exps) - oracle_moment(dist, 1) * [&] {
      const std::vector<unsigned> second{0, 1, 0};
      return oracle_joint_moment(dist, second);
    }() == covariance_multicolor(mc, n, 0, 1));
  }
}

TEST_CASE("state cap") {
  const auto spec = two_colour(Model::M, 2, 1, 2, 1);
  CHECK(projected_state_count(spec, 10) == 21);
  const UrnSpec mc{Model::MC, 2, 1, {1, 1, 1}, std::nullopt, Sampling::WithoutReplacement};
  CHECK(projected_state_count(mc, 3) == 28);
  try {
    exact_distribution(spec, 10, 20);
    FAIL("expected StateSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateSpaceTooLarge);
  }
  CHECK_NOTHROW(exact_distribution(spec, 10, 21));
}

TEST_CASE("lemma_transition_sum examples") {
  const auto r = two_colour(Model::R, 1, 1, 2, 1);  // T_1 = 4
  CHECK(lemma_transition_sum(r, 1, 2, 0) == make_rational(5, 8));
  CHECK(lemma_transition_sum_expanded(r, 1, 2, 0) == make_rational(5, 8));

  for (std::int64_t c : {1, 2, 3}) {
    const auto one = two_colour(Model::R, 2, 3, 1, c);
    for (std::int64_t n = 0; n <= 4; ++n) {
      const auto total = total_balls(one, n);
      for (std::int64_t j = c; j <= total - c; ++j) {
        CHECK(lemma_transition_sum(one, n, j, 0) == make_rational(total - c, total));
      }
    }
  }

  try {
    lemma_transition_sum(r, 1, 1, 4);
    FAIL("expected OutOfRangeState");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRangeState);
  }
}

TEST_CASE("transition-sum forms agree exactly") {
  for (std::int64_t m : {1, 2, 3, 4}) {
    for (std::int64_t c : {1, 2}) {
      const auto spec = two_colour(Model::R, 2, 3, m, c);
      for (std::int64_t n = 1; n <= 5; ++n) {
        const auto total = total_balls(spec, n);
        for (std::int64_t j = c * m; j <= total; ++j) {
          for (std::int64_t k = 0; j + c * k <= total; ++k) {
            CHECK(lemma_transition_sum(spec, n, j, k) == lemma_transition_sum_expanded(spec, n, j, k));
          }
        }
      }
    }
  }
}

TEST_CASE("scan_lemma_bound is consistent with the direct sums") {
  const auto spec = two_colour(Model::R, 1, 1, 2, 1);
  const auto scan = scan_lemma_bound(spec, 2, 2, 12);
  CHECK(scan.evaluated > 0);
  const auto n = scan.arg_n;
  const BigRational direct = lemma_transition_sum(spec, n, scan.arg_j, scan.arg_k);
  CHECK(scan.max_excess == BigRational(n * n) * (direct - 1 + make_rational(1, n)));
  CHECK_THROWS_AS(scan_lemma_bound(two_colour(Model::M, 1, 1, 2, 1), 2, 2, 12), Error);
}
