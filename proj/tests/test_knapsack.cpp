#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "ck/knapsack.hpp"
#include "ck/rng.hpp"

using namespace ck;

namespace {

knapsack_instance fig1_instance() {
  knapsack_instance instance;
  instance.item_values = {6, 5, 10, 9, 7};
  instance.item_weights = {rational(2), rational(3), rational(3), rational(4), rational(7)};
  instance.capacity = rational(15);
  return instance;
}

// Random instances on a value lattice (multiples of 1/64 in [-10, 10]) so
// double sums are exact and DP/brute-force totals compare bit-for-bit.
// Weights share one denominator per instance, like the model's cost vectors.
knapsack_instance random_instance(stream_rng& gen, int max_items, int max_denominator) {
  knapsack_instance instance;
  const int n = 1 + static_cast<int>(gen.next_uniform() * max_items);
  const std::int64_t den = 1 + static_cast<std::int64_t>(gen.next_uniform() * max_denominator);
  for (int i = 0; i < n; ++i) {
    const int v64 = static_cast<int>(gen.next_uniform(-640.0, 641.0));
    instance.item_values.push_back(v64 / 64.0);
    const std::int64_t num = 1 + static_cast<std::int64_t>(gen.next_uniform() * (2 * den));
    instance.item_weights.emplace_back(num, den);
  }
  instance.capacity = rational(1 + static_cast<std::int64_t>(gen.next_uniform() * n), 1);
  return instance;
}

}  // namespace

TEST_CASE("five-item example is solved optimally") {
  const selection best = solve(fig1_instance());
  CHECK(best.total_value == 30.0);
  CHECK(best.total_weight == rational(12));
  CHECK(best.chosen == std::vector<bool>{true, true, true, true, false});

  // the alternative packing {1,2,3,5} fills the budget but is suboptimal
  const knapsack_instance instance = fig1_instance();
  rational alt_weight(0);
  double alt_value = 0.0;
  for (int i : {0, 1, 2, 4}) {
    alt_weight += instance.item_weights[i];
    alt_value += instance.item_values[i];
  }
  CHECK(alt_weight <= instance.capacity);
  CHECK(alt_value == 28.0);
  CHECK(alt_value < best.total_value);
}

TEST_CASE("item that does not fit is left out") {
  knapsack_instance instance;
  instance.item_values = {5};
  instance.item_weights = {rational(2)};
  instance.capacity = rational(1);
  const selection best = solve(instance);
  CHECK(best.chosen == std::vector<bool>{false});
  CHECK(best.total_value == 0.0);
}

TEST_CASE("empty instance") {
  knapsack_instance instance;
  instance.capacity = rational(1);
  CHECK(brute_force(instance).total_value == 0.0);
  CHECK(solve(instance).total_value == 0.0);
  CHECK(brute_force(instance).chosen.empty());
}

TEST_CASE("fractional weights pick the high-quality pair") {
  knapsack_instance instance;
  instance.item_values = {10, 2, 1};
  instance.item_weights = {rational(1, 10), rational(1), rational(9, 10)};
  instance.capacity = rational(1);
  const selection best = brute_force(instance);
  CHECK(best.chosen == std::vector<bool>{true, false, true});
  CHECK(best.total_value == 11.0);
  CHECK(solve(instance).total_value == 11.0);
}

TEST_CASE("DP equals exhaustive enumeration on random instances") {
  stream_rng gen(314159);
  for (int c = 0; c < 300; ++c) {
    const knapsack_instance instance = random_instance(gen, 12, 31);
    const selection dp = solve(instance);
    const selection oracle = brute_force(instance);
    REQUIRE(dp.total_value == oracle.total_value);
    CHECK(dp.total_weight <= instance.capacity);
    CHECK(oracle.total_weight <= instance.capacity);
  }
}

TEST_CASE("feasibility, monotonicity and negative exclusion") {
  stream_rng gen(271828);
  for (int c = 0; c < 200; ++c) {
    const knapsack_instance instance = random_instance(gen, 14, 16);
    const selection best = solve(instance);
    CHECK(best.total_weight <= instance.capacity);
    for (int i = 0; i < instance.count(); ++i) {
      if (instance.item_values[i] < 0) CHECK_FALSE(best.chosen[i]);
    }
    knapsack_instance wider = instance;
    wider.capacity = instance.capacity + rational(1, 2);
    CHECK(solve(wider).total_value >= best.total_value);
  }
}

TEST_CASE("guards reject oversized inputs") {
  knapsack_instance huge;
  huge.item_values.assign(26, 1.0);
  huge.item_weights.assign(26, rational(1));
  huge.capacity = rational(5);
  CHECK_THROWS_AS(brute_force(huge), std::length_error);

  knapsack_instance wide;
  wide.item_values = {1.0, 1.0};
  wide.item_weights = {rational(1, 1000), rational(1)};
  wide.capacity = rational(1000);
  CHECK_THROWS_AS(solve(wide, 1000), std::length_error);
  CHECK_NOTHROW(solve(wide));  // 3e6 cells sit inside the default budget
}

TEST_CASE("instance validation") {
  knapsack_instance bad;
  bad.item_values = {1.0};
  bad.item_weights = {rational(0)};
  bad.capacity = rational(1);
  CHECK_THROWS(solve(bad));
  bad.item_weights = {rational(1)};
  bad.capacity = rational(0);
  CHECK_THROWS(solve(bad));
  bad.capacity = rational(1);
  bad.item_weights.push_back(rational(1));
  CHECK_THROWS(solve(bad));
}
