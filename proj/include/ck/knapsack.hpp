#pragma once

#include <cstddef>
#include <vector>

#include "ck/rational.hpp"

namespace ck {

// Binary knapsack instance. Values may carry any sign (aggregated scores can
// go negative); weights and capacity are exact rationals.
struct knapsack_instance {
  std::vector<double> item_values;
  std::vector<rational> item_weights;
  rational capacity{0};

  int count() const { return static_cast<int>(item_values.size()); }
  void validate() const;
};

struct selection {
  std::vector<bool> chosen;
  double total_value = 0.0;
  rational total_weight{0};
};

inline constexpr std::size_t default_dp_cell_limit = 100'000'000;

// Exact DP over integer-scaled weights: all weights are brought to their
// least common denominator D and the table runs over capacities
// 0..floor(W*D). Values stay real; the table stores the best value per
// integer weight level. An item is taken only when it strictly improves the
// value, so ties resolve toward not taking and items with value <= 0 are
// never selected. Throws std::length_error when the table would exceed
// max_table_cells.
selection solve(const knapsack_instance& instance,
                std::size_t max_table_cells = default_dp_cell_limit);

// Exhaustive 2^n verification oracle, n <= 25. Exact rational weight
// arithmetic throughout.
selection brute_force(const knapsack_instance& instance);

}  // namespace ck
