#include "ck/knapsack.hpp"

#include <algorithm>
#include <stdexcept>

namespace ck {

void knapsack_instance::validate() const {
  if (item_weights.size() != item_values.size()) {
    throw std::invalid_argument("knapsack: values and weights must have equal length");
  }
  for (const rational& w : item_weights) {
    if (!(w > rational(0))) throw std::invalid_argument("knapsack: weights must be positive");
  }
  if (!(capacity > rational(0))) throw std::invalid_argument("knapsack: capacity must be positive");
}

namespace {

selection finish(const knapsack_instance& instance, std::vector<bool> chosen) {
  selection out;
  out.chosen = std::move(chosen);
  out.total_weight = rational(0);
  for (int i = 0; i < instance.count(); ++i) {
    if (out.chosen[i]) {
      out.total_value += instance.item_values[i];
      out.total_weight += instance.item_weights[i];
    }
  }
  return out;
}

}  // namespace

selection solve(const knapsack_instance& instance, std::size_t max_table_cells) {
  instance.validate();
  const int n = instance.count();
  if (n == 0) return finish(instance, {});

  const std::int64_t denom = common_denominator(instance.item_weights);
  // capacity floor(W*D): item weights are exact multiples of 1/D, so the
  // integer constraint is equivalent to the rational one.
  const __int128 cap_scaled =
      static_cast<__int128>(instance.capacity.num()) * denom / instance.capacity.den();
  if (cap_scaled > INT64_MAX) throw std::length_error("knapsack: instance too large for exact DP");
  const std::int64_t cap = static_cast<std::int64_t>(cap_scaled);

  const std::size_t cells = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(cap + 1);
  if (cells > max_table_cells || cap < 0) {
    throw std::length_error("knapsack: instance too large for exact DP");
  }

  std::vector<std::int64_t> scaled(n);
  for (int i = 0; i < n; ++i) {
    scaled[i] = instance.item_weights[i].num() * (denom / instance.item_weights[i].den());
  }

  std::vector<double> best(static_cast<std::size_t>(cap) + 1, 0.0);
  // take[i*(cap+1)+c]: processing item i at capacity c strictly improved the value
  std::vector<bool> take(static_cast<std::size_t>(n) * (cap + 1), false);
  for (int i = 0; i < n; ++i) {
    const std::int64_t w = scaled[i];
    if (w > cap) continue;
    const double v = instance.item_values[i];
    const std::size_t row = static_cast<std::size_t>(i) * (cap + 1);
    for (std::int64_t c = cap; c >= w; --c) {
      const double cand = best[c - w] + v;
      if (cand > best[c]) {
        best[c] = cand;
        take[row + c] = true;
      }
    }
  }

  std::vector<bool> chosen(n, false);
  std::int64_t c = cap;
  for (int i = n - 1; i >= 0; --i) {
    if (take[static_cast<std::size_t>(i) * (cap + 1) + c]) {
      chosen[i] = true;
      c -= scaled[i];
    }
  }
  return finish(instance, std::move(chosen));
}

selection brute_force(const knapsack_instance& instance) {
  instance.validate();
  const int n = instance.count();
  if (n > 25) throw std::length_error("brute_force: more than 25 items");
  std::uint32_t best_mask = 0;
  double best_value = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    rational weight(0);
    double value = 0.0;
    bool feasible = true;
    for (int i = 0; i < n && feasible; ++i) {
      if (mask & (1u << i)) {
        weight += instance.item_weights[i];
        if (instance.capacity < weight) feasible = false;
        value += instance.item_values[i];
      }
    }
    if (feasible && value > best_value) {
      best_value = value;
      best_mask = mask;
    }
  }
  std::vector<bool> chosen(n, false);
  for (int i = 0; i < n; ++i) chosen[i] = (best_mask & (1u << i)) != 0;
  return finish(instance, std::move(chosen));
}

}  // namespace ck
