#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "divelect/errors.hpp"

namespace divelect {

template <typename Value>
struct KnapsackItem {
  std::int64_t weight = 0;  // nonnegative
  Value value{};
};

template <typename Value>
struct KnapsackResult {
  std::vector<int> chosen;  // ascending item indices
  Value total{};
};

/// 0-1 knapsack by dynamic programming over capacities 0..B.
/// Reconstruction is deterministic: at equal value the later item is left
/// out, so value is carried by the lowest-indexed items.
/// Throws ResourceError when items.size() * (capacity + 1) exceeds cell_cap.
template <typename Value>
KnapsackResult<Value> knapsack_dp(const std::vector<KnapsackItem<Value>>& items,
                                  std::int64_t capacity,
                                  std::int64_t cell_cap = 100'000'000) {
  if (capacity < 0) throw InvariantError("knapsack capacity is negative");
  const std::int64_t n = static_cast<std::int64_t>(items.size());
  if (n > 0 && capacity + 1 > cell_cap / n) {
    throw ResourceError("knapsack needs " + std::to_string(n) + " x " +
                        std::to_string(capacity + 1) +
                        " cells, above the configured cap of " +
                        std::to_string(cell_cap));
  }
  const std::size_t width = static_cast<std::size_t>(capacity) + 1;

  std::vector<Value> best(width, Value{});
  // taken[i] marks, per capacity, whether item i enters the optimum.
  std::vector<std::vector<bool>> taken(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    taken[i].assign(width, false);
    const auto w = items[i].weight;
    if (w < 0) throw InvariantError("knapsack item weight is negative");
    if (w > capacity) continue;
    for (std::int64_t c = capacity; c >= w; --c) {
      const Value with = best[static_cast<std::size_t>(c - w)] + items[i].value;
      if (with > best[static_cast<std::size_t>(c)]) {
        best[static_cast<std::size_t>(c)] = with;
        taken[i][static_cast<std::size_t>(c)] = true;
      }
    }
  }

  KnapsackResult<Value> result;
  result.total = best[width - 1];
  std::int64_t c = capacity;
  for (std::int64_t i = n - 1; i >= 0; --i) {
    if (taken[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) {
      result.chosen.push_back(static_cast<int>(i));
      c -= items[static_cast<std::size_t>(i)].weight;
    }
  }
  std::reverse(result.chosen.begin(), result.chosen.end());
  return result;
}

}  // namespace divelect
