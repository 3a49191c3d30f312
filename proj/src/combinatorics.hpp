#pragma once

#include <numeric>
#include <vector>

#include "divelect/numeric.hpp"

namespace divelect::detail {

/// Calls fn for every k-combination of [0, n) in lexicographic order.
/// fn returning false stops the enumeration early.
template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k > n || k < 0) return;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    if constexpr (std::is_void_v<decltype(fn(pick))>) {
      fn(pick);
    } else {
      if (!fn(pick)) return;
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

inline BigInt n_choose_k(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

}  // namespace divelect::detail
