#pragma once

#include <vector>

namespace clo::detail {

/// Visits every size-r index subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(int n, int r, F&& visit) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    visit(static_cast<const std::vector<int>&>(idx));
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline int bits_for(int count) {
  int b = 0;
  while ((1 << b) < count) ++b;
  return b;
}

}  // namespace clo::detail
