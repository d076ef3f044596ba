#include "demolab/subsets.hpp"

#include <cstddef>

namespace demolab {

std::uint64_t binomial(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // r stays equal to C(n-k+i, i) after step i, so the division is exact.
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    if (r > cap / factor * static_cast<std::uint64_t>(i)) return cap;
    r = r * factor / static_cast<std::uint64_t>(i);
    if (r >= cap) return cap;
  }
  return r;
}

bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

std::vector<int> combination_at_rank(int n, int k, std::uint64_t rank) {
  std::vector<int> comb(static_cast<std::size_t>(k));
  int start = 0;
  for (int i = 0; i < k; ++i) {
    for (int c = start; c < n; ++c) {
      const std::uint64_t below = binomial(n - c - 1, k - i - 1);
      if (rank < below) {
        comb[static_cast<std::size_t>(i)] = c;
        start = c + 1;
        break;
      }
      rank -= below;
    }
  }
  return comb;
}

}  // namespace demolab
