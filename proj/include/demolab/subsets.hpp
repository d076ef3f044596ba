#pragma once

#include <cstdint>
#include <vector>

namespace demolab {

/// Binomial coefficient C(n, k), saturating at `cap` to avoid overflow.
/// Returns cap whenever the true value is >= cap.
std::uint64_t binomial(int n, int k, std::uint64_t cap = UINT64_C(1) << 62);

/// Advances comb (a sorted k-subset of {0..n-1}) to the next combination in
/// lexicographic order. Returns false when comb was the last one.
bool next_combination(std::vector<int>& comb, int n);

/// Combination of {0..n-1} with the given lexicographic rank.
std::vector<int> combination_at_rank(int n, int k, std::uint64_t rank);

/// Visits all C(n, k) combinations in lexicographic order.
template <class Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  if (k == 0) {
    fn(comb);
    return;
  }
  do {
    fn(comb);
  } while (next_combination(comb, n));
}

}  // namespace demolab
