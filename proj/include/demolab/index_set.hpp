#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "demolab/rng.hpp"

namespace demolab {

/// Sorted, duplicate-free set of 1-based indices into {1, ..., universe}.
/// Immutable after construction.
class IndexSet {
 public:
  IndexSet() = default;

  /// Sorts the given indices; throws IndexRangeError on duplicates or on
  /// indices outside [1, universe].
  IndexSet(std::vector<int> indices, int universe);

  static IndexSet full(int universe);

  /// Uniformly random k-subset of {1..universe} via partial Fisher-Yates.
  static IndexSet random(int universe, int k, Rng& rng);

  IndexSet complement() const;

  int universe() const { return universe_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int index) const;

  /// k-th smallest index (0-based position).
  int operator[](std::size_t k) const { return indices_[k]; }

  const std::vector<int>& indices() const { return indices_; }
  std::vector<int>::const_iterator begin() const { return indices_.begin(); }
  std::vector<int>::const_iterator end() const { return indices_.end(); }

  bool operator==(const IndexSet&) const = default;

  std::string to_string() const;

 private:
  std::vector<int> indices_;
  int universe_ = 0;
};

}  // namespace demolab
