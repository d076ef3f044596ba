#include "demolab/index_set.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "demolab/errors.hpp"

namespace demolab {

IndexSet::IndexSet(std::vector<int> indices, int universe)
    : indices_(std::move(indices)), universe_(universe) {
  if (universe_ < 0) throw IndexRangeError("IndexSet: negative universe");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1 || indices_[i] > universe_) {
      throw IndexRangeError("IndexSet: index " + std::to_string(indices_[i]) +
                            " outside [1, " + std::to_string(universe_) + "]");
    }
    if (i > 0 && indices_[i] == indices_[i - 1]) {
      throw IndexRangeError("IndexSet: duplicate index " + std::to_string(indices_[i]));
    }
  }
}

IndexSet IndexSet::full(int universe) {
  std::vector<int> all(static_cast<std::size_t>(universe));
  std::iota(all.begin(), all.end(), 1);
  return IndexSet(std::move(all), universe);
}

IndexSet IndexSet::random(int universe, int k, Rng& rng) {
  if (k < 0 || k > universe) {
    throw IndexRangeError("IndexSet::random: k=" + std::to_string(k) +
                          " outside [0, " + std::to_string(universe) + "]");
  }
  std::vector<int> pool(static_cast<std::size_t>(universe));
  std::iota(pool.begin(), pool.end(), 1);
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(universe - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return IndexSet(std::move(pool), universe);
}

IndexSet IndexSet::complement() const {
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(universe_ - size()));
  std::size_t pos = 0;
  for (int i = 1; i <= universe_; ++i) {
    if (pos < indices_.size() && indices_[pos] == i) {
      ++pos;
    } else {
      rest.push_back(i);
    }
  }
  return IndexSet(std::move(rest), universe_);
}

bool IndexSet::contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) os << ',';
    os << indices_[i];
  }
  os << '}';
  return os.str();
}

}  // namespace demolab
