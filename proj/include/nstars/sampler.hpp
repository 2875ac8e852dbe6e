#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nstars/random.hpp"

namespace nstars {

/// Dynamic weighted sampler over a growable index set.
///
/// A Fenwick (binary indexed) tree holds partial sums; append and increment
/// are O(log K) and sample is one top-down O(log K) descent. Weights never
/// decrease and items are never removed. Individual weights are kept as
/// 32-bit counts; the tree sums are 64-bit.
class WeightedSampler {
 public:
  /// Appends an item and returns its index.
  std::size_t add(std::uint32_t weight);

  void increment(std::size_t index, std::uint32_t delta = 1);

  /// Index i with probability weight(i) / total(). Throws EmptySampler.
  std::size_t sample(Rng& rng) const;

  std::size_t size() const { return weights_.size(); }
  std::uint64_t total() const { return total_; }
  std::uint32_t weight(std::size_t index) const { return weights_[index]; }

  /// Sum of weights [0, count) read from the tree.
  std::uint64_t prefix_sum(std::size_t count) const;

  void reserve(std::size_t n);

 private:
  std::vector<std::uint64_t> tree_{0};  // 1-based; tree_[0] unused
  std::vector<std::uint32_t> weights_;
  std::uint64_t total_ = 0;
};

}  // namespace nstars
