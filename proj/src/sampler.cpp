#include "nstars/sampler.hpp"

#include <bit>
#include <limits>

#include "nstars/errors.hpp"

namespace nstars {
namespace {

std::size_t lowbit(std::size_t i) { return i & (~i + 1); }

}  // namespace

std::size_t WeightedSampler::add(std::uint32_t weight) {
  if (weight == 0) throw InvalidParams("sampler weights must be positive");
  const std::size_t i = weights_.size() + 1;
  // Node i covers (i - lowbit(i), i]; gather the already-present part.
  std::uint64_t node = weight;
  const std::size_t stop = i - lowbit(i);
  for (std::size_t j = i - 1; j > stop; j -= lowbit(j)) node += tree_[j];
  tree_.push_back(node);
  weights_.push_back(weight);
  total_ += weight;
  return i - 1;
}

void WeightedSampler::increment(std::size_t index, std::uint32_t delta) {
  if (index >= weights_.size()) {
    throw InvalidParams("sampler index out of range");
  }
  if (weights_[index] > std::numeric_limits<std::uint32_t>::max() - delta) {
    throw InvalidParams("sampler weight overflow");
  }
  weights_[index] += delta;
  total_ += delta;
  for (std::size_t i = index + 1; i < tree_.size(); i += lowbit(i)) {
    tree_[i] += delta;
  }
}

std::size_t WeightedSampler::sample(Rng& rng) const {
  if (total_ == 0) throw EmptySampler("cannot sample from an empty sampler");
  std::uint64_t target = rng.uniform_index(total_);
  const std::size_t n = weights_.size();
  std::size_t pos = 0;
  for (std::size_t step = std::bit_floor(n); step > 0; step >>= 1) {
    const std::size_t next = pos + step;
    if (next <= n && tree_[next] <= target) {
      pos = next;
      target -= tree_[next];
    }
  }
  return pos;
}

std::uint64_t WeightedSampler::prefix_sum(std::size_t count) const {
  std::uint64_t sum = 0;
  for (std::size_t i = count; i > 0; i -= lowbit(i)) sum += tree_[i];
  return sum;
}

void WeightedSampler::reserve(std::size_t n) {
  tree_.reserve(n + 1);
  weights_.reserve(n);
}

}  // namespace nstars
