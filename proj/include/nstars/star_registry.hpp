#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nstars/random.hpp"
#include "nstars/sampler.hpp"

namespace nstars {

using VertexId = std::uint32_t;

/// Identity of a star: center followed by its strictly increasing peripherals.
struct StarKey {
  VertexId center = 0;
  std::vector<VertexId> peripherals;

  friend bool operator==(const StarKey&, const StarKey&) = default;
};

/// Registry of stars with a fixed number of vertices, their activation
/// weights and a sampler proportional to those weights.
///
/// Keys live in one flat pool (`key_length` ids per star: center first, then
/// sorted peripherals) indexed by an open-addressing hash table, which keeps
/// the per-star overhead to a few words at tens of millions of stars.
class StarRegistry {
 public:
  explicit StarRegistry(std::size_t key_length);

  /// Adds one activation to the star, creating it with weight 1 if absent.
  /// `key` is center followed by sorted peripherals. Returns the star index.
  std::size_t activate(std::span<const VertexId> key);

  /// Index of the star or -1 if absent.
  std::ptrdiff_t find(std::span<const VertexId> key) const;

  std::span<const VertexId> key(std::size_t index) const {
    return {pool_.data() + index * key_length_, key_length_};
  }
  StarKey star_key(std::size_t index) const;

  std::size_t sample(Rng& rng) const { return sampler_.sample(rng); }

  std::size_t size() const { return sampler_.size(); }
  std::size_t key_length() const { return key_length_; }
  std::uint64_t total_weight() const { return sampler_.total(); }
  std::uint32_t weight(std::size_t index) const { return sampler_.weight(index); }
  const WeightedSampler& sampler() const { return sampler_; }

  /// Pre-sizes storage for `stars` entries.
  void reserve(std::size_t stars);

 private:
  std::uint64_t hash(std::span<const VertexId> key) const;
  bool key_equals(std::size_t index, std::span<const VertexId> key) const;
  void grow();

  std::size_t key_length_;
  std::vector<VertexId> pool_;
  std::vector<std::uint32_t> slots_;  // star index + 1; 0 marks empty
  std::size_t mask_ = 0;
  WeightedSampler sampler_;
};

}  // namespace nstars
