#include "nstars/star_registry.hpp"

#include <algorithm>
#include <limits>

#include "nstars/errors.hpp"

namespace nstars {
namespace {

constexpr std::size_t kInitialSlots = 1024;

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

StarRegistry::StarRegistry(std::size_t key_length)
    : key_length_(key_length), slots_(kInitialSlots, 0), mask_(kInitialSlots - 1) {
  if (key_length < 2) throw InvalidParams("a star needs at least two vertices");
}

std::uint64_t StarRegistry::hash(std::span<const VertexId> key) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (VertexId v : key) h = mix(h ^ v) + 0x9e3779b97f4a7c15ULL;
  return h;
}

bool StarRegistry::key_equals(std::size_t index,
                              std::span<const VertexId> key) const {
  const auto stored = this->key(index);
  return std::equal(stored.begin(), stored.end(), key.begin());
}

std::ptrdiff_t StarRegistry::find(std::span<const VertexId> key) const {
  for (std::size_t slot = hash(key) & mask_;; slot = (slot + 1) & mask_) {
    const std::uint32_t entry = slots_[slot];
    if (entry == 0) return -1;
    if (key_equals(entry - 1, key)) return static_cast<std::ptrdiff_t>(entry - 1);
  }
}

std::size_t StarRegistry::activate(std::span<const VertexId> key) {
  std::size_t slot = hash(key) & mask_;
  for (;; slot = (slot + 1) & mask_) {
    const std::uint32_t entry = slots_[slot];
    if (entry == 0) break;
    if (key_equals(entry - 1, key)) {
      sampler_.increment(entry - 1);
      return entry - 1;
    }
  }
  if (size() >= std::numeric_limits<std::uint32_t>::max() - 1) {
    throw InvalidParams("star registry is full");
  }
  pool_.insert(pool_.end(), key.begin(), key.end());
  const std::size_t index = sampler_.add(1);
  slots_[slot] = static_cast<std::uint32_t>(index + 1);
  // Keep the load factor at or below 1/2.
  if (2 * size() > slots_.size()) grow();
  return index;
}

void StarRegistry::grow() {
  std::vector<std::uint32_t> next(slots_.size() * 2, 0);
  const std::size_t next_mask = next.size() - 1;
  for (std::size_t index = 0; index < size(); ++index) {
    std::size_t slot = hash(key(index)) & next_mask;
    while (next[slot] != 0) slot = (slot + 1) & next_mask;
    next[slot] = static_cast<std::uint32_t>(index + 1);
  }
  slots_ = std::move(next);
  mask_ = next_mask;
}

void StarRegistry::reserve(std::size_t stars) {
  pool_.reserve(stars * key_length_);
  sampler_.reserve(stars);
  while (slots_.size() < 2 * stars) grow();
}

StarKey StarRegistry::star_key(std::size_t index) const {
  const auto k = key(index);
  return {k.front(), std::vector<VertexId>(k.begin() + 1, k.end())};
}

}  // namespace nstars
