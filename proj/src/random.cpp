#include "nstars/random.hpp"

namespace nstars {

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  // Lemire, "Fast Random Integer Generation in an Interval" (2019).
  unsigned __int128 product =
      static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(bound);
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next()) *
                static_cast<unsigned __int128>(bound);
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace nstars
