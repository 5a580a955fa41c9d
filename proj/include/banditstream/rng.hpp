#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace banditstream {

using Engine = std::mt19937_64;

/// Purpose tags for deriving independent sub-streams from one master seed.
enum class StreamPurpose : std::uint64_t {
  reward = 1,
  policy = 2,
  instance = 3,
  shuffle = 4,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Folds a master seed and any number of labels into a sub-stream seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t master,
                                           std::initializer_list<std::uint64_t> labels) noexcept {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t label : labels) h = splitmix64(h ^ splitmix64(label + 0x632BE59BD9B4E019ULL));
  return h;
}

inline Engine make_engine(std::uint64_t master, StreamPurpose purpose, std::uint64_t index = 0) {
  return Engine(derive_seed(master, {static_cast<std::uint64_t>(purpose), index}));
}

}  // namespace banditstream
