#pragma once

#include <cstdint>
#include <vector>

namespace amoebot {

// All randomness in the simulator flows through this generator so that
// (config, seed) pairs reproduce bit-identically across platforms and
// standard-library versions. SplitMix64 (Steele et al., "Fast splittable
// pseudorandom number generators") doubles as the mixing function for
// deriving independent substreams from structured keys.
class SplitMix64 {
public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) via 128-bit multiply; n must be > 0.
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next() >> 32) * n) >> 32);
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Hash-combines an arbitrary key sequence into a substream seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed) { return seed; }

template <typename... Rest>
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t head,
                                 Rest... rest) {
  SplitMix64 g(seed ^ (head + 0x9E3779B97F4A7C15ULL));
  return mix_seed(g.next(), static_cast<std::uint64_t>(rest)...);
}

// Fisher-Yates with our own generator; std::shuffle is implementation-defined
// and would break cross-platform replay.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = rng.below(static_cast<std::uint32_t>(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace amoebot
