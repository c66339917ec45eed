#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fieldmap {

using Rng = std::mt19937_64;

/// Named random substreams derived from one master seed, so that each
/// concern draws from its own generator.
enum class Stream : std::uint64_t { noise = 1, exploration = 2, field = 3, test = 4 };

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng make_stream(std::uint64_t master_seed, std::uint64_t run, Stream stream) {
  const std::uint64_t a = splitmix64(master_seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(run + 0x632be59bd9b4e019ULL));
  const std::uint64_t c = splitmix64(b ^ static_cast<std::uint64_t>(stream));
  std::seed_seq seq{static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return Rng(seq);
}

}  // namespace fieldmap
