#pragma once

#include <array>
#include <cstdint>

namespace ustat {

// Counter-based block cipher core (4x32 state, 10 rounds, 2x32 key). Pure
// function of (counter, key): draw i of any logical stream is addressable
// directly, which is what makes worker layout irrelevant to the results.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::uint64_t key);

// Indexed random stream: (seed, stream) pick the key and the high counter
// words, the draw index picks the rest. Stateless; safe to share.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t raw64(std::uint64_t i) const;
  double uniform01(std::uint64_t i) const;    // [0, 1), 53-bit resolution
  double exponential(std::uint64_t i) const;  // rate 1, via inverse CDF

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace ustat
