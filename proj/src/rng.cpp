#include "ustat/rng.hpp"

#include <cmath>

namespace ustat {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c, std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0, static_cast<std::uint32_t>(p1),
       static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1, static_cast<std::uint32_t>(p0)};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::uint64_t key) {
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int r = 0; r < 10; ++r) {
    round_once(counter, k0, k1);
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return counter;
}

std::uint64_t PhiloxStream::raw64(std::uint64_t i) const {
  const std::uint64_t block = i >> 1;
  const std::array<std::uint32_t, 4> out = philox4x32_10(
      {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
       static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
      seed_);
  if (i & 1) return (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

double PhiloxStream::uniform01(std::uint64_t i) const {
  return static_cast<double>(raw64(i) >> 11) * 0x1.0p-53;
}

double PhiloxStream::exponential(std::uint64_t i) const {
  return -std::log1p(-uniform01(i));
}

}  // namespace ustat
