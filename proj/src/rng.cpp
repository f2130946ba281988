#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace ermat {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t key) : key_(key) {
  // Expand the key into the xoshiro256++ state with a splitmix64 sequence.
  std::uint64_t s = key;
  for (auto& w : state_) {
    s += kGolden;
    w = mix64(s);
  }
  if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) {
    state_[0] = kGolden;
  }
}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream(mix64(key_ ^ mix64(index + 1)));
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_unit_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_gaussian() {
  const double u1 = next_unit_open();
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::next_laplace(double scale) {
  const double v = next_unit_open() - 0.5;  // (-0.5, 0.5)
  const double sign = v < 0.0 ? 1.0 : -1.0;
  return sign * scale * std::log(1.0 - 2.0 * std::fabs(v));
}

}  // namespace ermat
