#pragma once

#include <array>
#include <cstdint>

namespace ermat {

// splitmix64 finalizer; used for seeding and for deriving substream keys.
std::uint64_t mix64(std::uint64_t x);

// Deterministic splittable random stream (xoshiro256++ core).
//
// A stream is identified by a 64-bit key. substream(i) derives an
// independent child stream from (key, i) without consuming any state of the
// parent, so trial k of an experiment always sees the same draws no matter
// how trials are scheduled across threads.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t key);

  RandomStream substream(std::uint64_t index) const;
  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64();
  double next_unit();       // uniform on [0, 1)
  double next_unit_open();  // uniform on (0, 1)
  double next_gaussian();   // standard normal, Box-Muller
  double next_laplace(double scale);

private:
  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_;
};

}  // namespace ermat
