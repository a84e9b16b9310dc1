#pragma once

#include <cmath>
#include <cstdint>

namespace parking {

// Counter-based random stream. Every draw is an avalanche hash of
// (master_seed, replication, round, draw index), so replications and rounds can be
// scheduled in any order (or in parallel) without changing a single output bit.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t replication, std::uint64_t round) {
    std::uint64_t h = mix(master_seed + kGolden);
    h = mix(h ^ (kStream * (replication + 1)));
    base_ = mix(h ^ (kRound * (round + 1)));
  }

  std::uint64_t next_u64() { return mix(base_ + (++counter_) * kGolden); }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential with the given rate; strictly positive.
  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  std::uint64_t draws() const { return counter_; }

 private:
  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kStream = 0xD1B54A32D192ED03ull;
  static constexpr std::uint64_t kRound = 0x8CB92BA72F3D8DD7ull;

  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace parking
