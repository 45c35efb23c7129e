#pragma once

#include <cstdint>

namespace ssalt {

// splitmix64 step; used to expand seeds into full generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// xoshiro256++ with explicit double conversion. <random> engines and
// distributions are implementation-defined, which would break the
// byte-identical-output contract of the simulation module.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64(sm);
  }

  // Independent stream for (seed, stream, substream); replications key their
  // streams by index so results do not depend on worker scheduling.
  static Rng stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0) {
    std::uint64_t sm = seed;
    std::uint64_t mix = splitmix64(sm);
    mix ^= 0x9e3779b97f4a7c15ull * (stream + 1);
    mix ^= 0xda942042e4dd58b5ull * (substream + 1);
    return Rng(mix);
  }

  std::uint64_t next() {
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

  // Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_open(); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

}  // namespace ssalt
