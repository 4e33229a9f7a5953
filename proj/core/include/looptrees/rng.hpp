#pragma once

#include <cstdint>

namespace looptrees {

// Splittable counter-based generator. Every draw is a pure function of
// (seed, stream, counter), so any sample in any worker is reproducible
// from the master seed and a stream index alone. The output function is
// the SplitMix64 finalizer applied to a Weyl-sequenced counter.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed ^ (mix(stream) + 0x9e3779b97f4a7c15ull))), counter_(0) {}

  // Derive an independent stream; safe to hand to another worker.
  CounterRng split(std::uint64_t stream) const {
    CounterRng r(0, 0);
    r.base_ = mix(base_ + 0x9e3779b97f4a7c15ull * (stream + 1));
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next_u64() {
    return mix(base_ + 0x9e3779b97f4a7c15ull * ++counter_);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next_u64(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t base_;
  std::uint64_t counter_;
};

}  // namespace looptrees
