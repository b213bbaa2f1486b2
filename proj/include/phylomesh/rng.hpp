#pragma once

#include <cmath>
#include <cstdint>

namespace phylomesh {

// xoshiro256** with splitmix64 seeding. Self-contained so that identical
// seeds give identical draw sequences on any platform, independent of
// standard-library distribution internals. Every simulation entity owns its
// own stream; there is no global generator.
class RngStream {
 public:
  RngStream() { reseed(0); }
  explicit RngStream(uint64_t seed) { reseed(seed); }

  // Derives an independent stream from a global seed plus up to three
  // domain-separation words (stream tag, coordinates, ...).
  static RngStream for_stream(uint64_t global_seed, uint64_t a, uint64_t b = 0,
                              uint64_t c = 0) {
    uint64_t h = mix(global_seed ^ 0x243f6a8885a308d3ull);
    h = mix(h ^ (a * 0x9e3779b97f4a7c15ull));
    h = mix(h ^ (b * 0xbf58476d1ce4e5b9ull));
    h = mix(h ^ (c * 0x94d049bb133111ebull));
    return RngStream(h);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound). Lemire's multiply-with-rejection.
  uint64_t uniform_below(uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<uint64_t>(m);
    if (lo < bound) {
      const uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Uniform value of `width` random bits, 1 <= width <= 64.
  uint64_t bits(unsigned width) { return next_u64() >> (64u - width); }

  // Zero-mean Gaussian deviate, Box-Muller. Consumes exactly two draws.
  double normal(double sigma) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return sigma * r * std::cos(6.28318530717958647692 * u2);
  }

  bool operator==(const RngStream&) const = default;

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  // splitmix64 finalizer
  static constexpr uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  void reseed(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) {
      sm += 0x9e3779b97f4a7c15ull;
      word = mix(sm);
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // forbidden state
  }

  uint64_t s_[4];
};

// Stream tags used for domain separation across the simulator.
inline constexpr uint64_t kStreamPe = 1;         // per-PE evolution + migration
inline constexpr uint64_t kStreamGate = 2;       // per-PE step gating
inline constexpr uint64_t kStreamScheduler = 3;  // visit permutation only
inline constexpr uint64_t kStreamSample = 4;     // end-state genome sampling
inline constexpr uint64_t kStreamSubsample = 5;  // reconstruction subsampling

}  // namespace phylomesh
