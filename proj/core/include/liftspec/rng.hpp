#pragma once

#include <cstdint>

#include "liftspec/errors.hpp"

namespace liftspec {

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

// 64-bit finalizer with full avalanche (the SplitMix64 output function).
// Bijective on uint64, so distinct inputs never collide.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Key for a labelled substream. The seed is finalized before the word is
// folded in: for a fixed seed distinct words never collide (both steps are
// bijective), and because the seed enters only through mix64, pairs like
// (seed, word) and (seed + 1, word - 1) key unrelated streams rather than
// aliasing through their sum. Chaining calls extends the label:
// substream(substream(s, a), b) keys the pair (a, b), and the order of
// words matters, so (a, b) and (b, a) are different streams.
constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t word) noexcept {
  return mix64(mix64(seed + kGolden64) + word);
}

constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t w0,
                                  std::uint64_t w1) noexcept {
  return substream(substream(seed, w0), w1);
}

// Counter-based pseudorandom generator: output i is mix64(seed + (i+1)*g)
// for the 64-bit golden-ratio constant g. State is a single word, every
// seed gives a full-period sequence, and results are bit-identical across
// platforms. The test suite pins the reference output sequence.
class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGolden64;
    return mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  constexpr double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) without modulo bias: rejects the
  // 2^64 mod bound lowest raw values so every residue is equally likely.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw InvalidParams("next_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace liftspec
