#pragma once

#include <cstdint>
#include <limits>

namespace indset {

/// SplitMix64 (Steele, Lea, Flood 2014). 64-bit state, one add and a
/// mixing finalizer per draw. The output sequence is fully specified by
/// the seed, so runs reproduce bit-for-bit on every platform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform integer in [0, bound). Lemire's multiply-shift with rejection,
  // so the result is exactly uniform. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // The value the k-th next call will return, without advancing.
  result_type peek(std::uint64_t k) const noexcept {
    return mix(state_ + k * 0x9E3779B97F4A7C15ULL);
  }

  std::uint64_t state() const noexcept { return state_; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Per-run seed for batch experiments: base XOR mix(d, N, run index).
/// Each field is folded through the SplitMix64 finalizer so nearby
/// (d, N, run) triples give unrelated seeds.
inline std::uint64_t run_seed(std::uint64_t base, std::uint64_t degree,
                              std::uint64_t n_vertices,
                              std::uint64_t run_index) noexcept {
  std::uint64_t h = SplitMix64::mix(degree + 0x9E3779B97F4A7C15ULL);
  h = SplitMix64::mix(h ^ n_vertices);
  h = SplitMix64::mix(h ^ run_index);
  return base ^ h;
}

}  // namespace indset
