#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace codiv {

/// Philox4x32-10 counter-based generator.
///
/// The stream is fully determined by (seed, stream_id): every sample index
/// gets its own stream, so results do not depend on how samples are split
/// across threads. Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform integer in [lo, hi] (unbiased).
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept;
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;
  /// Uniform double in (0, 1].
  double uniform_open0() noexcept;

  /// Raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4>
  philox(std::array<std::uint32_t, 4> counter,
         std::array<std::uint32_t, 2> key) noexcept;

private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned used_ = 4; // 64-bit halves consumed: 0, 2 or 4 words
};

} // namespace codiv
