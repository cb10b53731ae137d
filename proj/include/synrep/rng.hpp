#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace synrep {

/// xoshiro256** (Blackman & Vigna, public domain), state expanded from the
/// 64-bit seed with splitmix64. Only integer arithmetic is used to derive
/// doubles and bounded integers, so a seed yields the same stream on every
/// platform. The standard library distributions are deliberately avoided:
/// their algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() noexcept;
  double uniform(double lo, double hi) noexcept;
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept;

  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n) noexcept;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace synrep
