#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace fusionlab {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each
/// (key, counter) pair maps to four independent 32-bit words, so every
/// (seed, stream) gets its own reproducible sequence regardless of thread
/// scheduling.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr const char* kName = "philox4x32-10";

  static Block block(Block ctr, Key key);

  /// Stream `stream` of generator `seed`.
  Philox4x32(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

 private:
  Key key_;
  Block counter_{};
  Block buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0;
};

}  // namespace fusionlab
