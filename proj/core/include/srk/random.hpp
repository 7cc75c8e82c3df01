#pragma once

#include <array>
#include <cstdint>

namespace srk {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// A pure function of (counter, key): no state, so any position in any stream
/// can be addressed directly.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key);
};

/// Uniform stream owned by one simulated path.
///
/// Substream construction: the 64-bit master seed is the Philox key; the
/// counter is (block index, lane, path index low word, path index high word).
/// Each block yields four 32-bit words, consumed as two 53-bit uniforms in
/// the open interval (0, 1). Paths, and lanes within a path, never share
/// counter values, so their streams are independent and reproducible
/// regardless of how paths are scheduled over threads.
class PathStream {
 public:
  PathStream(std::uint64_t seed, std::uint64_t path_index, std::uint32_t lane = 0);

  /// Next uniform variate in (0, 1).
  double uniform();

  /// Number of uniforms consumed so far.
  std::uint64_t position() const { return drawn_; }

 private:
  void refill();

  Philox4x32::Key key_;
  Philox4x32::Counter counter_;
  Philox4x32::Counter block_{};
  std::uint64_t drawn_ = 0;
};

}  // namespace srk
