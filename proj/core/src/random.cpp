#include "srk/random.hpp"

namespace srk {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

PathStream::PathStream(std::uint64_t seed, std::uint64_t path_index, std::uint32_t lane)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      counter_{0u, lane, static_cast<std::uint32_t>(path_index),
               static_cast<std::uint32_t>(path_index >> 32)} {}

void PathStream::refill() {
  block_ = Philox4x32::generate(counter_, key_);
  ++counter_[0];
}

double PathStream::uniform() {
  const unsigned slot = static_cast<unsigned>(drawn_ & 1u);
  if (slot == 0) refill();
  ++drawn_;
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(block_[2 * slot]) << 32 | block_[2 * slot + 1]) >> 11;
  // (k + 1/2) / 2^53 keeps both endpoints out of the range.
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace srk
