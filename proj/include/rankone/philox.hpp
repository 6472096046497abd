#ifndef RANKONE_PHILOX_HPP
#define RANKONE_PHILOX_HPP

#include "rankone/numeric.hpp"

#include <array>
#include <cstdint>

namespace rankone {

/// Philox4x32-10 block function (Salmon et al., Random123).
/// Counter-based: the output is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) noexcept;
};

/// A reproducible stream of 64-bit draws identified by (seed, stream index).
///
/// Draw n of stream s under seed k is Philox4x32-10 at counter (n, s) with key k,
/// so any sample can be regenerated independently of how work is scheduled.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;
  /// Uniform on [0, bound) for arbitrary-precision bounds.
  BigInt uniform_below(const BigInt& bound);

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  Philox4x32::Counter buffer_{};
  int available_ = 0;  // 64-bit words left in buffer_
};

}  // namespace rankone

#endif
