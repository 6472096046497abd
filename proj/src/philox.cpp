#include "rankone/philox.hpp"

#include "rankone/errors.hpp"

namespace rankone {

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

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

std::uint64_t CounterStream::next_u64() noexcept {
  if (available_ == 0) {
    Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_index_),
                            static_cast<std::uint32_t>(block_index_ >> 32),
                            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = Philox4x32::block(ctr, key_);
    ++block_index_;
    available_ = 2;
  }
  const int word = 2 - available_;
  --available_;
  return (static_cast<std::uint64_t>(buffer_[2 * word + 1]) << 32) | buffer_[2 * word];
}

std::uint64_t CounterStream::uniform_below(std::uint64_t bound) noexcept {
  // Rejection on the largest multiple of bound below 2^64.
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= limit) return x % bound;
  }
}

BigInt CounterStream::uniform_below(const BigInt& bound) {
  if (bound <= 0) throw Error(ErrorKind::InvalidArgument, "uniform_below needs a positive bound");
  if (bound <= BigInt(UINT64_MAX)) return BigInt(uniform_below(bound.convert_to<std::uint64_t>()));
  const unsigned bits = static_cast<unsigned>(msb(bound)) + 1;
  const unsigned words = (bits + 63) / 64;
  const unsigned excess = words * 64 - bits;
  for (;;) {
    BigInt x = 0;
    for (unsigned w = 0; w < words; ++w) {
      x <<= 64;
      std::uint64_t draw = next_u64();
      if (w == 0 && excess > 0) draw >>= excess;
      x += draw;
    }
    if (x < bound) return x;
  }
}

}  // namespace rankone
