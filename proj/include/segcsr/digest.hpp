#pragma once

// 64-bit FNV-1a over a canonical little-endian encoding: every value is
// written as 8 bytes (IEEE-754 bits for reals, zero-extended integers).

#include <bit>
#include <concepts>
#include <cstdint>
#include <span>

namespace segcsr {

class Digest {
 public:
  void add_word(std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (word >> (8 * i)) & 0xffu;
      state_ *= kPrime;
    }
  }

  void add(double x) { add_word(std::bit_cast<std::uint64_t>(x)); }

  template <std::unsigned_integral U>
  void add(U x) {
    add_word(static_cast<std::uint64_t>(x));
  }

  template <class T>
  void add(std::span<const T> values) {
    for (const T& x : values) add(x);
  }

  std::uint64_t value() const { return state_; }

 private:
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ull;
  static constexpr std::uint64_t kPrime = 0x100000001b3ull;
  std::uint64_t state_ = kOffset;
};

template <class T>
std::uint64_t digest_of(std::span<const T> values) {
  Digest d;
  d.add(values);
  return d.value();
}

}  // namespace segcsr
