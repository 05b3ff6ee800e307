#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace dsss_stego {

// Feedback taps as shift amounts from the output end of a right-shifting
// register: tap position p (of 16) contributes bit (16 - p).
namespace taps {
// x^16 + x^15 + x^13 + x^4 + 1
inline constexpr std::uint16_t kScrambler = (1u << 0) | (1u << 1) | (1u << 3) | (1u << 12);
// x^16 + x^14 + x^13 + x^11 + 1
inline constexpr std::uint16_t kSchedule = (1u << 0) | (1u << 2) | (1u << 3) | (1u << 5);
}  // namespace taps

inline constexpr std::uint32_t kLfsrPeriod = 65535;

// 16x16 matrix over GF(2), stored by columns: column j is the image of e_j.
class Gf2Matrix16 {
 public:
  static constexpr Gf2Matrix16 identity() {
    Gf2Matrix16 m;
    for (int j = 0; j < 16; ++j) m.cols_[j] = static_cast<std::uint16_t>(1u << j);
    return m;
  }

  // One step of the Fibonacci register with the given feedback mask.
  static constexpr Gf2Matrix16 step(std::uint16_t tap_mask) {
    Gf2Matrix16 m;
    for (int j = 0; j < 16; ++j) {
      const std::uint16_t e = static_cast<std::uint16_t>(1u << j);
      const unsigned fb = std::popcount(static_cast<unsigned>(e & tap_mask)) & 1u;
      m.cols_[j] = static_cast<std::uint16_t>((e >> 1) | (fb << 15));
    }
    return m;
  }

  constexpr std::uint16_t apply(std::uint16_t v) const {
    std::uint16_t out = 0;
    for (int j = 0; j < 16; ++j)
      if (v & (1u << j)) out ^= cols_[j];
    return out;
  }

  // (*this) * rhs, i.e. apply rhs first.
  constexpr Gf2Matrix16 operator*(const Gf2Matrix16& rhs) const {
    Gf2Matrix16 m;
    for (int j = 0; j < 16; ++j) m.cols_[j] = apply(rhs.cols_[j]);
    return m;
  }

 private:
  std::array<std::uint16_t, 16> cols_{};
};

// 16-bit Fibonacci LFSR. Output is the low bit; feedback enters at bit 15.
class Lfsr16 {
 public:
  constexpr Lfsr16(std::uint16_t seed, std::uint16_t tap_mask = taps::kScrambler)
      : state_(seed), taps_(tap_mask) {
    if (seed == 0) throw std::invalid_argument("LFSR seed must be nonzero");
  }

  constexpr unsigned next_bit() {
    const unsigned out = state_ & 1u;
    const unsigned fb = std::popcount(static_cast<unsigned>(state_ & taps_)) & 1u;
    state_ = static_cast<std::uint16_t>((state_ >> 1) | (fb << 15));
    return out;
  }

  // count <= 32 bits, first drawn bit most significant.
  constexpr std::uint32_t next_bits(unsigned count) {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < count; ++i) v = (v << 1) | next_bit();
    return v;
  }

  // Advance by `steps` clock cycles in O(log steps) matrix products.
  constexpr void jump(std::uint64_t steps) {
    steps %= kLfsrPeriod;
    Gf2Matrix16 power = Gf2Matrix16::step(taps_);
    while (steps != 0) {
      if (steps & 1u) state_ = power.apply(state_);
      power = power * power;
      steps >>= 1;
    }
  }

  constexpr std::uint16_t state() const { return state_; }
  constexpr std::uint16_t tap_mask() const { return taps_; }

 private:
  std::uint16_t state_;
  std::uint16_t taps_;
};

}  // namespace dsss_stego
