#pragma once

// 2450 MHz DSSS symbol-to-chip table, chip words and minimum-distance decoding.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dsss_stego/errors.hpp"

namespace dsss_stego {

inline constexpr std::size_t kChipsPerSymbol = 32;
inline constexpr std::size_t kNumCodes = 16;

// A 32-chip word. Chip 0 is transmitted first; it lives in the most
// significant bit of the packed value and is the leftmost character of the
// textual form.
class ChipSequence {
 public:
  constexpr ChipSequence() = default;
  constexpr explicit ChipSequence(std::uint32_t packed) : bits_(packed) {}

  static ChipSequence from_string(std::string_view text) {
    if (text.size() != kChipsPerSymbol)
      throw std::invalid_argument("chip string must have exactly 32 characters, got " +
                                  std::to_string(text.size()));
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < kChipsPerSymbol; ++i) {
      const char c = text[i];
      if (c != '0' && c != '1')
        throw std::invalid_argument("chip string contains non-binary character at index " +
                                    std::to_string(i));
      bits = (bits << 1) | static_cast<std::uint32_t>(c == '1');
    }
    return ChipSequence(bits);
  }

  std::string to_string() const {
    std::string out(kChipsPerSymbol, '0');
    for (std::size_t i = 0; i < kChipsPerSymbol; ++i)
      if (chip(i)) out[i] = '1';
    return out;
  }

  static constexpr std::uint32_t position_mask(std::size_t chip_index) {
    return std::uint32_t{1} << (kChipsPerSymbol - 1 - chip_index);
  }

  constexpr bool chip(std::size_t i) const { return (bits_ & position_mask(i)) != 0; }
  constexpr std::uint32_t packed() const { return bits_; }

  constexpr ChipSequence flipped(std::size_t i) const {
    return ChipSequence(bits_ ^ position_mask(i));
  }
  constexpr ChipSequence flipped_mask(std::uint32_t mask) const {
    return ChipSequence(bits_ ^ mask);
  }
  constexpr ChipSequence complement() const { return ChipSequence(~bits_); }

  constexpr auto operator<=>(const ChipSequence&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

// 4-bit symbol value with a tag distinguishing carrier data from covert data.
template <class Tag>
class Nibble {
 public:
  constexpr Nibble() = default;
  constexpr explicit Nibble(unsigned value) : value_(static_cast<std::uint8_t>(value)) {
    if (value > 15) throw std::out_of_range("symbol value must be in [0, 15]");
  }
  constexpr unsigned value() const { return value_; }
  constexpr auto operator<=>(const Nibble&) const = default;

 private:
  std::uint8_t value_ = 0;
};

struct DataSymbolTag {};
using DataSymbol = Nibble<DataSymbolTag>;

struct CodeSet {
  std::array<ChipSequence, kNumCodes> codes{};

  constexpr const ChipSequence& operator[](std::size_t i) const { return codes[i]; }
};

struct CodeSetStats {
  int d_min = 0;
  double d_mean = 0.0;
  int d_max = 0;
};

constexpr int hamming(ChipSequence a, ChipSequence b) {
  return std::popcount(a.packed() ^ b.packed());
}

// IEEE 802.15.4 O-QPSK PHY (2450 MHz) symbol-to-chip mapping, c0 leftmost.
inline constexpr CodeSet standard_code_set() {
  return CodeSet{{
      ChipSequence(0b11011001110000110101001000101110u),
      ChipSequence(0b11101101100111000011010100100010u),
      ChipSequence(0b00101110110110011100001101010010u),
      ChipSequence(0b00100010111011011001110000110101u),
      ChipSequence(0b01010010001011101101100111000011u),
      ChipSequence(0b00110101001000101110110110011100u),
      ChipSequence(0b11000011010100100010111011011001u),
      ChipSequence(0b10011100001101010010001011101101u),
      ChipSequence(0b10001100100101100000011101111011u),
      ChipSequence(0b10111000110010010110000001110111u),
      ChipSequence(0b01111011100011001001011000000111u),
      ChipSequence(0b01110111101110001100100101100000u),
      ChipSequence(0b00000111011110111000110010010110u),
      ChipSequence(0b01100000011101111011100011001001u),
      ChipSequence(0b10010110000001110111101110001100u),
      ChipSequence(0b11001001011000000111011110111000u),
  }};
}

inline CodeSetStats code_set_stats(const CodeSet& set) {
  CodeSetStats stats{static_cast<int>(kChipsPerSymbol) + 1, 0.0, -1};
  long total = 0;
  int pairs = 0;
  for (std::size_t i = 0; i < kNumCodes; ++i) {
    for (std::size_t j = i + 1; j < kNumCodes; ++j) {
      const int d = hamming(set[i], set[j]);
      if (d == 0)
        throw InvalidCodeSet("codes " + std::to_string(i) + " and " + std::to_string(j) +
                             " are identical");
      stats.d_min = std::min(stats.d_min, d);
      stats.d_max = std::max(stats.d_max, d);
      total += d;
      ++pairs;
    }
  }
  stats.d_mean = static_cast<double>(total) / pairs;
  return stats;
}

constexpr ChipSequence map_symbol(DataSymbol sym, const CodeSet& set = standard_code_set()) {
  return set[sym.value()];
}

struct DecodedChips {
  DataSymbol symbol;
  int residual_distance = 0;
};

// Nearest code by Hamming distance; the lowest symbol value wins ties.
constexpr DecodedChips decode_chips(ChipSequence received,
                                    const CodeSet& set = standard_code_set()) {
  unsigned best = 0;
  int best_distance = hamming(received, set[0]);
  for (unsigned s = 1; s < kNumCodes; ++s) {
    const int d = hamming(received, set[s]);
    if (d < best_distance) {
      best = s;
      best_distance = d;
    }
  }
  return DecodedChips{DataSymbol(best), best_distance};
}

}  // namespace dsss_stego
