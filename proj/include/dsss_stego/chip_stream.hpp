#pragma once

// Chip-stream file:
//
//   offset  size  field
//   0       4     magic "CHIP"
//   4       1     version (1)
//   5       8     symbol count, little-endian
//   13      4*N   chips, packed MSB first; chip 0 of symbol 0 is bit 7 of
//                 byte 13

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dsss_stego/chipmap.hpp"
#include "dsss_stego/errors.hpp"

namespace dsss_stego {

inline constexpr std::array<std::uint8_t, 4> kChipStreamMagic{'C', 'H', 'I', 'P'};
inline constexpr std::uint8_t kChipStreamVersion = 1;
inline constexpr std::size_t kChipStreamHeaderSize = 13;
inline constexpr std::size_t kBytesPerSymbol = kChipsPerSymbol / 8;

inline std::vector<std::uint8_t> serialize_chip_stream(std::span<const ChipSequence> symbols) {
  std::vector<std::uint8_t> out;
  out.reserve(kChipStreamHeaderSize + kBytesPerSymbol * symbols.size());
  out.insert(out.end(), kChipStreamMagic.begin(), kChipStreamMagic.end());
  out.push_back(kChipStreamVersion);
  const std::uint64_t count = symbols.size();
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(count >> (8 * i)));
  for (const auto& s : symbols)
    for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(s.packed() >> (8 * i)));
  return out;
}

inline std::vector<ChipSequence> parse_chip_stream(std::span<const std::uint8_t> bytes) {
  for (std::size_t i = 0; i < kChipStreamMagic.size(); ++i) {
    if (i >= bytes.size()) throw FormatError("truncated magic", bytes.size());
    if (bytes[i] != kChipStreamMagic[i]) throw FormatError("bad magic, expected \"CHIP\"", i);
  }
  if (bytes.size() <= 4) throw FormatError("missing version byte", bytes.size());
  if (bytes[4] != kChipStreamVersion)
    throw FormatError("unsupported version " + std::to_string(bytes[4]), 4);
  if (bytes.size() < kChipStreamHeaderSize) throw FormatError("truncated symbol count", bytes.size());
  std::uint64_t count = 0;
  for (int i = 7; i >= 0; --i) count = (count << 8) | bytes[5 + static_cast<std::size_t>(i)];

  const std::size_t payload = bytes.size() - kChipStreamHeaderSize;
  if (count > payload / kBytesPerSymbol || payload != count * kBytesPerSymbol) {
    const std::size_t expected_end =
        count > payload / kBytesPerSymbol ? bytes.size()
                                          : kChipStreamHeaderSize + count * kBytesPerSymbol;
    throw FormatError("chip payload of " + std::to_string(payload) + " bytes does not match " +
                          "symbol count " + std::to_string(count),
                      expected_end);
  }
  std::vector<ChipSequence> symbols;
  symbols.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t base = kChipStreamHeaderSize + kBytesPerSymbol * s;
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < kBytesPerSymbol; ++i) bits = (bits << 8) | bytes[base + i];
    symbols.emplace_back(bits);
  }
  return symbols;
}

}  // namespace dsss_stego
