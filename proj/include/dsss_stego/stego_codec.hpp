#pragma once

// Covert 4-bit symbols carried as keyed weight-5 chip-flip patterns.
//
// Each stego symbol owns one canonical 5-subset of chip positions (the
// codebook). Before transmission the subset is pushed through a per-symbol
// permutation of the 32 chip positions drawn from an LFSR seeded by the
// shared key; the receiver decodes the carrier, takes the positions where the
// received word differs from it, undoes the permutation and looks the result
// up in the codebook.

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "dsss_stego/chipmap.hpp"
#include "dsss_stego/combinatorics.hpp"
#include "dsss_stego/errors.hpp"
#include "dsss_stego/lfsr.hpp"

namespace dsss_stego {

// Chips flipped per embedded symbol: floor((d_min - 1) / 2) for d_min = 12.
inline constexpr unsigned kEmbedWeight = 5;
inline constexpr unsigned kCodebookMinDistance = 6;
inline constexpr std::uint64_t kNumWeight5Patterns = binomial(32, kEmbedWeight);

struct StegoSymbolTag {};
using StegoSymbol = Nibble<StegoSymbolTag>;

using Permutation = std::array<std::uint8_t, kChipsPerSymbol>;

constexpr Permutation identity_permutation() {
  Permutation p{};
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint8_t>(i);
  return p;
}

constexpr Permutation inverse_permutation(const Permutation& p) {
  Permutation inv{};
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<std::uint8_t>(i);
  return inv;
}

// Image of a chip-position mask under a permutation.
constexpr std::uint32_t permute_mask(std::uint32_t mask, const Permutation& p) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < kChipsPerSymbol; ++i)
    if (mask & ChipSequence::position_mask(i)) out |= ChipSequence::position_mask(p[i]);
  return out;
}

// Five distinct chip positions, kept sorted.
class ErrorPattern {
 public:
  constexpr explicit ErrorPattern(const Combination<kEmbedWeight>& positions)
      : positions_(positions) {
    std::sort(positions_.begin(), positions_.end());
    for (std::size_t i = 0; i < kEmbedWeight; ++i) {
      if (positions_[i] >= kChipsPerSymbol)
        throw std::out_of_range("chip position out of range");
      if (i > 0 && positions_[i] == positions_[i - 1])
        throw std::invalid_argument("error pattern positions must be distinct");
    }
  }

  constexpr const Combination<kEmbedWeight>& positions() const { return positions_; }

  constexpr std::uint32_t mask() const {
    std::uint32_t m = 0;
    for (auto p : positions_) m |= ChipSequence::position_mask(p);
    return m;
  }

  constexpr auto operator<=>(const ErrorPattern&) const = default;

 private:
  Combination<kEmbedWeight> positions_;
};

constexpr int symmetric_difference(std::uint32_t a_mask, std::uint32_t b_mask) {
  return std::popcount(a_mask ^ b_mask);
}

constexpr ErrorPattern unrank_subset(std::uint64_t rank) {
  return ErrorPattern(unrank_colex<kEmbedWeight>(rank, kChipsPerSymbol));
}

constexpr std::uint64_t rank_subset(const ErrorPattern& pattern) {
  return rank_colex<kEmbedWeight>(pattern.positions());
}

class StegoCodebook {
 public:
  static constexpr std::size_t kSize = 16;

  // Greedy colex scan: accept a 5-subset when it sits at symmetric distance
  // >= 6 from every pattern accepted so far.
  static StegoCodebook build() {
    std::array<std::uint32_t, kSize> masks{};
    std::size_t count = 0;
    for (std::uint64_t rank = 0; rank < kNumWeight5Patterns && count < kSize; ++rank) {
      const std::uint32_t candidate = unrank_subset(rank).mask();
      const bool far_enough = std::all_of(masks.begin(), masks.begin() + count, [&](auto m) {
        return symmetric_difference(m, candidate) >= static_cast<int>(kCodebookMinDistance);
      });
      if (far_enough) masks[count++] = candidate;
    }
    if (count < kSize)
      throw ConstructionError("only " + std::to_string(count) +
                              " codebook patterns found at distance threshold 6");
    return StegoCodebook(masks);
  }

  ErrorPattern pattern(StegoSymbol e) const {
    Combination<kEmbedWeight> pos{};
    std::size_t k = 0;
    for (std::uint8_t i = 0; i < kChipsPerSymbol; ++i)
      if (masks_[e.value()] & ChipSequence::position_mask(i)) pos[k++] = i;
    return ErrorPattern(pos);
  }
  std::uint32_t mask(StegoSymbol e) const { return masks_[e.value()]; }
  const std::array<std::uint32_t, kSize>& masks() const { return masks_; }

  int min_pairwise_distance() const {
    int best = static_cast<int>(kChipsPerSymbol);
    for (std::size_t i = 0; i < kSize; ++i)
      for (std::size_t j = i + 1; j < kSize; ++j)
        best = std::min(best, symmetric_difference(masks_[i], masks_[j]));
    return best;
  }

  bool operator==(const StegoCodebook&) const = default;

 private:
  explicit StegoCodebook(const std::array<std::uint32_t, kSize>& masks) : masks_(masks) {}
  std::array<std::uint32_t, kSize> masks_;
};

inline StegoCodebook build_codebook() { return StegoCodebook::build(); }

inline const StegoCodebook& default_codebook() {
  static const StegoCodebook codebook = StegoCodebook::build();
  return codebook;
}

class StegoKey {
 public:
  constexpr explicit StegoKey(std::uint16_t seed) : seed_(seed) {
    if (seed == 0) throw std::invalid_argument("stego key must be nonzero");
  }

  // Exactly four hex digits, e.g. "ACE1".
  static StegoKey from_hex(std::string_view text) {
    if (text.size() != 4)
      throw std::invalid_argument("stego key must be 4 hex digits, got '" + std::string(text) + "'");
    std::uint16_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
    if (ec != std::errc{} || end != text.data() + text.size())
      throw std::invalid_argument("stego key must be 4 hex digits, got '" + std::string(text) + "'");
    return StegoKey(value);
  }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string out(4, '0');
    for (int i = 0; i < 4; ++i) out[3 - i] = kDigits[(seed_ >> (4 * i)) & 0xF];
    return out;
  }

  constexpr std::uint16_t seed() const { return seed_; }
  constexpr auto operator<=>(const StegoKey&) const = default;

 private:
  std::uint16_t seed_;
};

// Per-symbol permutations from the keyed scrambler LFSR. The stream for
// symbol i starts kStride clock cycles after that of symbol i-1, so any
// symbol's permutation can be computed directly; the cursor form walks the
// same sequence one symbol at a time.
class KeySchedule {
 public:
  static constexpr std::uint64_t kStride = 256;

  explicit KeySchedule(StegoKey key) : key_(key), lfsr_(key.seed(), taps::kScrambler) {}

  StegoKey key() const { return key_; }
  std::uint16_t lfsr_state() const { return lfsr_.state(); }
  std::uint64_t symbol_counter() const { return counter_; }

  Permutation permutation_at(std::uint64_t symbol_index) const {
    Lfsr16 stream(key_.seed(), taps::kScrambler);
    stream.jump((symbol_index % kLfsrPeriod) * kStride);
    return shuffle(stream);
  }

  // Permutation for the current symbol, then advance the cursor.
  Permutation next() {
    Lfsr16 stream = lfsr_;
    const Permutation p = shuffle(stream);
    skip();
    return p;
  }

  // Advance the cursor without drawing a permutation.
  void skip() {
    for (std::uint64_t i = 0; i < kStride; ++i) lfsr_.next_bit();
    ++counter_;
  }

  void seek(std::uint64_t symbol_index) {
    lfsr_ = Lfsr16(key_.seed(), taps::kScrambler);
    lfsr_.jump((symbol_index % kLfsrPeriod) * kStride);
    counter_ = symbol_index;
  }

 private:
  // Fisher-Yates; each index drawn with just enough bits and rejected when
  // out of range.
  static Permutation shuffle(Lfsr16& stream) {
    Permutation p = identity_permutation();
    for (unsigned i = kChipsPerSymbol - 1; i > 0; --i) {
      const unsigned width = static_cast<unsigned>(std::bit_width(i));
      std::uint32_t j = 0;
      do {
        j = stream.next_bits(width);
      } while (j > i);
      std::swap(p[i], p[j]);
    }
    return p;
  }

  StegoKey key_;
  Lfsr16 lfsr_;
  std::uint64_t counter_ = 0;
};

inline Permutation keystream_permutation(const KeySchedule& schedule, std::uint64_t symbol_index) {
  return schedule.permutation_at(symbol_index);
}

inline ChipSequence embed_with_permutation(ChipSequence carrier, StegoSymbol e,
                                           const Permutation& perm,
                                           const StegoCodebook& codebook = default_codebook(),
                                           const CodeSet& set = standard_code_set()) {
  if (decode_chips(carrier, set).residual_distance != 0)
    throw InvalidCarrier("carrier " + carrier.to_string() + " is not a standard code");
  return carrier.flipped_mask(permute_mask(codebook.mask(e), perm));
}

inline ChipSequence embed(ChipSequence carrier, StegoSymbol e, const KeySchedule& schedule,
                          std::uint64_t symbol_index,
                          const StegoCodebook& codebook = default_codebook(),
                          const CodeSet& set = standard_code_set()) {
  return embed_with_permutation(carrier, e, schedule.permutation_at(symbol_index), codebook, set);
}

struct Extraction {
  StegoSymbol symbol;
  bool exact = false;
  // |D|: chips where the received word differs from its nearest base code.
  int diff_weight = 0;
  DecodedChips carrier;
};

inline Extraction extract_with_permutation(ChipSequence received, const Permutation& perm,
                                           const StegoCodebook& codebook = default_codebook(),
                                           const CodeSet& set = standard_code_set()) {
  const DecodedChips carrier = decode_chips(received, set);
  const std::uint32_t diff = received.packed() ^ map_symbol(carrier.symbol, set).packed();
  const std::uint32_t canonical = permute_mask(diff, inverse_permutation(perm));

  unsigned best = 0;
  int best_distance = symmetric_difference(canonical, codebook.masks()[0]);
  for (unsigned e = 1; e < StegoCodebook::kSize; ++e) {
    const int d = symmetric_difference(canonical, codebook.masks()[e]);
    if (d < best_distance) {
      best = e;
      best_distance = d;
    }
  }
  return Extraction{StegoSymbol(best), best_distance == 0, std::popcount(diff), carrier};
}

inline Extraction extract(ChipSequence received, const KeySchedule& schedule,
                          std::uint64_t symbol_index,
                          const StegoCodebook& codebook = default_codebook(),
                          const CodeSet& set = standard_code_set()) {
  return extract_with_permutation(received, schedule.permutation_at(symbol_index), codebook, set);
}

}  // namespace dsss_stego
