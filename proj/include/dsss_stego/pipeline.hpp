#pragma once

// Bit streams -> symbols -> (optional covert embedding) -> chips -> channel
// -> carrier and covert decoding, plus the Monte Carlo driver that tallies
// chip, symbol and bit error statistics.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dsss_stego/channel.hpp"
#include "dsss_stego/chipmap.hpp"
#include "dsss_stego/errors.hpp"
#include "dsss_stego/lfsr.hpp"
#include "dsss_stego/stego_codec.hpp"

namespace dsss_stego {

// One bit per element, values 0 or 1.
using BitVector = std::vector<std::uint8_t>;

// MSB of each byte first.
inline BitVector bytes_to_bits(std::span<const std::uint8_t> bytes) {
  BitVector bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes)
    for (int i = 7; i >= 0; --i) bits.push_back(static_cast<std::uint8_t>((b >> i) & 1u));
  return bits;
}

// Trailing bits that do not fill a byte are dropped.
inline std::vector<std::uint8_t> bits_to_bytes(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> bytes(bits.size() / 8);
  for (std::size_t i = 0; i < bytes.size() * 8; ++i)
    bytes[i / 8] = static_cast<std::uint8_t>(bytes[i / 8] | ((bits[i] & 1u) << (7 - i % 8)));
  return bytes;
}

// First bit of the group is the most significant bit of the nibble.
inline unsigned nibble_at(std::span<const std::uint8_t> bits, std::size_t group) {
  unsigned v = 0;
  for (std::size_t k = 0; k < 4; ++k) v = (v << 1) | (bits[4 * group + k] & 1u);
  return v;
}

inline void append_nibble(BitVector& bits, unsigned v) {
  for (int k = 3; k >= 0; --k) bits.push_back(static_cast<std::uint8_t>((v >> k) & 1u));
}

// Keyed per-symbol embed/skip decisions. Symbol i draws a 24-bit uniform
// from its own 32-cycle window of the schedule LFSR and is embedded when the
// uniform falls below the rate.
class EmbeddingScheduler {
 public:
  static constexpr unsigned kWindow = 32;
  static constexpr unsigned kUniformBits = 24;

  EmbeddingScheduler(StegoKey key, double embed_rate)
      : lfsr_(key.seed(), taps::kSchedule), rate_(embed_rate) {
    if (!(embed_rate >= 0.0 && embed_rate <= 1.0))
      throw ParameterError("embed_rate must be in [0, 1], got " + std::to_string(embed_rate));
  }

  bool next() {
    const double u = static_cast<double>(lfsr_.next_bits(kUniformBits)) / (1u << kUniformBits);
    lfsr_.next_bits(kWindow - kUniformBits);
    return u < rate_;
  }

 private:
  Lfsr16 lfsr_;
  double rate_;
};

struct EmbeddingSchedule {
  std::vector<bool> embedded;

  std::size_t size() const { return embedded.size(); }
  std::size_t slot_count() const {
    std::size_t n = 0;
    for (bool b : embedded) n += b;
    return n;
  }
  bool operator==(const EmbeddingSchedule&) const = default;
};

inline EmbeddingSchedule embedding_schedule(StegoKey key, double embed_rate,
                                            std::size_t num_symbols) {
  EmbeddingScheduler scheduler(key, embed_rate);
  EmbeddingSchedule schedule;
  schedule.embedded.reserve(num_symbols);
  for (std::size_t i = 0; i < num_symbols; ++i) schedule.embedded.push_back(scheduler.next());
  return schedule;
}

struct EncodedStream {
  std::vector<ChipSequence> symbols;
  std::size_t stego_slots_scheduled = 0;
  std::size_t stego_slots_used = 0;
};

// Scheduled slots past the end of the covert payload are sent unmodified.
inline EncodedStream encode_stream(std::span<const std::uint8_t> data_bits,
                                   std::span<const std::uint8_t> stego_bits, StegoKey key,
                                   double embed_rate) {
  if (data_bits.size() % 4 != 0)
    throw std::invalid_argument("data bit count " + std::to_string(data_bits.size()) +
                                " is not a multiple of 4");
  if (stego_bits.size() % 4 != 0)
    throw std::invalid_argument("stego bit count " + std::to_string(stego_bits.size()) +
                                " is not a multiple of 4");
  const std::size_t num_symbols = data_bits.size() / 4;
  const EmbeddingSchedule schedule = embedding_schedule(key, embed_rate, num_symbols);
  const std::size_t capacity_bits = 4 * schedule.slot_count();
  if (stego_bits.size() > capacity_bits) throw CapacityError(stego_bits.size(), capacity_bits);

  EncodedStream out;
  out.symbols.reserve(num_symbols);
  out.stego_slots_scheduled = schedule.slot_count();
  const KeySchedule keys(key);
  const std::size_t stego_symbols = stego_bits.size() / 4;
  for (std::size_t i = 0; i < num_symbols; ++i) {
    ChipSequence chips = map_symbol(DataSymbol(nibble_at(data_bits, i)));
    if (schedule.embedded[i] && out.stego_slots_used < stego_symbols) {
      const StegoSymbol e(nibble_at(stego_bits, out.stego_slots_used++));
      chips = embed(chips, e, keys, i);
    }
    out.symbols.push_back(chips);
  }
  return out;
}

struct SlotDiagnostic {
  std::uint64_t symbol_index = 0;
  DataSymbol carrier;
  int residual_distance = 0;
  bool scheduled = false;
  // Meaningful only for scheduled slots.
  StegoSymbol stego;
  bool exact = false;
  int diff_weight = 0;
};

struct DecodedStream {
  BitVector data_bits;
  BitVector stego_bits;  // 4 bits per scheduled slot, stream order
  std::vector<SlotDiagnostic> diagnostics;
};

inline DecodedStream decode_stream(std::span<const ChipSequence> symbols, StegoKey key,
                                   double embed_rate) {
  const EmbeddingSchedule schedule = embedding_schedule(key, embed_rate, symbols.size());
  const KeySchedule keys(key);
  DecodedStream out;
  out.data_bits.reserve(4 * symbols.size());
  out.diagnostics.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    SlotDiagnostic diag;
    diag.symbol_index = i;
    diag.scheduled = schedule.embedded[i];
    if (diag.scheduled) {
      const Extraction x = extract(symbols[i], keys, i);
      diag.carrier = x.carrier.symbol;
      diag.residual_distance = x.carrier.residual_distance;
      diag.stego = x.symbol;
      diag.exact = x.exact;
      diag.diff_weight = x.diff_weight;
      append_nibble(out.stego_bits, x.symbol.value());
    } else {
      const DecodedChips c = decode_chips(symbols[i]);
      diag.carrier = c.symbol;
      diag.residual_distance = c.residual_distance;
    }
    append_nibble(out.data_bits, diag.carrier.value());
    out.diagnostics.push_back(diag);
  }
  return out;
}

// Flat chip list (one chip per element) -> 32-chip words.
inline std::vector<ChipSequence> frame_chips(std::span<const std::uint8_t> chips) {
  if (chips.size() % kChipsPerSymbol != 0)
    throw FramingError("chip count " + std::to_string(chips.size()) +
                       " is not a multiple of 32");
  std::vector<ChipSequence> symbols;
  symbols.reserve(chips.size() / kChipsPerSymbol);
  for (std::size_t s = 0; s < chips.size(); s += kChipsPerSymbol) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < kChipsPerSymbol; ++i) bits = (bits << 1) | (chips[s + i] & 1u);
    symbols.emplace_back(bits);
  }
  return symbols;
}

inline std::vector<std::uint8_t> flatten_chips(std::span<const ChipSequence> symbols) {
  std::vector<std::uint8_t> chips;
  chips.reserve(symbols.size() * kChipsPerSymbol);
  for (const auto& s : symbols)
    for (std::size_t i = 0; i < kChipsPerSymbol; ++i) chips.push_back(s.chip(i));
  return chips;
}

inline DecodedStream decode_stream(std::span<const std::uint8_t> chips, StegoKey key,
                                   double embed_rate) {
  const auto symbols = frame_chips(chips);
  return decode_stream(std::span<const ChipSequence>(symbols), key, embed_rate);
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct RandomPayload {};

// data_bits must hold 4 bits per simulated symbol; stego_bits feeds the
// scheduled slots in order and is reused cyclically.
struct FixedPayload {
  BitVector data_bits;
  BitVector stego_bits;
};

using PayloadMode = std::variant<RandomPayload, FixedPayload>;

struct SimConfig {
  std::uint64_t num_symbols = 10000;
  ChannelParams channel = ChannelParams::direct(0.0);
  StegoKey key{0xACE1};
  double embed_rate = 1.0;
  std::uint64_t rng_seed = 1;
  PayloadMode payload = RandomPayload{};

  void validate() const {
    if (num_symbols < 1) throw ParameterError("num_symbols must be >= 1");
    if (!(embed_rate >= 0.0 && embed_rate <= 1.0))
      throw ParameterError("embed_rate must be in [0, 1], got " + std::to_string(embed_rate));
    if (const auto* fixed = std::get_if<FixedPayload>(&payload)) {
      if (fixed->data_bits.size() != 4 * num_symbols)
        throw ParameterError("fixed data payload must hold 4 bits per symbol");
      if (fixed->stego_bits.empty() || fixed->stego_bits.size() % 4 != 0)
        throw ParameterError("fixed stego payload must be a nonempty multiple of 4 bits");
    }
  }
};

struct SimReport {
  std::uint64_t chips_sent = 0;
  std::uint64_t chip_errors = 0;
  std::uint64_t symbols_sent = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t carrier_bit_errors = 0;
  std::uint64_t stego_symbols_sent = 0;
  std::uint64_t stego_symbol_errors = 0;
  std::uint64_t stego_exact_count = 0;
  std::string generator_id{kGeneratorId};
  SimConfig config;

  static double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  }
  double cer() const { return ratio(chip_errors, chips_sent); }
  double carrier_ser() const { return ratio(symbol_errors, symbols_sent); }
  double carrier_ber() const { return ratio(carrier_bit_errors, 4 * symbols_sent); }
  double stego_ser() const { return ratio(stego_symbol_errors, stego_symbols_sent); }
  double stego_exact_fraction() const { return ratio(stego_exact_count, stego_symbols_sent); }
};

// 95% Wilson score interval.
struct Interval {
  double low = 0.0;
  double high = 0.0;
};

inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// Stream seeds for payload and channel are split from the run seed.
inline SimReport run_simulation(const SimConfig& config) {
  config.validate();
  std::mt19937_64 payload_rng(mix_seed(config.rng_seed));
  ChipChannel channel(config.channel, mix_seed(config.rng_seed ^ 0x6368616E6E656Cull));
  EmbeddingScheduler scheduler(config.key, config.embed_rate);
  KeySchedule keys(config.key);
  const auto* fixed = std::get_if<FixedPayload>(&config.payload);

  SimReport r;
  r.config = config;
  std::uint64_t stego_cursor = 0;
  for (std::uint64_t i = 0; i < config.num_symbols; ++i) {
    const bool scheduled = scheduler.next();
    Permutation perm{};
    if (scheduled)
      perm = keys.next();
    else
      keys.skip();
    const DataSymbol data(fixed ? nibble_at(fixed->data_bits, i)
                                : static_cast<unsigned>(payload_rng() >> 60));
    ChipSequence tx = map_symbol(data);
    StegoSymbol stego;
    if (scheduled) {
      if (fixed) {
        const std::size_t groups = fixed->stego_bits.size() / 4;
        stego = StegoSymbol(nibble_at(fixed->stego_bits, stego_cursor++ % groups));
      } else {
        stego = StegoSymbol(static_cast<unsigned>(payload_rng() >> 60));
      }
      tx = embed_with_permutation(tx, stego, perm);
    }
    const ChipSequence rx = channel.transmit(tx);

    r.chips_sent += kChipsPerSymbol;
    r.chip_errors += static_cast<std::uint64_t>(hamming(tx, rx));
    r.symbols_sent += 1;
    if (scheduled) {
      const Extraction x = extract_with_permutation(rx, perm);
      r.stego_symbols_sent += 1;
      r.stego_symbol_errors += (x.symbol != stego);
      r.stego_exact_count += (x.exact && x.symbol == stego);
      const unsigned bit_diff = data.value() ^ x.carrier.symbol.value();
      r.symbol_errors += (bit_diff != 0);
      r.carrier_bit_errors += static_cast<std::uint64_t>(std::popcount(bit_diff));
    } else {
      const unsigned bit_diff = data.value() ^ decode_chips(rx).symbol.value();
      r.symbol_errors += (bit_diff != 0);
      r.carrier_bit_errors += static_cast<std::uint64_t>(std::popcount(bit_diff));
    }
  }
  return r;
}

// Scientific notation with 10 significant digits.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

// Flat `key=value` document, one entry per line, fixed key order.
inline std::string serialize_report(const SimReport& r) {
  std::string out;
  const auto put = [&out](std::string_view k, const std::string& v) {
    out.append(k).append("=").append(v).append("\n");
  };
  const auto put_u = [&put](std::string_view k, std::uint64_t v) { put(k, std::to_string(v)); };
  const auto put_r = [&put](std::string_view k, double v) { put(k, format_real(v)); };

  put("generator_id", r.generator_id);
  put_u("config.num_symbols", r.config.num_symbols);
  put_r("config.p_chip", r.config.channel.p_chip());
  put("config.snr_db", r.config.channel.snr_db() ? format_real(*r.config.channel.snr_db()) : "none");
  put("config.key", r.config.key.to_hex());
  put_r("config.embed_rate", r.config.embed_rate);
  put_u("config.seed", r.config.rng_seed);
  put("config.payload_mode",
      std::holds_alternative<RandomPayload>(r.config.payload) ? "random" : "fixed");
  put_u("chips_sent", r.chips_sent);
  put_u("chip_errors", r.chip_errors);
  put_r("cer", r.cer());
  put_u("symbols_sent", r.symbols_sent);
  put_u("symbol_errors", r.symbol_errors);
  put_r("carrier_ser", r.carrier_ser());
  put_u("carrier_bit_errors", r.carrier_bit_errors);
  put_r("carrier_ber", r.carrier_ber());
  put_u("stego_symbols_sent", r.stego_symbols_sent);
  put_u("stego_symbol_errors", r.stego_symbol_errors);
  put_r("stego_ser", r.stego_ser());
  put_u("stego_exact_count", r.stego_exact_count);
  put_r("stego_exact_fraction", r.stego_exact_fraction());
  const Interval ci = wilson_interval(r.stego_exact_count, r.stego_symbols_sent);
  put_r("stego_exact_ci95_low", ci.low);
  put_r("stego_exact_ci95_high", ci.high);
  return out;
}

}  // namespace dsss_stego
