#pragma once

// Memoryless binary-symmetric chip channel.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "dsss_stego/chipmap.hpp"

namespace dsss_stego {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

// Coherent binary detection: p = erfc(sqrt(snr)) / 2.
inline double snr_to_chip_error_prob(double snr_linear) {
  if (!(snr_linear > 0.0))
    throw std::domain_error("SNR must be positive, got " + std::to_string(snr_linear));
  return 0.5 * std::erfc(std::sqrt(snr_linear));
}

class ChannelParams {
 public:
  static ChannelParams direct(double p_chip) { return ChannelParams(p_chip, std::nullopt); }

  static ChannelParams from_snr_db(double snr_db) {
    return ChannelParams(snr_to_chip_error_prob(db_to_linear(snr_db)), snr_db);
  }

  double p_chip() const { return p_chip_; }
  // Set when the flip probability was derived from an SNR in dB.
  std::optional<double> snr_db() const { return snr_db_; }

 private:
  ChannelParams(double p, std::optional<double> snr_db) : p_chip_(p), snr_db_(snr_db) {
    if (!(p >= 0.0 && p <= 0.5))
      throw std::domain_error("p_chip must be in [0, 0.5], got " + std::to_string(p));
  }

  double p_chip_;
  std::optional<double> snr_db_;
};

inline constexpr std::string_view kGeneratorId = "mt19937_64";

// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class ChipChannel {
 public:
  ChipChannel(ChannelParams params, std::uint64_t seed) : params_(params), rng_(seed) {}

  ChipSequence transmit(ChipSequence seq) {
    const double p = params_.p_chip();
    if (p == 0.0) return seq;
    std::uint32_t flips = 0;
    for (std::size_t i = 0; i < kChipsPerSymbol; ++i)
      if (uniform01(rng_) < p) flips |= ChipSequence::position_mask(i);
    return seq.flipped_mask(flips);
  }

  const ChannelParams& params() const { return params_; }

 private:
  ChannelParams params_;
  std::mt19937_64 rng_;
};

}  // namespace dsss_stego
