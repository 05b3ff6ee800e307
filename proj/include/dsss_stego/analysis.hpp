#pragma once

// Closed-form performance model for the covert channel: alphabet size,
// average-distance shift, coded bit-error probability, BER penalty on the
// non-steganographic receiver and its equivalent sensitivity loss.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dsss_stego/channel.hpp"
#include "dsss_stego/combinatorics.hpp"
#include "dsss_stego/errors.hpp"

namespace dsss_stego {

namespace detail {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

}  // namespace detail

struct StegoAlphabetReport {
  int d_min = 0;
  int t = 0;
  std::uint64_t n_steg = 0;        // all layouts of 1..t flipped chips
  std::uint64_t n_steg_fixed = 0;  // layouts of exactly t flipped chips
  double bits_per_sequence = 0.0;  // log2(n_steg_fixed)
  bool degenerate = false;         // t == 0: nothing can be hidden
};

inline StegoAlphabetReport stego_alphabet_size(int d_min) {
  if (d_min < 1 || d_min > 32)
    throw std::domain_error("d_min must be in [1, 32], got " + std::to_string(d_min));
  StegoAlphabetReport r;
  r.d_min = d_min;
  r.t = (d_min - 1) / 2;
  if (r.t == 0) {
    r.degenerate = true;
    return r;
  }
  for (int i = 1; i <= r.t; ++i) r.n_steg += binomial(32, static_cast<unsigned>(i));
  r.n_steg_fixed = binomial(32, static_cast<unsigned>(r.t));
  r.bits_per_sequence = std::log2(static_cast<double>(r.n_steg_fixed));
  return r;
}

inline double delta_avg_distance(int t, double d_mean) {
  return static_cast<double>(t) * d_mean / 32.0;
}

// P_C = (1/n) sum_{i=t+1}^{n} i C(n,i) p^i (1-p)^(n-i), each term formed in
// log space.
inline double coded_bit_error_prob(double p_b, int n, int t) {
  if (!(p_b >= 0.0 && p_b <= 1.0))
    throw std::domain_error("p_b must be in [0, 1], got " + std::to_string(p_b));
  if (n < 1 || t < 0) throw ParameterError("need n >= 1 and t >= 0");
  if (t >= n || p_b == 0.0) return 0.0;
  if (p_b == 1.0) return 1.0;
  const long double log_p = std::log(static_cast<long double>(p_b));
  const long double log_q = std::log1p(-static_cast<long double>(p_b));
  detail::CompensatedSum sum;
  for (int i = t + 1; i <= n; ++i) {
    const long double log_term =
        std::log(static_cast<long double>(i)) +
        std::log(static_cast<long double>(binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)))) +
        i * log_p + (n - i) * log_q;
    sum.add(std::exp(log_term));
  }
  return static_cast<double>(sum.value() / n);
}

enum class PmMode { kLiteralRatio, kProbabilityDifference };

inline std::string_view to_string(PmMode mode) {
  return mode == PmMode::kLiteralRatio ? "ratio" : "diff";
}

inline PmMode pm_mode_from_string(std::string_view s) {
  if (s == "ratio") return PmMode::kLiteralRatio;
  if (s == "diff") return PmMode::kProbabilityDifference;
  throw std::invalid_argument("pm-mode must be 'ratio' or 'diff', got '" + std::string(s) + "'");
}

struct PerformanceModelParams {
  int n = 32;
  int t = 5;
  double d_mean = 17.1;
  int embed_chips = 5;     // chips altered per embedded sequence
  double embed_rate = 1.0; // fraction of symbols carrying a covert symbol
  PmMode pm_mode = PmMode::kProbabilityDifference;

  void validate() const {
    if (n < 1 || t < 0 || t > n) throw ParameterError("invalid code length / correction radius");
    if (embed_chips < 0 || embed_chips > t)
      throw ParameterError("embed_chips must be in [0, t], got " + std::to_string(embed_chips));
    if (!(embed_rate >= 0.0 && embed_rate <= 1.0))
      throw ParameterError("embed_rate must be in [0, 1], got " + std::to_string(embed_rate));
  }
};

// Change in misdecode probability when embedding eats `embed_chips` of the
// correction radius. Literal-ratio mode returns P_C_steg / P_C; difference
// mode returns P_C_steg - P_C.
inline double misdecode_shift(double p_b, const PerformanceModelParams& params) {
  if (!(p_b > 0.0 && p_b < 1.0))
    throw std::domain_error("p_b must be in (0, 1), got " + std::to_string(p_b));
  const int t_eff = params.t - params.embed_chips;
  if (t_eff < 0) throw ParameterError("effective correction radius t - embed_chips is negative");
  const double pc = coded_bit_error_prob(p_b, params.n, params.t);
  const double pc_steg = coded_bit_error_prob(p_b, params.n, t_eff);
  if (params.pm_mode == PmMode::kProbabilityDifference) return pc_steg - pc;
  if (pc_steg == pc) return 1.0;
  return pc == 0.0 ? HUGE_VAL : pc_steg / pc;
}

// Expected bit errors per wrong symbol (32/15) over bits per symbol (4).
inline double delta_ber(double delta_pm) {
  if (delta_pm < 0.0) throw std::domain_error("delta_pm must be nonnegative");
  return (32.0 / 15.0) / 4.0 * delta_pm;
}

// BER = (8/15)(1/16) sum_{k=2}^{16} (-1)^k C(16,k) exp(20 snr (1/k - 1)).
inline double ber_ieee(double snr_linear) {
  if (snr_linear < 0.0)
    throw std::domain_error("SNR must be nonnegative, got " + std::to_string(snr_linear));
  detail::CompensatedSum sum;
  const long double snr = snr_linear;
  for (int k = 2; k <= 16; ++k) {
    const long double term = static_cast<long double>(binomial(16, static_cast<unsigned>(k))) *
                             std::exp(20.0L * snr * (1.0L / k - 1.0L));
    sum.add(k % 2 == 0 ? term : -term);
  }
  return static_cast<double>(8.0L / 15.0L / 16.0L * sum.value());
}

inline double ber_with_stego(double snr_db, const PerformanceModelParams& params) {
  params.validate();
  const double snr_linear = db_to_linear(snr_db);
  const double clean = ber_ieee(snr_linear);
  if (params.embed_rate == 0.0) return clean;
  const double p_b = snr_to_chip_error_prob(snr_linear);
  const double shifted = clean + params.embed_rate * delta_ber(misdecode_shift(p_b, params));
  return std::clamp(shifted, 0.0, 0.5);
}

struct SensitivityPoint {
  double snr_db = 0.0;
  double embed_rate = 0.0;
  double ber_clean = 0.0;
  double ber_steg = 0.0;
  double sensitivity_shift_db = 0.0;
  // Target BER outside the range ber_ieee covers on the search bracket.
  bool saturated = false;
};

inline constexpr double kSensitivityBracketDb = 30.0;

// SNR loss a plain receiver would need to see the stego-loaded BER:
// ber_ieee(snr - shift) == ber_with_stego(snr), solved by bisection.
inline SensitivityPoint sensitivity_shift(double snr_db, const PerformanceModelParams& params) {
  SensitivityPoint pt;
  pt.snr_db = snr_db;
  pt.embed_rate = params.embed_rate;
  pt.ber_clean = ber_ieee(db_to_linear(snr_db));
  pt.ber_steg = ber_with_stego(snr_db, params);
  if (pt.ber_steg <= pt.ber_clean) return pt;

  double lo = snr_db - kSensitivityBracketDb;  // ber(lo) >= target
  double hi = snr_db;                          // ber(hi) <  target
  const auto ber_at = [](double db) { return ber_ieee(db_to_linear(db)); };
  if (pt.ber_steg >= 0.5 || ber_at(lo) < pt.ber_steg) {
    pt.saturated = true;
    pt.sensitivity_shift_db = kSensitivityBracketDb;
    return pt;
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double b = ber_at(mid);
    if (std::fabs(b - pt.ber_steg) <= 1e-12 * pt.ber_steg) {
      lo = hi = mid;
      break;
    }
    if (b >= pt.ber_steg)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13) break;
  }
  pt.sensitivity_shift_db = snr_db - 0.5 * (lo + hi);
  return pt;
}

}  // namespace dsss_stego
