// Acceptance suite. Usage: acceptance [criterion-number ...]; no arguments
// runs all criteria. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dsss_stego/analysis.hpp"
#include "dsss_stego/channel.hpp"
#include "dsss_stego/chipmap.hpp"
#include "dsss_stego/pipeline.hpp"
#include "dsss_stego/stego_codec.hpp"
#include "oracles.hpp"

using namespace dsss_stego;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

StegoKey random_key(std::mt19937_64& rng) {
  std::uint16_t seed = 0;
  while (seed == 0) seed = static_cast<std::uint16_t>(rng());
  return StegoKey(seed);
}

// 1. d_min = 12, d_max = 20, d_mean = 17.1 +/- 0.05; < 1 s.
Outcome code_set_statistics() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const CodeSetStats stats = code_set_stats(standard_code_set());
  const double elapsed = seconds_since(start);
  o.require(stats.d_min == 12, "d_min=" + std::to_string(stats.d_min));
  o.require(stats.d_max == 20, "d_max=" + std::to_string(stats.d_max));
  o.require(std::fabs(stats.d_mean - 17.1) <= 0.05, "d_mean=" + fmt("%.6f", stats.d_mean));
  o.require(elapsed < 1.0, "runtime " + fmt("%.3f s", elapsed));
  o.note("d_min=12 d_max=20 d_mean=" + fmt("%.4f", stats.d_mean) + " in " + fmt("%.2e s", elapsed));
  return o;
}

// 2. C(32,5) = 201376, 17.62 +/- 0.01 bits, alphabet total 242824 = oracle.
Outcome alphabet_arithmetic() {
  Outcome o;
  const StegoAlphabetReport r = stego_alphabet_size(12);
  o.require(r.n_steg_fixed == 201376u, "N_steg_fixed=" + std::to_string(r.n_steg_fixed));
  o.require(std::fabs(r.bits_per_sequence - 17.62) <= 0.01, "bits=" + fmt("%.6f", r.bits_per_sequence));
  const oracle::BigInt expected = oracle::alphabet_sum(5);
  o.require(oracle::BigInt(r.n_steg) == expected && expected == 242824,
            "N_steg=" + std::to_string(r.n_steg) + " oracle=" + expected.str());
  o.note("N_steg_fixed=" + std::to_string(r.n_steg_fixed) + " bits=" + fmt("%.4f", r.bits_per_sequence) +
         " N_steg=" + std::to_string(r.n_steg));
  return o;
}

// 3. Zero carrier symbol errors for every (symbol, stego symbol) embedding and
//    1e5 random <= 5-flip perturbations; < 30 s.
Outcome correction_radius() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const CodeSet set = standard_code_set();
  std::mt19937_64 rng(2024);
  long failures = 0;
  long checked = 0;
  for (int k = 0; k < 100; ++k) {
    const KeySchedule keys(random_key(rng));
    const std::uint64_t index = rng() % 100000;
    for (unsigned s = 0; s < 16; ++s)
      for (unsigned e = 0; e < 16; ++e, ++checked)
        failures += decode_chips(embed(set[s], StegoSymbol(e), keys, index)).symbol.value() != s;
  }
  for (int trial = 0; trial < 100000; ++trial, ++checked) {
    const unsigned s = static_cast<unsigned>(rng() % 16);
    const int weight = static_cast<int>(rng() % 6);
    std::uint32_t mask = 0;
    while (std::popcount(mask) < weight) mask |= std::uint32_t{1} << (rng() % 32);
    failures += decode_chips(set[s].flipped_mask(mask)).symbol.value() != s;
  }
  SimConfig cfg;
  cfg.num_symbols = 100000;
  cfg.channel = ChannelParams::direct(0.0);
  cfg.embed_rate = 1.0;
  const SimReport sim = run_simulation(cfg);
  const double elapsed = seconds_since(start);
  o.require(failures == 0, std::to_string(failures) + " carrier symbol errors");
  o.require(sim.symbol_errors == 0 && sim.carrier_bit_errors == 0,
            "noiseless stream carrier BER " + fmt("%.3e", sim.carrier_ber()));
  o.require(elapsed < 30.0, "runtime " + fmt("%.2f s", elapsed));
  o.note(std::to_string(checked) + " words + 1e5-symbol stream, 0 errors, " + fmt("%.2f s", elapsed));
  return o;
}

// 4. 16 x 16 x 100 keys x 10 indices noiseless covert round trip.
Outcome covert_round_trip() {
  Outcome o;
  const CodeSet set = standard_code_set();
  std::mt19937_64 rng(4);
  long failures = 0, total = 0;
  for (int k = 0; k < 100; ++k) {
    const KeySchedule keys(random_key(rng));
    for (std::uint64_t i = 0; i < 10; ++i)
      for (unsigned s = 0; s < 16; ++s)
        for (unsigned e = 0; e < 16; ++e, ++total) {
          const Extraction x = extract(embed(set[s], StegoSymbol(e), keys, i), keys, i);
          failures += !(x.exact && x.symbol.value() == e && x.carrier.symbol.value() == s);
        }
  }
  o.require(failures == 0, std::to_string(failures) + " failures");
  o.note(std::to_string(total) + " round trips, " + std::to_string(failures) + " failures");
  return o;
}

// 5. ber_ieee(0) = 0.5 +/- 1e-9; strictly decreasing on a 0.1 dB grid over
//    [-10, 10] dB; 10 significant digits vs 50-digit oracle.
Outcome ber_ieee_anchors() {
  Outcome o;
  o.require(std::fabs(ber_ieee(0.0) - 0.5) <= 1e-9, "ber_ieee(0)=" + fmt("%.15f", ber_ieee(0.0)));
  o.require(std::fabs(ber_ieee(1e-12) - 0.5) <= 1e-9, "ber_ieee(0+)=" + fmt("%.15f", ber_ieee(1e-12)));
  double prev = 1.0;
  for (int i = -100; i <= 100; ++i) {
    const double v = ber_ieee(db_to_linear(i / 10.0));
    o.require(v < prev, "not decreasing at " + fmt("%.1f dB", i / 10.0));
    prev = v;
  }
  for (double snr : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double v = ber_ieee(snr);
    o.require(oracle::agree_sig_digits(v, oracle::ber_ieee(oracle::Real(snr)), 10),
              "snr=" + fmt("%g", snr) + " value " + fmt("%.16e", v));
  }
  o.note("limit, monotonicity and 5 oracle points checked");
  return o;
}

// 6. Coded bit-error probability vs direct 50-digit summation, 10 digits.
Outcome coded_bit_error_equivalence() {
  Outcome o;
  int points = 0;
  for (double p : {1e-4, 1e-3, 1e-2, 1e-1}) {
    for (int t = 0; t <= 5; ++t, ++points) {
      const double v = coded_bit_error_prob(p, 32, t);
      o.require(oracle::agree_sig_digits(v, oracle::coded_bit_error(oracle::Real(p), 32, static_cast<unsigned>(t)), 10),
                "p=" + fmt("%g", p) + " t=" + std::to_string(t));
    }
  }
  o.note(std::to_string(points) + " points agree to 10 digits");
  return o;
}

// 7. Shift at 4 dB, embed_chips 5, rate 1 in 1.8 +/- 0.9 dB under at least one
//    pm-mode; shift < 15 dB on the operating grid; shift(rate 0) == 0.
Outcome sensitivity_reproduction() {
  Outcome o;
  PerformanceModelParams params;
  params.d_mean = code_set_stats(standard_code_set()).d_mean;
  params.embed_chips = 5;
  params.embed_rate = 1.0;

  bool window_hit = false;
  for (PmMode mode : {PmMode::kProbabilityDifference, PmMode::kLiteralRatio}) {
    params.pm_mode = mode;
    const SensitivityPoint pt = sensitivity_shift(4.0, params);
    const bool in_window = !pt.saturated && std::fabs(pt.sensitivity_shift_db - 1.8) <= 0.9;
    window_hit |= in_window;
    o.note(std::string(to_string(mode)) + " shift@4dB=" + fmt("%.4f dB", pt.sensitivity_shift_db) +
           (pt.saturated ? " (saturated)" : ""));
  }
  o.require(window_hit, "4 dB shift outside 1.8 +/- 0.9 dB under both pm-modes");

  params.pm_mode = PmMode::kProbabilityDifference;
  double worst = 0.0;
  for (int i = -20; i <= 20; ++i) {
    const double snr = i / 2.0;
    for (double rate : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      params.embed_rate = rate;
      const SensitivityPoint pt = sensitivity_shift(snr, params);
      worst = std::max(worst, pt.sensitivity_shift_db);
      o.require(pt.sensitivity_shift_db < 15.0, "shift >= 15 dB at " + fmt("%.1f dB", snr));
      if (rate == 0.0) o.require(pt.sensitivity_shift_db == 0.0, "nonzero shift at rate 0");
    }
  }
  o.note("max grid shift " + fmt("%.3f dB", worst));
  return o;
}

// 8. Per-position flip counts over 1e5 embedded symbols with random keys
//    pass a chi-square uniformity test at the 1% level.
Outcome scrambling_uniformity() {
  Outcome o;
  const CodeSet set = standard_code_set();
  std::mt19937_64 rng(8);
  std::array<double, 32> counts{};
  constexpr int kSymbols = 100000;
  for (int i = 0; i < kSymbols; ++i) {
    const KeySchedule keys(random_key(rng));
    const unsigned s = static_cast<unsigned>(rng() % 16);
    const unsigned e = static_cast<unsigned>(rng() % 16);
    const std::uint64_t index = rng() % 65535;
    const std::uint32_t diff = embed(set[s], StegoSymbol(e), keys, index).packed() ^ set[s].packed();
    for (std::size_t p = 0; p < 32; ++p) counts[p] += (diff & ChipSequence::position_mask(p)) != 0;
  }
  const double expected = kSymbols * 5.0 / 32.0;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double critical = oracle::chi_square_critical(31, 0.01);
  o.require(chi2 < critical, "chi2=" + fmt("%.3f", chi2) + " >= " + fmt("%.3f", critical));
  o.note("chi2=" + fmt("%.3f", chi2) + " critical(31 df, 1%)=" + fmt("%.3f", critical));
  return o;
}

// 9. CER within 3 sigma of p at 1e-3, 1e-2, 1e-1 over 1e6 chips; identical
//    seeds give byte-identical reports.
Outcome monte_carlo_consistency() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (double p : {1e-3, 1e-2, 1e-1}) {
    SimConfig cfg;
    cfg.num_symbols = 1000000 / 32;
    cfg.channel = ChannelParams::direct(p);
    cfg.embed_rate = 1.0;
    cfg.rng_seed = 909;
    const SimReport a = run_simulation(cfg);
    const double n = static_cast<double>(a.chips_sent);
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    o.require(std::fabs(a.cer() - p) <= 3.0 * sigma,
              "p=" + fmt("%g", p) + " CER=" + fmt("%.6e", a.cer()));
    const SimReport b = run_simulation(cfg);
    o.require(serialize_report(a) == serialize_report(b), "reports differ for p=" + fmt("%g", p));
    o.note("p=" + fmt("%g", p) + " CER=" + fmt("%.5e", a.cer()) + " (" +
           fmt("%+.2f sigma", (a.cer() - p) / sigma) + ")");
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 300.0, "runtime " + fmt("%.1f s", elapsed));
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"code-set statistics", code_set_statistics},
      {"alphabet arithmetic", alphabet_arithmetic},
      {"correction radius", correction_radius},
      {"covert round trip", covert_round_trip},
      {"standard BER anchors", ber_ieee_anchors},
      {"coded bit-error oracle equivalence", coded_bit_error_equivalence},
      {"sensitivity reproduction", sensitivity_reproduction},
      {"scrambling uniformity", scrambling_uniformity},
      {"Monte Carlo consistency", monte_carlo_consistency},
  };

  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(n - 1));
  }
  if (selected.empty())
    for (std::size_t i = 0; i < criteria.size(); ++i) selected.push_back(i);

  int failed = 0;
  for (std::size_t i : selected) {
    const Outcome o = criteria[i].run();
    std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    failed += !o.pass;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
