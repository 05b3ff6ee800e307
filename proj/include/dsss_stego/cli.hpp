#pragma once

// Command-line front end: stats | analytic | simulate | sweep | encode | decode.
// Exit codes: 0 success, 2 usage error, 3 data or format error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <future>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dsss_stego/analysis.hpp"
#include "dsss_stego/channel.hpp"
#include "dsss_stego/chip_stream.hpp"
#include "dsss_stego/chipmap.hpp"
#include "dsss_stego/pipeline.hpp"
#include "dsss_stego/stego_codec.hpp"

namespace dsss_stego::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write to '" + path + "' failed");
}

inline void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// ---------------------------------------------------------------------------

inline std::string stats_report() {
  std::ostringstream os;
  const CodeSetStats stats = code_set_stats(standard_code_set());
  const StegoAlphabetReport alphabet = stego_alphabet_size(stats.d_min);
  os << "d_min=" << stats.d_min << "\n"
     << "d_mean=" << format_real(stats.d_mean) << "\n"
     << "d_max=" << stats.d_max << "\n"
     << "t=" << alphabet.t << "\n"
     << "N_steg=" << alphabet.n_steg << "\n"
     << "N_steg_fixed=" << alphabet.n_steg_fixed << "\n"
     << "bits_per_sequence=" << format_real(alphabet.bits_per_sequence) << "\n"
     << "delta_avg_distance=" << format_real(delta_avg_distance(alphabet.t, stats.d_mean)) << "\n"
     << "codebook_min_pairwise_distance=" << default_codebook().min_pairwise_distance() << "\n"
     << "\n"
     << "d_min,t,N_steg,N_steg_fixed,bits_per_sequence\n";
  for (int d = 3; d <= 12; ++d) {
    const StegoAlphabetReport r = stego_alphabet_size(d);
    os << d << "," << r.t << "," << r.n_steg << "," << r.n_steg_fixed << ","
       << format_real(r.bits_per_sequence) << "\n";
  }
  return os.str();
}

struct AnalyticGrid {
  std::vector<double> snr_db;
  std::vector<double> embed_rates;
};

inline constexpr std::string_view kAnalyticHeader =
    "snr_db,ber_clean,ber_steg,sensitivity_shift_db,embed_rate,pm_mode";

inline std::string analytic_csv(AnalyticGrid grid, PerformanceModelParams params) {
  std::sort(grid.snr_db.begin(), grid.snr_db.end());
  std::sort(grid.embed_rates.begin(), grid.embed_rates.end());
  std::string out(kAnalyticHeader);
  out += "\n";
  for (double snr : grid.snr_db) {
    for (double rate : grid.embed_rates) {
      params.embed_rate = rate;
      const SensitivityPoint pt = sensitivity_shift(snr, params);
      out += format_real(snr) + "," + format_real(pt.ber_clean) + "," + format_real(pt.ber_steg) +
             "," + format_real(pt.sensitivity_shift_db) + "," + format_real(rate) + "," +
             std::string(to_string(params.pm_mode)) + "\n";
    }
  }
  return out;
}

inline constexpr std::string_view kSweepHeader =
    "snr_db,embed_rate,p_chip,seed,cer,carrier_ser,carrier_ber,stego_ser,stego_exact_fraction";

struct SweepGrid {
  std::vector<double> snr_db;
  std::vector<double> embed_rates;
  std::uint64_t symbols_per_point = 10000;
  std::uint64_t base_seed = 1;
};

// Points run concurrently; rows are emitted in (snr_db, embed_rate) order and
// each point's seed depends only on its index in that order.
inline std::string sweep_csv(SweepGrid grid, StegoKey key, unsigned max_threads = 0) {
  std::sort(grid.snr_db.begin(), grid.snr_db.end());
  std::sort(grid.embed_rates.begin(), grid.embed_rates.end());
  struct Point {
    double snr_db;
    double rate;
    std::uint64_t seed;
  };
  std::vector<Point> points;
  for (double snr : grid.snr_db)
    for (double rate : grid.embed_rates)
      points.push_back({snr, rate, mix_seed(grid.base_seed + points.size())});

  const auto run_point = [&](const Point& p) {
    SimConfig cfg;
    cfg.num_symbols = grid.symbols_per_point;
    cfg.channel = ChannelParams::from_snr_db(p.snr_db);
    cfg.key = key;
    cfg.embed_rate = p.rate;
    cfg.rng_seed = p.seed;
    const SimReport r = run_simulation(cfg);
    return format_real(p.snr_db) + "," + format_real(p.rate) + "," +
           format_real(cfg.channel.p_chip()) + "," + std::to_string(p.seed) + "," +
           format_real(r.cer()) + "," + format_real(r.carrier_ser()) + "," +
           format_real(r.carrier_ber()) + "," + format_real(r.stego_ser()) + "," +
           format_real(r.stego_exact_fraction()) + "\n";
  };

  if (max_threads == 0) max_threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::string> rows(points.size());
  for (std::size_t start = 0; start < points.size(); start += max_threads) {
    std::vector<std::future<std::string>> batch;
    const std::size_t end = std::min(points.size(), start + max_threads);
    for (std::size_t i = start; i < end; ++i)
      batch.push_back(std::async(std::launch::async, run_point, std::cref(points[i])));
    for (std::size_t i = start; i < end; ++i) rows[i] = batch[i - start].get();
  }
  std::string out(kSweepHeader);
  out += "\n";
  for (const auto& row : rows) out += row;
  return out;
}

inline std::string diagnostics_csv(const DecodedStream& decoded) {
  std::string out = "symbol_index,carrier_symbol,residual_distance,scheduled,stego_symbol,exact,diff_weight\n";
  for (const auto& d : decoded.diagnostics) {
    out += std::to_string(d.symbol_index) + "," + std::to_string(d.carrier.value()) + "," +
           std::to_string(d.residual_distance) + "," + (d.scheduled ? "1" : "0") + ",";
    if (d.scheduled)
      out += std::to_string(d.stego.value()) + "," + (d.exact ? "1" : "0") + "," +
             std::to_string(d.diff_weight) + "\n";
    else
      out += ",,\n";
  }
  return out;
}

// Covert bytes from a decoded stream: trailing scheduled slots that carry no
// flips were never filled by the encoder and are dropped.
inline std::vector<std::uint8_t> recovered_stego_bytes(const DecodedStream& decoded) {
  std::size_t slots = 0;
  std::size_t used = 0;
  for (const auto& d : decoded.diagnostics) {
    if (!d.scheduled) continue;
    ++slots;
    if (d.diff_weight != 0) used = slots;
  }
  return bits_to_bytes(std::span(decoded.stego_bits).first(4 * used));
}

// ---------------------------------------------------------------------------

inline std::vector<double> default_snr_grid() {
  std::vector<double> grid;
  for (int db = -4; db <= 10; ++db) grid.push_back(db);
  return grid;
}

inline std::vector<double> default_rate_grid() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chip-level codec and simulator for covert symbols in IEEE 802.15.4 DSSS codes",
               "dsss-stego"};
  app.require_subcommand(1);

  const auto key_validator = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          StegoKey::from_hex(s);
          return {};
        } catch (const std::exception& e) {
          return e.what();
        }
      },
      "HEX4");
  const auto rate_range = CLI::Range(0.0, 1.0);

  // stats
  auto* stats = app.add_subcommand("stats", "Code-set distances, alphabet sizes and codebook check");

  // analytic
  auto* analytic = app.add_subcommand("analytic", "Analytic BER and sensitivity curves as CSV");
  std::vector<double> an_snr = default_snr_grid();
  std::vector<double> an_rates = default_rate_grid();
  PerformanceModelParams an_params;
  an_params.d_mean = code_set_stats(standard_code_set()).d_mean;
  std::string an_mode = "diff";
  analytic->add_option("--snr-db", an_snr, "SNR grid in dB (comma separated)")->delimiter(',');
  analytic->add_option("--embed-rate", an_rates, "Embedding rates in [0,1] (comma separated)")
      ->delimiter(',')
      ->check(rate_range);
  analytic->add_option("--embed-chips", an_params.embed_chips, "Chips altered per embedded symbol")
      ->check(CLI::Range(0, 5));
  analytic->add_option("--pm-mode", an_mode, "Misdecode shift: ratio or diff")
      ->check(CLI::IsMember({"ratio", "diff"}));

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run, flat key=value report");
  std::uint64_t sim_symbols = 100000;
  double sim_p_chip = 0.0;
  double sim_snr_db = 0.0;
  double sim_rate = 1.0;
  std::string sim_key = "ACE1";
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  simulate->add_option("--symbols", sim_symbols, "Number of DSSS symbols")->check(CLI::PositiveNumber);
  auto* p_opt = simulate->add_option("--p-chip", sim_p_chip, "Chip flip probability")
                    ->check(CLI::Range(0.0, 0.5));
  auto* snr_opt = simulate->add_option("--snr-db", sim_snr_db, "Chip SNR in dB");
  p_opt->excludes(snr_opt);
  simulate->add_option("--embed-rate", sim_rate, "Fraction of symbols carrying covert data")
      ->check(rate_range);
  simulate->add_option("--key", sim_key, "Stego key, 4 hex digits")->check(key_validator);
  simulate->add_option("--seed", sim_seed, "64-bit RNG seed");
  simulate->add_option("--out", sim_out, "Report path (default: stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo over an SNR x embedding-rate grid, CSV");
  SweepGrid sw_grid;
  sw_grid.snr_db = {0.0, 2.0, 4.0, 6.0};
  sw_grid.embed_rates = default_rate_grid();
  std::string sw_key = "ACE1";
  unsigned sw_threads = 0;
  sweep->add_option("--snr-db", sw_grid.snr_db, "SNR grid in dB (comma separated)")->delimiter(',');
  sweep->add_option("--embed-rate", sw_grid.embed_rates, "Embedding rates (comma separated)")
      ->delimiter(',')
      ->check(rate_range);
  sweep->add_option("--symbols", sw_grid.symbols_per_point, "Symbols per grid point")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sw_grid.base_seed, "Base seed; point seeds derive from it");
  sweep->add_option("--key", sw_key, "Stego key, 4 hex digits")->check(key_validator);
  sweep->add_option("--threads", sw_threads, "Worker threads (0: hardware concurrency)");

  // encode
  auto* encode = app.add_subcommand("encode", "Payload files -> chip-stream file");
  std::string enc_data, enc_stego, enc_out, enc_key = "ACE1";
  double enc_rate = 1.0;
  encode->add_option("--data", enc_data, "Carrier payload file")->required();
  encode->add_option("--stego", enc_stego, "Covert payload file");
  encode->add_option("--out", enc_out, "Chip-stream output file")->required();
  encode->add_option("--key", enc_key, "Stego key, 4 hex digits")->check(key_validator);
  encode->add_option("--embed-rate", enc_rate, "Fraction of symbols carrying covert data")
      ->check(rate_range);

  // decode
  auto* decode = app.add_subcommand("decode", "Chip-stream file -> payload files + diagnostics");
  std::string dec_in, dec_data, dec_stego, dec_diag, dec_key = "ACE1";
  double dec_rate = 1.0;
  decode->add_option("--in", dec_in, "Chip-stream input file")->required();
  decode->add_option("--data-out", dec_data, "Recovered carrier payload")->required();
  decode->add_option("--stego-out", dec_stego, "Recovered covert payload");
  decode->add_option("--diag-out", dec_diag, "Per-symbol diagnostics CSV (default: <in>.diag.csv)");
  decode->add_option("--key", dec_key, "Stego key, 4 hex digits")->check(key_validator);
  decode->add_option("--embed-rate", dec_rate, "Fraction of symbols carrying covert data")
      ->check(rate_range);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*stats) {
      out << stats_report();
    } else if (*analytic) {
      if (an_snr.empty() || an_rates.empty()) {
        err << "analytic: grids must be nonempty\n";
        return kExitUsage;
      }
      an_params.pm_mode = pm_mode_from_string(an_mode);
      out << analytic_csv({an_snr, an_rates}, an_params);
    } else if (*simulate) {
      SimConfig cfg;
      cfg.num_symbols = sim_symbols;
      cfg.channel = snr_opt->count() ? ChannelParams::from_snr_db(sim_snr_db)
                                     : ChannelParams::direct(sim_p_chip);
      cfg.key = StegoKey::from_hex(sim_key);
      cfg.embed_rate = sim_rate;
      cfg.rng_seed = sim_seed;
      const std::string report = serialize_report(run_simulation(cfg));
      if (sim_out.empty())
        out << report;
      else
        write_text(sim_out, report);
    } else if (*sweep) {
      if (sw_grid.snr_db.empty() || sw_grid.embed_rates.empty()) {
        err << "sweep: grids must be nonempty\n";
        return kExitUsage;
      }
      out << sweep_csv(sw_grid, StegoKey::from_hex(sw_key), sw_threads);
    } else if (*encode) {
      const auto data = read_file(enc_data);
      const auto stego = enc_stego.empty() ? std::vector<std::uint8_t>{} : read_file(enc_stego);
      const auto encoded = encode_stream(bytes_to_bits(data), bytes_to_bits(stego),
                                         StegoKey::from_hex(enc_key), enc_rate);
      write_file(enc_out, serialize_chip_stream(encoded.symbols));
      err << "encoded " << encoded.symbols.size() << " symbols, " << encoded.stego_slots_used
          << " of " << encoded.stego_slots_scheduled << " covert slots used\n";
    } else if (*decode) {
      const auto symbols = parse_chip_stream(read_file(dec_in));
      const DecodedStream decoded =
          decode_stream(std::span<const ChipSequence>(symbols), StegoKey::from_hex(dec_key), dec_rate);
      write_file(dec_data, bits_to_bytes(decoded.data_bits));
      if (!dec_stego.empty()) write_file(dec_stego, recovered_stego_bytes(decoded));
      write_text(dec_diag.empty() ? dec_in + ".diag.csv" : dec_diag, diagnostics_csv(decoded));
    }
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitData;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitData;
  } catch (const FramingError& e) {
    err << "framing error: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace dsss_stego::cli
