#pragma once

// Reference computations for the tests. Nothing here calls into the library's
// numeric routines: binomials come from big integers, sums are evaluated at
// 50 decimal digits, and subset orderings from plain enumeration.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;
using Real = boost::multiprecision::cpp_dec_float_50;

inline BigInt big_binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

// sum_{i=1}^{t} C(32, i)
inline BigInt alphabet_sum(unsigned t) {
  BigInt total = 0;
  for (unsigned i = 1; i <= t; ++i) total += big_binomial(32, i);
  return total;
}

inline Real coded_bit_error(const Real& p, unsigned n, unsigned t) {
  Real sum = 0;
  for (unsigned i = t + 1; i <= n; ++i) {
    Real term = Real(i) * Real(big_binomial(n, i).str());
    term *= boost::multiprecision::pow(p, i) * boost::multiprecision::pow(Real(1) - p, n - i);
    sum += term;
  }
  return sum / n;
}

inline Real ber_ieee(const Real& snr) {
  Real sum = 0;
  for (int k = 2; k <= 16; ++k) {
    Real term = Real(big_binomial(16, static_cast<unsigned>(k)).str()) *
                boost::multiprecision::exp(Real(20) * snr * (Real(1) / k - Real(1)));
    sum += (k % 2 == 0) ? term : Real(-term);
  }
  return Real(8) / 15 / 16 * sum;
}

inline bool agree_sig_digits(double value, const Real& reference, int digits) {
  using boost::multiprecision::abs;
  if (reference == 0) return value == 0.0;
  const Real rel = abs((Real(value) - reference) / reference);
  return rel < boost::multiprecision::pow(Real(10), -digits);
}

// All k-subsets of {0..n-1}, sorted colexicographically.
inline std::vector<std::vector<int>> colex_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

inline double chi_square_critical(double df, double significance) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(df), significance));
}

// Codes 1..7 are successive 4-chip cyclic right shifts of code 0; codes
// 8..15 invert the odd-indexed chips of codes 0..7.
inline std::array<std::string, 16> structural_code_table(const std::string& code0) {
  std::array<std::string, 16> codes;
  for (int s = 0; s < 8; ++s) {
    const int shift = 4 * s;
    codes[s] = code0.substr(32 - shift) + code0.substr(0, 32 - shift);
  }
  for (int s = 0; s < 8; ++s) {
    codes[8 + s] = codes[s];
    for (int i = 1; i < 32; i += 2) codes[8 + s][i] = codes[s][i] == '0' ? '1' : '0';
  }
  return codes;
}

}  // namespace oracle
