#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dsss_stego {

// Exact for every n <= 62 used here (C(32, k) peaks at ~6e8).
constexpr std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

// k-subsets of {0..n-1} in colexicographic order: the subset
// c_1 < c_2 < ... < c_k has rank sum_i C(c_i, i).
template <std::size_t K>
using Combination = std::array<std::uint8_t, K>;

template <std::size_t K>
constexpr std::uint64_t rank_colex(const Combination<K>& subset) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < K; ++i) rank += binomial(subset[i], static_cast<unsigned>(i + 1));
  return rank;
}

template <std::size_t K>
constexpr Combination<K> unrank_colex(std::uint64_t rank, unsigned n) {
  if (rank >= binomial(n, static_cast<unsigned>(K)))
    throw std::out_of_range("colex rank " + std::to_string(rank) + " out of range for C(" +
                            std::to_string(n) + ", " + std::to_string(K) + ")");
  Combination<K> subset{};
  unsigned c = n;
  for (std::size_t i = K; i-- > 0;) {
    // largest c with C(c, i+1) <= rank
    do {
      --c;
    } while (binomial(c, static_cast<unsigned>(i + 1)) > rank);
    subset[i] = static_cast<std::uint8_t>(c);
    rank -= binomial(c, static_cast<unsigned>(i + 1));
  }
  return subset;
}

}  // namespace dsss_stego
