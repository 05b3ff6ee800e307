#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dsss_stego/chipmap.hpp"
#include "oracles.hpp"

namespace dsss_stego {
namespace {

const CodeSet kSet = standard_code_set();

TEST(ChipSequence, TextRoundTripKeepsChipZeroLeftmost) {
  const auto s = ChipSequence::from_string("10000000000000000000000000000001");
  EXPECT_TRUE(s.chip(0));
  EXPECT_TRUE(s.chip(31));
  EXPECT_FALSE(s.chip(1));
  EXPECT_EQ(s.packed(), 0x80000001u);
  EXPECT_EQ(s.to_string(), "10000000000000000000000000000001");
}

TEST(ChipSequence, RejectsMalformedText) {
  EXPECT_THROW(ChipSequence::from_string("0101"), std::invalid_argument);
  EXPECT_THROW(ChipSequence::from_string(std::string(31, '0') + "2"), std::invalid_argument);
}

TEST(DataSymbol, RejectsOutOfRange) {
  EXPECT_NO_THROW(DataSymbol(15));
  EXPECT_THROW(DataSymbol(16), std::out_of_range);
}

TEST(StandardCodeSet, SymbolZeroMatchesTable) {
  EXPECT_EQ(kSet[0].to_string(), "11011001110000110101001000101110");
}

TEST(StandardCodeSet, MatchesShiftAndInversionStructure) {
  const auto expected = oracle::structural_code_table(kSet[0].to_string());
  for (unsigned s = 0; s < kNumCodes; ++s) EXPECT_EQ(kSet[s].to_string(), expected[s]) << s;
}

TEST(StandardCodeSet, CodesPairwiseDistinct) {
  std::set<std::uint32_t> unique;
  for (const auto& c : kSet.codes) unique.insert(c.packed());
  EXPECT_EQ(unique.size(), kNumCodes);
}

TEST(CodeSetStats, StandardSetDistances) {
  const CodeSetStats stats = code_set_stats(kSet);
  EXPECT_EQ(stats.d_min, 12);
  EXPECT_EQ(stats.d_max, 20);
  EXPECT_NEAR(stats.d_mean, 17.1, 0.05);
  EXPECT_LE(stats.d_min, stats.d_mean);
  EXPECT_LE(stats.d_mean, stats.d_max);
}

TEST(CodeSetStats, DuplicateCodesRejected) {
  CodeSet dup = kSet;
  dup.codes[9] = dup.codes[3];
  EXPECT_THROW(code_set_stats(dup), InvalidCodeSet);
}

TEST(CodeSetStats, SingleChipTranscriptionErrorMovesMean) {
  CodeSet typo = kSet;
  typo.codes[5] = typo.codes[5].flipped(17);
  EXPECT_NE(code_set_stats(typo).d_mean, code_set_stats(kSet).d_mean);
}

TEST(Hamming, IdentityAndComplement) {
  const auto x = kSet[6];
  EXPECT_EQ(hamming(x, x), 0);
  EXPECT_EQ(hamming(x, x.complement()), 32);
}

TEST(Hamming, PairDistancesInRange) {
  EXPECT_GE(hamming(kSet[0], kSet[8]), 12);
  EXPECT_LE(hamming(kSet[0], kSet[8]), 20);
}

TEST(Hamming, IsAMetric) {
  std::mt19937 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const ChipSequence a(rng()), b(rng()), c(rng());
    EXPECT_GE(hamming(a, b), 0);
    EXPECT_EQ(hamming(a, b), hamming(b, a));
    EXPECT_LE(hamming(a, c), hamming(a, b) + hamming(b, c));
    EXPECT_EQ(hamming(a, a), 0);
  }
}

TEST(MapSymbol, IndexesTheSet) {
  EXPECT_EQ(map_symbol(DataSymbol(0), kSet), kSet[0]);
  EXPECT_EQ(map_symbol(DataSymbol(15), kSet), kSet[15]);
}

TEST(DecodeChips, ExactCodesDecodeWithZeroResidual) {
  for (unsigned s = 0; s < kNumCodes; ++s) {
    const DecodedChips d = decode_chips(map_symbol(DataSymbol(s)));
    EXPECT_EQ(d.symbol.value(), s);
    EXPECT_EQ(d.residual_distance, 0);
  }
  const DecodedChips seven = decode_chips(kSet[7]);
  EXPECT_EQ(seven.symbol.value(), 7u);
}

TEST(DecodeChips, FiveFlipsStillDecode) {
  const ChipSequence noisy = kSet[3].flipped(0).flipped(7).flipped(13).flipped(22).flipped(31);
  const DecodedChips d = decode_chips(noisy);
  EXPECT_EQ(d.symbol.value(), 3u);
  EXPECT_EQ(d.residual_distance, 5);
}

TEST(DecodeChips, TiesGoToLowestSymbol) {
  // Flip half of the chips where codes 2 and 9 differ: equidistant midpoint.
  const std::uint32_t diff = kSet[2].packed() ^ kSet[9].packed();
  const int d29 = std::popcount(diff);
  ASSERT_EQ(d29 % 2, 0);
  std::uint32_t half = 0;
  int taken = 0;
  for (std::size_t i = 0; i < kChipsPerSymbol && taken < d29 / 2; ++i) {
    if (diff & ChipSequence::position_mask(i)) {
      half |= ChipSequence::position_mask(i);
      ++taken;
    }
  }
  const ChipSequence mid = kSet[9].flipped_mask(half);
  ASSERT_EQ(hamming(mid, kSet[2]), hamming(mid, kSet[9]));
  for (unsigned s = 0; s < kNumCodes; ++s)
    if (s != 2 && s != 9) {
      ASSERT_GT(hamming(mid, kSet[s]), d29 / 2) << s;
    }
  const DecodedChips d = decode_chips(mid);
  EXPECT_EQ(d.symbol.value(), 2u);
  EXPECT_EQ(d.residual_distance, d29 / 2);
}

TEST(DecodeChips, AllSingleFlipsExhaustive) {
  for (unsigned s = 0; s < kNumCodes; ++s)
    for (std::size_t i = 0; i < kChipsPerSymbol; ++i)
      EXPECT_EQ(decode_chips(kSet[s].flipped(i)).symbol.value(), s);
}

TEST(DecodeChips, RandomUpToFiveFlipsDecode) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100000; ++trial) {
    const unsigned s = rng() % kNumCodes;
    const int weight = 2 + static_cast<int>(rng() % 4);
    std::uint32_t mask = 0;
    while (std::popcount(mask) < weight) mask |= std::uint32_t{1} << (rng() % 32);
    const ChipSequence received = kSet[s].flipped_mask(mask);
    const DecodedChips d = decode_chips(received);
    ASSERT_EQ(d.symbol.value(), s);
    ASSERT_EQ(d.residual_distance, weight);
    const DecodedChips again = decode_chips(received);
    ASSERT_EQ(again.symbol, d.symbol);
  }
}

}  // namespace
}  // namespace dsss_stego
