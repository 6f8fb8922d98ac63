// Copyright 2026 The lbr-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "lbr/errors.h"
#include "lbr/preflop_table.h"
#include "lbr/range.h"
#include "oracles/naive_evaluator.h"

namespace lbr {
namespace {

// Synthetic table: every canonical matchup gets a distinct equity.
PreflopEquityTable synthetic_table() {
  std::vector<MatchupRecord> records;
  for (auto [a, b] : canonical_matchups()) {
    const double e = 0.05 + 0.9 * std::fmod(a.value() * 0.618 + b.value() * 0.414, 1.0);
    records.push_back({a, b, e, 0.001});
  }
  return PreflopEquityTable::from_records(TableMethod::kMonteCarlo, 42, 100000, records);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

double naive_equity(HandIndex a, HandIndex b, int boards, std::mt19937_64& rng, double* se) {
  auto [a1, a2] = hand_cards(a);
  auto [b1, b2] = hand_cards(b);
  std::vector<Card> deck;
  for (int c = 0; c < kNumCards; ++c) {
    if (!(hand_mask(a) | hand_mask(b)).contains(Card(c))) deck.emplace_back(c);
  }
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < boards; ++i) {
    std::shuffle(deck.begin(), deck.end(), rng);
    std::vector<Card> x{a1, a2, deck[0], deck[1], deck[2], deck[3], deck[4]};
    std::vector<Card> y{b1, b2, deck[0], deck[1], deck[2], deck[3], deck[4]};
    const uint32_t rx = oracle::naive_rank7(x), ry = oracle::naive_rank7(y);
    const double v = rx > ry ? 1.0 : rx == ry ? 0.5 : 0.0;
    sum += v;
    sq += v * v;
  }
  const double m = sum / boards;
  *se = std::sqrt((sq / boards - m * m) / boards);
  return m;
}

TEST(PreflopTableTest, CanonicalMatchupCount) {
  // Ordered pairs of disjoint hands modulo suit relabeling and seat swap.
  EXPECT_EQ(canonical_matchups().size(), 47008u);
}

TEST(PreflopTableTest, MirrorAcesSplitExactly) {
  EXPECT_EQ(exact_matchup_equity(parse_hand("AsAh"), parse_hand("AdAc")), 0.5);
}

TEST(PreflopTableTest, ExactMatchesSampledOracle) {
  std::mt19937_64 rng(3);
  const std::pair<const char*, const char*> cases[] = {
      {"AhAd", "7s2c"}, {"KsQs", "JhTh"}, {"2c2d", "AsKh"}, {"9c8c", "9d8d"}};
  for (auto [x, y] : cases) {
    const HandIndex a = parse_hand(x), b = parse_hand(y);
    double se = 0.0;
    const double mc = naive_equity(a, b, 60000, rng, &se);
    const double exact = exact_matchup_equity(a, b);
    EXPECT_NEAR(exact, mc, 4 * se + 1e-9) << x << " vs " << y;
    EXPECT_NEAR(exact + exact_matchup_equity(b, a), 1.0, 1e-15);
  }
}

TEST(PreflopTableTest, OverlappingHandsRejected) {
  EXPECT_THROW(exact_matchup_equity(parse_hand("AsAh"), parse_hand("AsKd")), DomainError);
  std::mt19937_64 rng(1);
  EXPECT_THROW(sampled_matchup_equity(parse_hand("AsAh"), parse_hand("AsKd"), 10, rng),
               DomainError);
}

TEST(PreflopTableTest, SampledEquityReportsError) {
  std::mt19937_64 rng(9);
  auto est = sampled_matchup_equity(parse_hand("AhAd"), parse_hand("7s2c"), 100000, rng);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_LT(est.std_error, 0.002);
  EXPECT_NEAR(est.equity, exact_matchup_equity(parse_hand("AhAd"), parse_hand("7s2c")),
              4 * est.std_error);
}

TEST(PreflopTableTest, LookupsAreSymmetricAndSuitInvariant) {
  const PreflopEquityTable t = synthetic_table();
  const HandIndex a = parse_hand("AsKs"), b = parse_hand("QhJh");
  EXPECT_FALSE(t.contains(a, parse_hand("AsQd")));
  EXPECT_TRUE(std::isnan(t.equity(a, parse_hand("AsQd"))));
  EXPECT_NEAR(t.equity(a, b) + t.equity(b, a), 1.0, 1e-15);
  // Relabel spades->diamonds, hearts->clubs.
  EXPECT_EQ(t.equity(a, b), t.equity(parse_hand("AdKd"), parse_hand("QcJc")));
  EXPECT_EQ(t.std_error(a, b), 0.001);
}

TEST(PreflopTableTest, SaveLoadRoundTrip) {
  const PreflopEquityTable t = synthetic_table();
  const std::string path = temp_path("lbr_table_roundtrip.bin");
  t.save(path);
  const PreflopEquityTable u = PreflopEquityTable::load(path);
  EXPECT_EQ(u.method(), TableMethod::kMonteCarlo);
  EXPECT_EQ(u.seed(), 42u);
  EXPECT_EQ(u.boards_per_entry(), 100000u);
  ASSERT_EQ(u.records().size(), t.records().size());
  for (int a = 0; a < kNumHands; a += 7) {
    for (int b = 0; b < kNumHands; b += 5) {
      if (t.contains(HandIndex(a), HandIndex(b))) {
        ASSERT_EQ(t.equity(HandIndex(a), HandIndex(b)), u.equity(HandIndex(a), HandIndex(b)));
      }
    }
  }
  std::filesystem::remove(path);
}

TEST(PreflopTableTest, CorruptionDetected) {
  const std::string path = temp_path("lbr_table_corrupt.bin");
  synthetic_table().save(path);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(100);
    char c;
    f.read(&c, 1);
    c ^= 0x5a;
    f.seekp(100);
    f.write(&c, 1);
  }
  EXPECT_THROW(PreflopEquityTable::load(path), TableError);
  std::filesystem::resize_file(path, 60);
  EXPECT_THROW(PreflopEquityTable::load(path), TableError);
  {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << "not a table at all, just some text to fill the header";
  }
  EXPECT_THROW(PreflopEquityTable::load(path), TableError);
  std::filesystem::remove(path);
  EXPECT_THROW(PreflopEquityTable::load(path), TableError);
}

TEST(PreflopTableTest, IncompleteRecordsRejected) {
  std::vector<MatchupRecord> records;
  for (auto [a, b] : canonical_matchups()) records.push_back({a, b, 0.5, 0.0});
  records.pop_back();
  EXPECT_THROW(PreflopEquityTable::from_records(TableMethod::kExact, 0, 0, records), TableError);
  records.push_back({records.front().a, records.front().b, 1.5, 0.0});
  EXPECT_THROW(PreflopEquityTable::from_records(TableMethod::kExact, 0, 0, records), TableError);
}

TEST(PreflopTableTest, PreflopRolloutAveragesTable) {
  const PreflopEquityTable t = synthetic_table();
  const HandIndex hero = parse_hand("AsAh");
  Likelihoods w{};
  w[parse_hand("KdKc").value()] = 3.0;
  w[parse_hand("7s2c").value()] = 1.0;
  const Range r = range_from_weights(w, hand_mask(hero));
  const double expected =
      0.75 * t.equity(hero, parse_hand("KdKc")) + 0.25 * t.equity(hero, parse_hand("7s2c"));
  EXPECT_NEAR(wp_rollout(hero, r, std::span<const Card>(), &t), expected, 1e-15);
}

}  // namespace
}  // namespace lbr
