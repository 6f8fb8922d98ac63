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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "lbr/cards.h"
#include "lbr/errors.h"
#include "lbr/hand_evaluator.h"
#include "oracles/naive_evaluator.h"

namespace lbr {
namespace {

std::array<Card, 7> random_seven(std::mt19937_64& rng) {
  std::array<int, 52> deck;
  std::iota(deck.begin(), deck.end(), 0);
  for (int i = 0; i < 7; ++i) {
    std::uniform_int_distribution<int> pick(i, 51);
    std::swap(deck[i], deck[pick(rng)]);
  }
  std::array<Card, 7> out;
  for (int i = 0; i < 7; ++i) out[i] = Card(deck[i]);
  return out;
}

TEST(ParseCard, Extremes) {
  Card lo = parse_card("2c");
  EXPECT_EQ(lo.rank(), 2);
  EXPECT_EQ(lo.suit(), 0);
  EXPECT_EQ(lo.id(), 0);
  Card hi = parse_card("As");
  EXPECT_EQ(hi.rank(), 14);
  EXPECT_EQ(hi.suit(), 3);
  EXPECT_EQ(hi.id(), 51);
}

TEST(ParseCard, RejectsGarbage) {
  EXPECT_THROW(parse_card("Xq"), ParseError);
  EXPECT_THROW(parse_card("A"), ParseError);
  EXPECT_THROW(parse_card("Ass"), ParseError);
  try {
    parse_card("Xq");
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("Xq"), std::string::npos);
  }
}

TEST(ParseCard, RoundTripsEveryCard) {
  for (int id = 0; id < kNumCards; ++id) {
    Card c(id);
    EXPECT_EQ(parse_card(format_card(c)), c);
    EXPECT_EQ(Card::FromRankSuit(c.rank(), c.suit()), c);
  }
}

TEST(HandIndex, Examples) {
  EXPECT_EQ(hand_index(Card(0), Card(1)).value(), 0);
  EXPECT_EQ(hand_index(Card(50), Card(51)).value(), 1325);
  EXPECT_EQ(hand_index(Card(1), Card(2)).value(), 51);
  EXPECT_EQ(hand_index(Card(2), Card(1)).value(), 51);
  EXPECT_THROW(hand_index(Card(7), Card(7)), DomainError);
}

TEST(HandIndex, Bijection) {
  std::vector<int> hits(kNumHands, 0);
  for (int a = 0; a < kNumCards; ++a) {
    for (int b = a + 1; b < kNumCards; ++b) {
      HandIndex h = hand_index(Card(a), Card(b));
      ASSERT_GE(h.value(), 0);
      ASSERT_LT(h.value(), kNumHands);
      ++hits[h.value()];
      auto [x, y] = hand_cards(h);
      EXPECT_EQ(x.id(), a);
      EXPECT_EQ(y.id(), b);
    }
  }
  for (int v : hits) EXPECT_EQ(v, 1);
}

TEST(Evaluate7, RoyalFlush) {
  auto cards = parse_cards("AsKsQsJsTs2c3d");
  HandRank r = evaluate7(cards);
  EXPECT_EQ(r.category(), HandCategory::kStraightFlush);
}

TEST(Evaluate7, CategoryOrdering) {
  auto rank = [](const char* s) { return evaluate7(parse_cards(s)); };
  EXPECT_EQ(rank("Ah2d3c4s5h9dJc").category(), HandCategory::kStraight);
  EXPECT_EQ(rank("5h4h3h2hAhKdKc").category(), HandCategory::kStraightFlush);
  EXPECT_EQ(rank("AhAdAcKsKhKd2c").category(), HandCategory::kFullHouse);
  EXPECT_EQ(rank("AhAdAcAs2h3d4c").category(), HandCategory::kFourOfAKind);
  EXPECT_LT(rank("Ah2d3c4s5h9dJc"), rank("2h3d4c5s6h9dJc"));  // wheel below six-high
  EXPECT_LT(rank("AhAd2c3s7h9dJc"), rank("2h2d3c3s7h9dJc"));
  EXPECT_EQ(rank("AhKd9c8s2h3d4c"), rank("AsKc9d8h2c3s4d"));
}

TEST(Evaluate7, RejectsBadInput) {
  auto dup = parse_cards("AsAsQsJsTs2c3d");
  EXPECT_THROW(evaluate7(dup), DomainError);
  auto six = parse_cards("AsKsQsJsTs2c");
  EXPECT_THROW(evaluate7(six), DomainError);
}

TEST(Evaluate7, PermutationInvariant) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    auto cards = random_seven(rng);
    HandRank base = evaluate7(cards);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(cards.begin(), cards.end(), rng);
      ASSERT_EQ(evaluate7(cards), base);
    }
  }
}

TEST(Evaluate7, MatchesNaiveOracle) {
  std::mt19937_64 rng(20260101);
  for (int t = 0; t < 200000; ++t) {
    auto cards = random_seven(rng);
    ASSERT_EQ(evaluate7(cards).packed(), oracle::naive_rank7(cards))
        << format_cards(cards);
  }
}

TEST(Evaluate7, TotalOrderOnSampledTriples) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20000; ++t) {
    HandRank a = evaluate7(random_seven(rng));
    HandRank b = evaluate7(random_seven(rng));
    HandRank c = evaluate7(random_seven(rng));
    if (a <= b && b <= c) EXPECT_LE(a, c);
    if (a < b) EXPECT_FALSE(b < a);
  }
}

TEST(FullBoard, AgreesWithEvaluate7) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50000; ++t) {
    auto cards = random_seven(rng);
    FullBoard fb(std::span<const Card>(cards).subspan(2, 5));
    ASSERT_EQ(fb.score(cards[0], cards[1]), evaluate7(cards).packed());
  }
}

}  // namespace
}  // namespace lbr
