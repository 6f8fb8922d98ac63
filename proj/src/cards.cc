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

#include "lbr/cards.h"

#include <algorithm>

#include "lbr/errors.h"
#include "lbr/hand_evaluator.h"

namespace lbr {

namespace {

constexpr std::string_view kRankChars = "23456789TJQKA";
constexpr std::string_view kSuitChars = "cdhs";

struct HandTable {
  std::array<std::pair<Card, Card>, kNumHands> cards;
  HandTable() {
    for (int a = 0; a < kNumCards; ++a) {
      for (int b = a + 1; b < kNumCards; ++b) {
        cards[hand_index(Card(a), Card(b)).value()] = {Card(a), Card(b)};
      }
    }
  }
};

const HandTable& hand_table() {
  static const HandTable table;
  return table;
}

}  // namespace

Card parse_card(std::string_view text) {
  if (text.size() != 2) {
    throw ParseError("bad card '" + std::string(text) + "'");
  }
  auto r = kRankChars.find(text[0]);
  auto s = kSuitChars.find(text[1]);
  if (r == std::string_view::npos || s == std::string_view::npos) {
    throw ParseError("bad card '" + std::string(text) + "'");
  }
  return Card::FromRankSuit(static_cast<int>(r) + 2, static_cast<int>(s));
}

std::string format_card(Card card) {
  return {kRankChars[card.rank() - 2], kSuitChars[card.suit()]};
}

std::vector<Card> parse_cards(std::string_view text) {
  if (text.size() % 2 != 0) {
    throw ParseError("odd-length card list '" + std::string(text) + "'",
                     text.size());
  }
  std::vector<Card> out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    try {
      out.push_back(parse_card(text.substr(i, 2)));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), i);
    }
  }
  return out;
}

std::string format_cards(std::span<const Card> cards) {
  std::string out;
  for (Card c : cards) out += format_card(c);
  return out;
}

HandIndex hand_index(Card a, Card b) {
  if (a == b) {
    throw DomainError("hand_index: identical cards " + format_card(a));
  }
  int c1 = std::min(a.id(), b.id());
  int c2 = std::max(a.id(), b.id());
  return HandIndex(c1 * 51 - c1 * (c1 - 1) / 2 + (c2 - c1 - 1));
}

std::pair<Card, Card> hand_cards(HandIndex hand) {
  return hand_table().cards[hand.value()];
}

CardSet hand_mask(HandIndex hand) {
  auto [a, b] = hand_cards(hand);
  return CardSet{a, b};
}

std::string format_hand(HandIndex hand) {
  auto [a, b] = hand_cards(hand);
  // Higher card first reads naturally: "AhAd", "Ks7c".
  return format_card(b) + format_card(a);
}

HandIndex parse_hand(std::string_view text) {
  auto cards = parse_cards(text);
  if (cards.size() != 2) throw ParseError("hand needs two cards: " + std::string(text));
  if (cards[0] == cards[1]) throw ParseError("duplicate card in hand: " + std::string(text));
  return hand_index(cards[0], cards[1]);
}

const char* category_name(HandCategory category) {
  switch (category) {
    case HandCategory::kHighCard: return "high card";
    case HandCategory::kPair: return "pair";
    case HandCategory::kTwoPair: return "two pair";
    case HandCategory::kThreeOfAKind: return "three of a kind";
    case HandCategory::kStraight: return "straight";
    case HandCategory::kFlush: return "flush";
    case HandCategory::kFullHouse: return "full house";
    case HandCategory::kFourOfAKind: return "four of a kind";
    case HandCategory::kStraightFlush: return "straight flush";
  }
  return "?";
}

HandRank evaluate7(std::span<const Card> cards) {
  if (cards.size() != 7) {
    throw DomainError("evaluate7 needs 7 cards, got " + std::to_string(cards.size()));
  }
  CardSet seen;
  for (Card c : cards) {
    if (c.id() < 0 || c.id() >= kNumCards) throw DomainError("card id out of range");
    if (seen.contains(c)) throw DomainError("evaluate7: duplicate card " + format_card(c));
    seen.insert(c);
  }
  return HandRank(HandEvaluator::Get().evaluate(cards.first<7>()));
}

}  // namespace lbr
