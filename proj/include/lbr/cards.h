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

#ifndef LBR_CARDS_H_
#define LBR_CARDS_H_

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lbr {

inline constexpr int kNumCards = 52;
inline constexpr int kNumHands = 1326;

// Suits are ordered c, d, h, s.
class Card {
 public:
  constexpr Card() = default;
  constexpr explicit Card(int id) : id_(static_cast<uint8_t>(id)) {}
  static constexpr Card FromRankSuit(int rank, int suit) {
    return Card((rank - 2) * 4 + suit);
  }

  constexpr int id() const { return id_; }
  // 2..14, deuce through ace.
  constexpr int rank() const { return id_ / 4 + 2; }
  constexpr int suit() const { return id_ % 4; }

  constexpr auto operator<=>(const Card&) const = default;

 private:
  uint8_t id_ = 0;
};

// Bit set over card ids.
class CardSet {
 public:
  constexpr CardSet() = default;
  constexpr explicit CardSet(uint64_t bits) : bits_(bits) {}
  CardSet(std::initializer_list<Card> cards) {
    for (Card c : cards) insert(c);
  }
  explicit CardSet(std::span<const Card> cards) {
    for (Card c : cards) insert(c);
  }

  constexpr bool contains(Card c) const { return (bits_ >> c.id()) & 1; }
  constexpr void insert(Card c) { bits_ |= uint64_t{1} << c.id(); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr uint64_t bits() const { return bits_; }
  constexpr bool intersects(CardSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr CardSet operator|(CardSet o) const { return CardSet(bits_ | o.bits_); }
  constexpr bool operator==(const CardSet&) const = default;

 private:
  uint64_t bits_ = 0;
};

Card parse_card(std::string_view text);
std::string format_card(Card card);
// Concatenated two-character cards, e.g. "AsKd7h".
std::vector<Card> parse_cards(std::string_view text);
std::string format_cards(std::span<const Card> cards);

// Unordered pair of distinct cards, 0..1325.
class HandIndex {
 public:
  constexpr HandIndex() = default;
  constexpr explicit HandIndex(int value) : value_(static_cast<uint16_t>(value)) {}
  constexpr int value() const { return value_; }
  constexpr auto operator<=>(const HandIndex&) const = default;

 private:
  uint16_t value_ = 0;
};

HandIndex hand_index(Card a, Card b);
std::pair<Card, Card> hand_cards(HandIndex hand);
CardSet hand_mask(HandIndex hand);
std::string format_hand(HandIndex hand);
// Two concatenated cards, e.g. "AhAd".
HandIndex parse_hand(std::string_view text);

enum class HandCategory : uint8_t {
  kHighCard = 0,
  kPair,
  kTwoPair,
  kThreeOfAKind,
  kStraight,
  kFlush,
  kFullHouse,
  kFourOfAKind,
  kStraightFlush,
};

const char* category_name(HandCategory category);

// Packed as category << 20 | five 4-bit rank digits, most significant first.
// Integer order is hand strength order; equal values split the pot.
class HandRank {
 public:
  constexpr HandRank() = default;
  constexpr explicit HandRank(uint32_t packed) : packed_(packed) {}
  constexpr uint32_t packed() const { return packed_; }
  constexpr HandCategory category() const {
    return static_cast<HandCategory>(packed_ >> 20);
  }
  constexpr uint32_t tiebreak() const { return packed_ & 0xFFFFF; }
  constexpr auto operator<=>(const HandRank&) const = default;

 private:
  uint32_t packed_ = 0;
};

// Best five-card hand among seven distinct cards. Throws DomainError on
// duplicates or a wrong card count.
HandRank evaluate7(std::span<const Card> cards);

}  // namespace lbr

#endif  // LBR_CARDS_H_
