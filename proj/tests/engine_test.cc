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

#include <gtest/gtest.h>

#include "lbr/engine.h"
#include "lbr/errors.h"

namespace lbr {
namespace {

const GameRules kRules;

PublicState deal(const PublicState& s, std::string_view cards) {
  auto parsed = parse_cards(cards);
  return deal_board(s, parsed);
}

TEST(EngineTest, InitialStatePostsBlinds) {
  PublicState s = initial_state(kRules, 0);
  EXPECT_EQ(s.contribution(0), 100);
  EXPECT_EQ(s.contribution(1), 50);
  EXPECT_EQ(s.to_act(), 1);
  EXPECT_EQ(s.round(), 1);
  EXPECT_EQ(format_state(s), ":-");

  PublicState t = initial_state(kRules, 1);
  EXPECT_EQ(t.contribution(1), 100);
  EXPECT_EQ(t.to_act(), 0);
}

TEST(EngineTest, InitialLegalActions) {
  ActionSpace a = legal_actions(initial_state(kRules));
  EXPECT_TRUE(a.can_fold);
  EXPECT_EQ(a.call_amount, 50);
  ASSERT_TRUE(a.raise.has_value());
  EXPECT_EQ(a.raise->min_to, 200);
  EXPECT_EQ(a.raise->max_to, 20000);
}

TEST(EngineTest, SmallerStackPassesThrough) {
  ActionSpace a = legal_actions(initial_state(GameRules{10000, 50, 100}));
  EXPECT_EQ(a.raise->max_to, 10000);
}

TEST(EngineTest, BadRulesRejected) {
  EXPECT_THROW(initial_state(GameRules{20000, 200, 100}), DomainError);
  EXPECT_THROW(initial_state(GameRules{50, 50, 100}), DomainError);
  EXPECT_THROW(initial_state(GameRules{20000, 0, 100}), DomainError);
}

TEST(EngineTest, FoldAtStart) {
  PublicState s = apply_action(initial_state(kRules), Action::Fold());
  EXPECT_TRUE(s.is_terminal());
  EXPECT_EQ(s.terminal_kind(), TerminalKind::kFold);
  EXPECT_EQ(s.folder(), 1);
  HandIndex a = parse_hand("AsAh"), b = parse_hand("7c2d");
  EXPECT_EQ(terminal_payoff(s, 0, a, b), 50);
  EXPECT_EQ(terminal_payoff(s, 1, b, a), -50);
}

TEST(EngineTest, LimpAndCheckEndsRound) {
  PublicState s = initial_state(kRules);
  s = apply_action(s, Action::Call());
  EXPECT_FALSE(s.awaiting_board());
  EXPECT_EQ(s.to_act(), 0);
  ActionSpace a = legal_actions(s);
  EXPECT_FALSE(a.can_fold);
  EXPECT_EQ(a.call_amount, 0);
  s = apply_action(s, Action::Call());
  EXPECT_TRUE(s.awaiting_board());
  EXPECT_EQ(s.pending_board_cards(), 3);
  EXPECT_EQ(s.to_act(), -1);
  EXPECT_THROW(legal_actions(s), DomainError);
}

TEST(EngineTest, FlopStartsWithFirstPlayer) {
  PublicState s = initial_state(kRules);
  s = apply_action(apply_action(s, Action::Call()), Action::Call());
  s = deal(s, "AsKd7h");
  EXPECT_EQ(s.round(), 2);
  EXPECT_EQ(s.to_act(), 0);
  EXPECT_EQ(legal_actions(s).call_amount, 0);
  EXPECT_FALSE(legal_actions(s).can_fold);
}

TEST(EngineTest, DealErrors) {
  PublicState s = initial_state(kRules);
  EXPECT_THROW(deal(s, "AsKd7h"), DomainError);  // betting not complete
  s = apply_action(apply_action(s, Action::Call()), Action::Call());
  EXPECT_THROW(deal(s, "AsKd"), DomainError);
  EXPECT_THROW(deal(s, "AsAsKd"), DomainError);
  s = deal(s, "AsKd7h");
  s = apply_action(apply_action(s, Action::Call()), Action::Call());
  EXPECT_THROW(deal(s, "Kd"), DomainError);
}

TEST(EngineTest, MinRaiseTracksLargestIncrement) {
  PublicState s = initial_state(kRules);
  s = apply_action(s, Action::RaiseTo(300));  // increment 200
  ActionSpace a = legal_actions(s);
  EXPECT_EQ(a.call_amount, 200);
  EXPECT_EQ(a.raise->min_to, 500);
  EXPECT_THROW(apply_action(s, Action::RaiseTo(499)), IllegalActionError);
  s = apply_action(s, Action::RaiseTo(1000));  // increment 700
  EXPECT_EQ(legal_actions(s).raise->min_to, 1700);
}

TEST(EngineTest, MinRaiseClampedToStack) {
  PublicState s = initial_state(kRules);
  s = apply_action(s, Action::RaiseTo(15000));
  ActionSpace a = legal_actions(s);
  EXPECT_EQ(a.raise->min_to, 20000);
  EXPECT_EQ(a.raise->max_to, 20000);
}

TEST(EngineTest, AllInLeavesOnlyFoldCall) {
  PublicState s = apply_action(initial_state(kRules), Action::RaiseTo(20000));
  ActionSpace a = legal_actions(s);
  EXPECT_TRUE(a.can_fold);
  EXPECT_EQ(a.call_amount, 19900);
  EXPECT_FALSE(a.raise.has_value());
  EXPECT_THROW(apply_action(s, Action::RaiseTo(20000)), IllegalActionError);
}

TEST(EngineTest, AllInCallRunsOutBoard) {
  PublicState s = initial_state(kRules);
  s = apply_action(s, Action::RaiseTo(20000));
  s = apply_action(s, Action::Call());
  EXPECT_TRUE(s.awaiting_board());
  EXPECT_TRUE(s.betting_closed());
  s = deal(s, "2c3c4c");
  EXPECT_TRUE(s.awaiting_board());
  EXPECT_EQ(s.to_act(), -1);
  s = deal(s, "5d");
  s = deal(s, "Kh");
  EXPECT_TRUE(s.is_terminal());
  EXPECT_EQ(s.terminal_kind(), TerminalKind::kShowdown);
  EXPECT_EQ(format_state(s), "r20000c///:2c3c4c5dKh");
}

TEST(EngineTest, SmallBlindAllInCallIsFirstActionButEndsRound) {
  // A call that puts a player all-in closes betting even as the first action.
  PublicState s = initial_state(GameRules{100, 50, 100});
  EXPECT_FALSE(legal_actions(s).raise.has_value());
  s = apply_action(s, Action::Call());
  EXPECT_TRUE(s.awaiting_board());
  EXPECT_TRUE(s.betting_closed());
}

TEST(EngineTest, IllegalActionsNameTheBound) {
  PublicState s = initial_state(kRules);
  try {
    apply_action(s, Action::RaiseTo(150));
    FAIL();
  } catch (const IllegalActionError& e) {
    EXPECT_NE(std::string(e.what()).find("below minimum 200"), std::string::npos);
  }
  try {
    apply_action(s, Action::RaiseTo(20001));
    FAIL();
  } catch (const IllegalActionError& e) {
    EXPECT_NE(std::string(e.what()).find("above maximum 20000"), std::string::npos);
  }
  s = apply_action(s, Action::Call());
  EXPECT_THROW(apply_action(s, Action::Fold()), IllegalActionError);
}

TEST(EngineTest, ShowdownPayoffs) {
  PublicState s = initial_state(kRules);
  s = apply_action(s, Action::RaiseTo(400));
  s = apply_action(s, Action::Call());
  s = deal(s, "2c7d9h");
  s = apply_action(apply_action(s, Action::Call()), Action::Call());
  s = deal(s, "Js");
  s = apply_action(apply_action(s, Action::Call()), Action::Call());
  s = deal(s, "3h");
  s = apply_action(apply_action(s, Action::Call()), Action::Call());
  ASSERT_TRUE(s.is_terminal());
  HandIndex aces = parse_hand("AsAh"), kings = parse_hand("KsKh");
  EXPECT_EQ(terminal_payoff(s, 0, aces, kings), 400);
  EXPECT_EQ(terminal_payoff(s, 1, kings, aces), -400);
  // Same rank through the board: split.
  EXPECT_EQ(terminal_payoff(s, 0, parse_hand("AdKd"), parse_hand("AcKc")), 0);
  EXPECT_THROW(terminal_payoff(s, 0, parse_hand("2cAd"), kings), DomainError);
  EXPECT_THROW(terminal_payoff(initial_state(kRules), 0, aces, kings), DomainError);
}

TEST(EngineTest, StateStringRoundTrip) {
  PublicState s = initial_state(kRules);
  s = apply_action(s, Action::RaiseTo(300));
  s = apply_action(s, Action::Call());
  s = deal(s, "AsKd7h");
  s = apply_action(s, Action::Call());
  s = apply_action(s, Action::RaiseTo(500));
  const std::string text = format_state(s);
  EXPECT_EQ(text, "r300c/cr500:AsKd7h");
  EXPECT_EQ(state_from_string(text, kRules), s);
}

TEST(EngineTest, ParseEnforcesBoardLength) {
  EXPECT_THROW(parse_state("cr300c/cc/:-"), ParseError);
  EXPECT_THROW(parse_state("cc/:AsKd"), ParseError);
  EXPECT_THROW(parse_state("cc"), ParseError);
  EXPECT_THROW(parse_state("cx:-"), ParseError);
  EXPECT_NO_THROW(parse_state("cc/cc/:AsKd7h2c"));
  try {
    parse_state("cr30z:-");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.position(), 2u);
  }
}

TEST(EngineTest, ReplayRejectsIllegalSequences) {
  EXPECT_THROW(state_from_string("cr150:-", kRules), IllegalActionError);
  EXPECT_THROW(state_from_string("ccc:-", kRules), DomainError);
  EXPECT_THROW(state_from_string("cc/:AsAsKd", kRules), ParseError);
  EXPECT_THROW(state_from_string("r300/:AsKd7h", kRules), DomainError);
}

TEST(EngineTest, RandomPlayoutsStayConsistent) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20000; ++i) {
    std::vector<int> deck(52);
    std::iota(deck.begin(), deck.end(), 0);
    std::shuffle(deck.begin(), deck.end(), rng);
    PublicState s = initial_state(kRules, i & 1);
    std::size_t next_card = 4;
    Chips pot = s.pot();
    int steps = 0;
    while (!s.is_terminal()) {
      if (s.awaiting_board()) {
        std::vector<Card> cards;
        for (int k = 0; k < s.pending_board_cards(); ++k) cards.emplace_back(deck[next_card++]);
        s = deal_board(s, cards);
        continue;
      }
      ActionSpace a = legal_actions(s);
      int pick = std::uniform_int_distribution<int>(0, 2)(rng);
      Action act = Action::Call();
      if (pick == 0 && a.can_fold) act = Action::Fold();
      if (pick == 2 && a.raise) {
        act = Action::RaiseTo(
            std::uniform_int_distribution<Chips>(a.raise->min_to, a.raise->max_to)(rng));
      }
      s = apply_action(s, act);
      ASSERT_GE(s.pot(), pot);
      ASSERT_LE(s.pot(), 2 * kRules.stack);
      pot = s.pot();
      ASSERT_LT(++steps, 1000);
    }
    EXPECT_EQ(state_from_string(format_state(s), kRules, i & 1), s);
    HandIndex h0 = hand_index(Card(deck[0]), Card(deck[1]));
    HandIndex h1 = hand_index(Card(deck[2]), Card(deck[3]));
    ASSERT_EQ(terminal_payoff(s, 0, h0, h1), -terminal_payoff(s, 1, h1, h0));
  }
}

}  // namespace
}  // namespace lbr
