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

// Heads-up no-limit hold'em rules.
//
// Positions: the "first player" posts the big blind and opens every
// postflop round; the "second player" posts the small blind and opens the
// preflop round. Player ids are 0 and 1; which of them is first is chosen at
// initial_state().
//
// Raises are expressed as raise-to: the raiser's total contribution for the
// hand after the action.

#ifndef LBR_ENGINE_H_
#define LBR_ENGINE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbr/cards.h"

namespace lbr {

using Chips = int64_t;

struct GameRules {
  Chips stack = 20000;
  Chips small_blind = 50;
  Chips big_blind = 100;

  // Throws DomainError unless 0 < small_blind <= big_blind <= stack.
  void validate() const;
  bool operator==(const GameRules&) const = default;
};

enum class ActionKind : uint8_t { kFold, kCall, kRaiseTo };

struct Action {
  ActionKind kind = ActionKind::kCall;
  Chips amount = 0;  // raise-to, kRaiseTo only

  static constexpr Action Fold() { return {ActionKind::kFold, 0}; }
  static constexpr Action Call() { return {ActionKind::kCall, 0}; }
  static constexpr Action RaiseTo(Chips to) { return {ActionKind::kRaiseTo, to}; }

  bool operator==(const Action&) const = default;
};

// "f", "c", "r<to>".
std::string format_action(Action a);
Action parse_action(std::string_view text);

struct RaiseBounds {
  Chips min_to = 0;
  Chips max_to = 0;
};

struct ActionSpace {
  bool can_fold = false;
  Chips call_amount = 0;
  std::optional<RaiseBounds> raise;

  bool is_legal(Action a) const;
};

enum class TerminalKind : uint8_t { kNone, kFold, kShowdown };

class PublicState {
 public:
  const GameRules& rules() const { return rules_; }
  int first_player() const { return first_player_; }
  int second_player() const { return 1 - first_player_; }
  // 1 preflop, 2 flop, 3 turn, 4 river.
  int round() const { return round_; }
  std::span<const Card> board() const { return {board_.data(), board_size_}; }
  const std::vector<Action>& round_actions(int round) const { return history_[round - 1]; }
  Chips contribution(int player) const { return contrib_[player]; }
  Chips pot() const { return contrib_[0] + contrib_[1]; }
  // -1 when no player is to act (terminal, or waiting for board cards).
  int to_act() const { return to_act_; }
  TerminalKind terminal_kind() const { return terminal_; }
  bool is_terminal() const { return terminal_ != TerminalKind::kNone; }
  int folder() const { return folder_; }
  // Betting round complete, next board cards pending.
  bool awaiting_board() const { return awaiting_board_; }
  // Both players committed; no more betting this hand.
  bool betting_closed() const { return betting_closed_; }
  // Cards the next deal_board() call must supply.
  int pending_board_cards() const;

  bool operator==(const PublicState&) const = default;

 private:
  friend PublicState initial_state(const GameRules&, int);
  friend PublicState apply_action(const PublicState&, Action);
  friend PublicState deal_board(const PublicState&, std::span<const Card>);
  friend ActionSpace legal_actions(const PublicState&);

  GameRules rules_;
  int first_player_ = 0;
  int round_ = 1;
  std::array<Card, 5> board_{};
  std::size_t board_size_ = 0;
  std::array<std::vector<Action>, 4> history_;
  std::array<Chips, 2> contrib_{0, 0};
  int to_act_ = -1;
  TerminalKind terminal_ = TerminalKind::kNone;
  int folder_ = -1;
  bool awaiting_board_ = false;
  bool betting_closed_ = false;
  Chips max_increment_ = 0;  // largest raise increment this round
};

PublicState initial_state(const GameRules& rules, int first_player = 0);
// Throws DomainError on terminal states and states waiting for cards.
ActionSpace legal_actions(const PublicState& s);
// Throws IllegalActionError naming the violated bound.
PublicState apply_action(const PublicState& s, Action a);
PublicState deal_board(const PublicState& s, std::span<const Card> cards);
// Chips won (positive) or lost by `player` holding `own` against `other`.
Chips terminal_payoff(const PublicState& s, int player, HandIndex own, HandIndex other);

// Canonical `<betting>:<board>` text. Betting rounds are joined by '/',
// actions are f, c and r<to>; the board is '-' when empty.
std::string format_state(const PublicState& s);

// Syntactic form of a state string; legality is checked by replay_state.
struct ParsedState {
  std::vector<std::vector<Action>> rounds;
  std::vector<Card> board;
};
ParsedState parse_state(std::string_view text);
PublicState replay_state(const ParsedState& parsed, const GameRules& rules,
                         int first_player = 0);
PublicState state_from_string(std::string_view text, const GameRules& rules,
                              int first_player = 0);

}  // namespace lbr

#endif  // LBR_ENGINE_H_
