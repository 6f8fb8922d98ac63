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

#include "lbr/engine.h"

#include <algorithm>
#include <charconv>

#include "lbr/errors.h"
#include "lbr/hand_evaluator.h"

namespace lbr {

namespace {

constexpr std::array<std::size_t, 4> kBoardSizeByRound = {0, 3, 4, 5};

}  // namespace

void GameRules::validate() const {
  if (!(0 < small_blind && small_blind <= big_blind && big_blind <= stack)) {
    throw DomainError("invalid rules: need 0 < small_blind <= big_blind <= stack (got " +
                      std::to_string(small_blind) + "/" + std::to_string(big_blind) +
                      ", stack " + std::to_string(stack) + ")");
  }
}

std::string format_action(Action a) {
  switch (a.kind) {
    case ActionKind::kFold: return "f";
    case ActionKind::kCall: return "c";
    case ActionKind::kRaiseTo: return "r" + std::to_string(a.amount);
  }
  return "?";
}

Action parse_action(std::string_view text) {
  if (text == "f") return Action::Fold();
  if (text == "c") return Action::Call();
  if (text.size() >= 2 && text[0] == 'r') {
    Chips to = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), to);
    if (ec == std::errc() && ptr == text.data() + text.size()) return Action::RaiseTo(to);
  }
  throw ParseError("bad action '" + std::string(text) + "'");
}

bool ActionSpace::is_legal(Action a) const {
  switch (a.kind) {
    case ActionKind::kFold: return can_fold;
    case ActionKind::kCall: return true;
    case ActionKind::kRaiseTo:
      return raise && a.amount >= raise->min_to && a.amount <= raise->max_to;
  }
  return false;
}

int PublicState::pending_board_cards() const {
  if (!awaiting_board_) return 0;
  return round_ == 1 ? 3 : 1;
}

PublicState initial_state(const GameRules& rules, int first_player) {
  rules.validate();
  if (first_player != 0 && first_player != 1) {
    throw DomainError("first_player must be 0 or 1");
  }
  PublicState s;
  s.rules_ = rules;
  s.first_player_ = first_player;
  s.contrib_[first_player] = rules.big_blind;
  s.contrib_[1 - first_player] = rules.small_blind;
  s.to_act_ = 1 - first_player;
  return s;
}

ActionSpace legal_actions(const PublicState& s) {
  if (s.is_terminal()) throw DomainError("legal_actions: terminal state");
  if (s.to_act_ < 0) throw DomainError("legal_actions: waiting for board cards");
  const int me = s.to_act_;
  const Chips facing = s.contrib_[1 - me];
  ActionSpace space;
  space.call_amount = facing - s.contrib_[me];
  space.can_fold = space.call_amount > 0;
  if (s.rules_.stack > facing) {
    Chips increment = std::max(s.max_increment_, s.rules_.big_blind);
    space.raise = RaiseBounds{std::min(facing + increment, s.rules_.stack), s.rules_.stack};
  }
  return space;
}

PublicState apply_action(const PublicState& s, Action a) {
  ActionSpace space = legal_actions(s);
  if (!space.is_legal(a)) {
    std::string why;
    if (a.kind == ActionKind::kFold) {
      why = "fold with nothing to call";
    } else if (!space.raise) {
      why = "raise not allowed (opponent all-in or stack exhausted)";
    } else if (a.amount < space.raise->min_to) {
      why = "raise-to " + std::to_string(a.amount) + " below minimum " +
            std::to_string(space.raise->min_to);
    } else {
      why = "raise-to " + std::to_string(a.amount) + " above maximum " +
            std::to_string(space.raise->max_to);
    }
    throw IllegalActionError("illegal action " + format_action(a) + ": " + why);
  }

  PublicState next = s;
  const int me = s.to_act_;
  const int opp = 1 - me;
  auto& actions = next.history_[s.round_ - 1];
  actions.push_back(a);

  switch (a.kind) {
    case ActionKind::kFold:
      next.terminal_ = TerminalKind::kFold;
      next.folder_ = me;
      next.to_act_ = -1;
      break;
    case ActionKind::kCall: {
      next.contrib_[me] = s.contrib_[opp];
      const bool all_in = next.contrib_[me] == s.rules_.stack;
      if (actions.size() > 1 || all_in) {
        next.to_act_ = -1;
        if (s.round_ == 4) {
          next.terminal_ = TerminalKind::kShowdown;
        } else {
          next.awaiting_board_ = true;
          next.betting_closed_ = all_in;
        }
      } else {
        next.to_act_ = opp;
      }
      break;
    }
    case ActionKind::kRaiseTo:
      next.max_increment_ = std::max(s.max_increment_, a.amount - s.contrib_[opp]);
      next.contrib_[me] = a.amount;
      next.to_act_ = opp;
      break;
  }
  return next;
}

PublicState deal_board(const PublicState& s, std::span<const Card> cards) {
  if (!s.awaiting_board_) throw DomainError("deal_board: betting round not complete");
  const std::size_t want = static_cast<std::size_t>(s.pending_board_cards());
  if (cards.size() != want) {
    throw DomainError("deal_board: expected " + std::to_string(want) + " cards, got " +
                      std::to_string(cards.size()));
  }
  CardSet seen(s.board());
  for (Card c : cards) {
    if (c.id() < 0 || c.id() >= kNumCards) throw DomainError("deal_board: bad card id");
    if (seen.contains(c)) throw DomainError("deal_board: duplicate card " + format_card(c));
    seen.insert(c);
  }
  PublicState next = s;
  for (Card c : cards) next.board_[next.board_size_++] = c;
  next.round_ = s.round_ + 1;
  next.max_increment_ = 0;
  if (s.betting_closed_) {
    if (next.round_ == 4) {
      next.awaiting_board_ = false;
      next.terminal_ = TerminalKind::kShowdown;
    }
  } else {
    next.awaiting_board_ = false;
    next.to_act_ = s.first_player_;
  }
  return next;
}

Chips terminal_payoff(const PublicState& s, int player, HandIndex own, HandIndex other) {
  if (!s.is_terminal()) throw DomainError("terminal_payoff: state is not terminal");
  if (player != 0 && player != 1) throw DomainError("terminal_payoff: bad player id");
  const int opp = 1 - player;
  if (s.terminal_kind() == TerminalKind::kFold) {
    return s.folder() == player ? -s.contribution(player) : s.contribution(opp);
  }
  CardSet board(s.board());
  CardSet a = hand_mask(own), b = hand_mask(other);
  if (board.size() != 5 || a.intersects(board) || b.intersects(board) || a.intersects(b)) {
    throw DomainError("terminal_payoff: hands overlap each other or the board");
  }
  FullBoard fb(s.board());
  auto [a1, a2] = hand_cards(own);
  auto [b1, b2] = hand_cards(other);
  uint32_t va = fb.score(a1, a2), vb = fb.score(b1, b2);
  if (va > vb) return s.contribution(opp);
  if (va < vb) return -s.contribution(player);
  return 0;
}

std::string format_state(const PublicState& s) {
  std::string out;
  for (int r = 1; r <= s.round(); ++r) {
    if (r > 1) out += '/';
    for (Action a : s.round_actions(r)) out += format_action(a);
  }
  out += ':';
  out += s.board().empty() ? std::string("-") : format_cards(s.board());
  return out;
}

ParsedState parse_state(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("state: missing ':'", text.size());
  if (text.find(':', colon + 1) != std::string_view::npos) {
    throw ParseError("state: more than one ':'", text.find(':', colon + 1));
  }
  ParsedState out;
  out.rounds.emplace_back();
  for (std::size_t i = 0; i < colon;) {
    char ch = text[i];
    if (ch == '/') {
      out.rounds.emplace_back();
      ++i;
    } else if (ch == 'f') {
      out.rounds.back().push_back(Action::Fold());
      ++i;
    } else if (ch == 'c') {
      out.rounds.back().push_back(Action::Call());
      ++i;
    } else if (ch == 'r') {
      std::size_t j = i + 1;
      while (j < colon && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == i + 1) throw ParseError("state: raise without amount", i);
      Chips to = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + j, to);
      if (ec != std::errc()) throw ParseError("state: raise amount out of range", i);
      out.rounds.back().push_back(Action::RaiseTo(to));
      i = j;
    } else {
      throw ParseError(std::string("state: unexpected '") + ch + "'", i);
    }
  }
  if (out.rounds.size() > 4) throw ParseError("state: more than 4 betting rounds", colon);

  std::string_view board = text.substr(colon + 1);
  if (board != "-") {
    if (board.empty()) throw ParseError("state: empty board (use '-')", colon + 1);
    try {
      out.board = parse_cards(board);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), colon + 1 + e.position());
    }
    CardSet seen;
    for (std::size_t k = 0; k < out.board.size(); ++k) {
      if (seen.contains(out.board[k])) {
        throw ParseError("state: duplicate board card", colon + 1 + 2 * k);
      }
      seen.insert(out.board[k]);
    }
  }
  const std::size_t need = kBoardSizeByRound[out.rounds.size() - 1];
  if (out.board.size() != need) {
    throw ParseError("state: board must show " + std::to_string(need) + " cards by round " +
                         std::to_string(out.rounds.size()),
                     colon + 1);
  }
  return out;
}

PublicState replay_state(const ParsedState& parsed, const GameRules& rules, int first_player) {
  PublicState s = initial_state(rules, first_player);
  for (std::size_t r = 0; r < parsed.rounds.size(); ++r) {
    if (r > 0) {
      const std::size_t lo = kBoardSizeByRound[r - 1], hi = kBoardSizeByRound[r];
      s = deal_board(s, std::span<const Card>(parsed.board).subspan(lo, hi - lo));
    }
    for (Action a : parsed.rounds[r]) {
      if (s.to_act() < 0) {
        throw IllegalActionError("action " + format_action(a) + " after betting ended");
      }
      s = apply_action(s, a);
    }
  }
  return s;
}

PublicState state_from_string(std::string_view text, const GameRules& rules, int first_player) {
  return replay_state(parse_state(text), rules, first_player);
}

}  // namespace lbr
