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

// Table-driven seven-card evaluation.
//
// Non-flush strength depends only on the multiset of ranks, so ranks are fed
// one at a time through a transition table over rank multisets (at most seven
// cards, at most four per rank). Flushes are resolved separately from a
// 13-bit suit mask. Partial states can be shared, which is what makes
// board-outer / hand-inner enumeration cheap.

#ifndef LBR_HAND_EVALUATOR_H_
#define LBR_HAND_EVALUATOR_H_

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "lbr/cards.h"

namespace lbr {

class HandEvaluator {
 public:
  using State = uint32_t;
  static constexpr State kEmpty = 0;

  static const HandEvaluator& Get();

  // rank_index is rank() - 2.
  State add(State s, int rank_index) const { return next_[s * 13 + rank_index]; }
  State add(State s, Card c) const { return add(s, c.rank() - 2); }
  // Non-flush value for a state holding five or more ranks.
  uint32_t value(State s) const { return value_[s]; }
  // Best flush or straight flush in a suit mask; 0 if fewer than five bits.
  uint32_t flush_value(uint32_t mask) const { return flush_[mask]; }

  int num_states() const { return static_cast<int>(value_.size()); }

  // Unchecked evaluation of seven distinct cards.
  uint32_t evaluate(std::span<const Card, 7> cards) const;

 private:
  HandEvaluator();

  std::vector<State> next_;
  std::vector<uint32_t> value_;
  std::array<uint32_t, 8192> flush_{};
};

// A complete five-card board prepared for scoring many private hands.
class FullBoard {
 public:
  explicit FullBoard(std::span<const Card> board);

  uint32_t score(Card a, Card b) const {
    const HandEvaluator& ev = *ev_;
    uint32_t v = ev.value(ev.add(ev.add(state_, a), b));
    if (flush_suit_ >= 0) {
      uint32_t mask = flush_mask_;
      if (a.suit() == flush_suit_) mask |= 1u << (a.rank() - 2);
      if (b.suit() == flush_suit_) mask |= 1u << (b.rank() - 2);
      uint32_t f = ev.flush_value(mask);
      if (f > v) v = f;
    }
    return v;
  }

 private:
  const HandEvaluator* ev_;
  HandEvaluator::State state_ = HandEvaluator::kEmpty;
  int flush_suit_ = -1;
  uint32_t flush_mask_ = 0;
};

}  // namespace lbr

#endif  // LBR_HAND_EVALUATOR_H_
