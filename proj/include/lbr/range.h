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

// The opponent's range: a distribution over the 1326 private hands, tracked
// by Bayes' rule as actions and board cards are observed.

#ifndef LBR_RANGE_H_
#define LBR_RANGE_H_

#include <array>
#include <optional>
#include <span>

#include "lbr/cards.h"
#include "lbr/engine.h"

namespace lbr {

class PreflopEquityTable;
struct FoldSplit;

// sigma(s, h, a) for one state and action, per hand. Each entry in [0, 1].
using Likelihoods = std::array<double, kNumHands>;

class Range {
 public:
  double operator[](HandIndex h) const { return prob_[h.value()]; }
  std::span<const double, kNumHands> probabilities() const { return prob_; }
  // Cards no live hand may contain (LBR's hole cards and the board).
  CardSet dead() const { return dead_; }
  int support_size() const;
  double total() const;

 private:
  friend Range uniform_range(CardSet);
  friend Range bayes_update(const Range&, const Likelihoods&);
  friend Range condition_on_board(const Range&, std::span<const Card>);
  friend FoldSplit fold_split(const Range&, const Likelihoods&);
  friend Range range_from_weights(std::span<const double, kNumHands>, CardSet);

  std::array<double, kNumHands> prob_{};
  CardSet dead_;
};

Range uniform_range(CardSet dead);
// Throws DegenerateRangeError when the product has no mass.
Range bayes_update(const Range& prior, const Likelihoods& likelihoods);
// Zeroes hands touching `cards` and adds them to the dead set.
Range condition_on_board(const Range& prior, std::span<const Card> cards);
// Normalized copy of arbitrary non-negative weights; entries on dead cards
// must be zero.
Range range_from_weights(std::span<const double, kNumHands> weights, CardSet dead);

struct FoldSplit {
  double fold_probability = 0.0;
  // Range of the hands that continue; absent when fold_probability is 1.
  std::optional<Range> continuing;
};
FoldSplit fold_split(const Range& range, const Likelihoods& fold_likelihoods);

// Mean probability (win + half a tie) that `hero` beats a hand drawn from
// `range` once the board is completed. Completions are enumerated jointly
// with the opponent hand; preflop uses the precomputed table.
double wp_rollout(HandIndex hero, const Range& range, std::span<const Card> board,
                  const PreflopEquityTable* preflop);
inline double wp_rollout(HandIndex hero, const Range& range, const PublicState& s,
                         const PreflopEquityTable* preflop) {
  return wp_rollout(hero, range, s.board(), preflop);
}

}  // namespace lbr

#endif  // LBR_RANGE_H_
