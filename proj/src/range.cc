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

#include "lbr/range.h"

#include <cmath>
#include <vector>

#include "lbr/errors.h"
#include "lbr/hand_evaluator.h"
#include "lbr/preflop_table.h"

namespace lbr {

namespace {

const std::array<CardSet, kNumHands>& hand_masks() {
  static const auto masks = [] {
    std::array<CardSet, kNumHands> m;
    for (int h = 0; h < kNumHands; ++h) m[h] = hand_mask(HandIndex(h));
    return m;
  }();
  return masks;
}

// Scales `p` to sum to one; throws when there is nothing to scale.
void normalize(std::array<double, kNumHands>& p, const char* what) {
  double sum = 0.0;
  for (double x : p) sum += x;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw DegenerateRangeError(std::string(what) + ": no probability mass left");
  }
  const double inv = 1.0 / sum;
  for (double& x : p) x *= inv;
}

struct LiveHand {
  Card c1, c2;
  CardSet mask;
  double weight;
};

}  // namespace

int Range::support_size() const {
  int n = 0;
  for (double x : prob_) n += x > 0.0;
  return n;
}

double Range::total() const {
  double sum = 0.0;
  for (double x : prob_) sum += x;
  return sum;
}

Range uniform_range(CardSet dead) {
  if (dead.size() >= 51) throw DomainError("uniform_range: too many dead cards");
  Range r;
  r.dead_ = dead;
  const auto& masks = hand_masks();
  for (int h = 0; h < kNumHands; ++h) r.prob_[h] = masks[h].intersects(dead) ? 0.0 : 1.0;
  normalize(r.prob_, "uniform_range");
  return r;
}

Range range_from_weights(std::span<const double, kNumHands> weights, CardSet dead) {
  Range r;
  r.dead_ = dead;
  const auto& masks = hand_masks();
  for (int h = 0; h < kNumHands; ++h) {
    if (!(weights[h] >= 0.0) || !std::isfinite(weights[h])) {
      throw DomainError("range_from_weights: weights must be finite and non-negative");
    }
    if (weights[h] > 0.0 && masks[h].intersects(dead)) {
      throw DomainError("range_from_weights: weight on hand " + format_hand(HandIndex(h)) +
                        " which holds a dead card");
    }
    r.prob_[h] = weights[h];
  }
  normalize(r.prob_, "range_from_weights");
  return r;
}

Range bayes_update(const Range& prior, const Likelihoods& likelihoods) {
  Range r = prior;
  for (int h = 0; h < kNumHands; ++h) r.prob_[h] = prior.prob_[h] * likelihoods[h];
  normalize(r.prob_, "bayes_update");
  return r;
}

Range condition_on_board(const Range& prior, std::span<const Card> cards) {
  CardSet fresh;
  for (Card c : cards) {
    if (prior.dead_.contains(c) || fresh.contains(c)) {
      throw DomainError("condition_on_board: card " + format_card(c) + " is already dead");
    }
    fresh.insert(c);
  }
  Range r = prior;
  r.dead_ = prior.dead_ | fresh;
  const auto& masks = hand_masks();
  for (int h = 0; h < kNumHands; ++h) {
    if (masks[h].intersects(fresh)) r.prob_[h] = 0.0;
  }
  normalize(r.prob_, "condition_on_board");
  return r;
}

FoldSplit fold_split(const Range& range, const Likelihoods& fold_likelihoods) {
  FoldSplit out;
  Range rest = range;
  double fp = 0.0, cont = 0.0;
  for (int h = 0; h < kNumHands; ++h) {
    const double p = range.prob_[h];
    fp += p * fold_likelihoods[h];
    rest.prob_[h] = p * (1.0 - fold_likelihoods[h]);
    cont += rest.prob_[h];
  }
  out.fold_probability = fp;
  if (cont > 0.0) {
    normalize(rest.prob_, "fold_split");
    out.continuing = rest;
  } else {
    out.fold_probability = 1.0;
  }
  return out;
}

double wp_rollout(HandIndex hero, const Range& range, std::span<const Card> board,
                  const PreflopEquityTable* preflop) {
  const std::size_t nb = board.size();
  if (nb != 0 && nb != 3 && nb != 4 && nb != 5) {
    throw DomainError("wp_rollout: board must have 0, 3, 4 or 5 cards");
  }
  const CardSet board_set(board);
  if (board_set.size() != static_cast<int>(nb)) throw DomainError("wp_rollout: duplicate board card");
  const CardSet hero_set = hand_mask(hero);
  if (hero_set.intersects(board_set)) throw DomainError("wp_rollout: hero hand overlaps board");
  const CardSet dead = hero_set | board_set;

  const auto& masks = hand_masks();
  std::vector<LiveHand> live;
  live.reserve(kNumHands);
  double mass = 0.0;
  for (int h = 0; h < kNumHands; ++h) {
    const double w = range[HandIndex(h)];
    if (w <= 0.0) continue;
    if (masks[h].intersects(dead)) {
      throw DomainError("wp_rollout: range puts weight on " + format_hand(HandIndex(h)) +
                        " which conflicts with dead cards");
    }
    auto [c1, c2] = hand_cards(HandIndex(h));
    live.push_back({c1, c2, masks[h], w});
    mass += w;
  }
  if (live.empty()) throw DegenerateRangeError("wp_rollout: empty range");

  if (nb == 0) {
    if (preflop == nullptr) throw TableError("wp_rollout: preflop rollout needs the equity table");
    double acc = 0.0;
    for (int h = 0; h < kNumHands; ++h) {
      const double w = range[HandIndex(h)];
      if (w > 0.0) acc += w * preflop->equity(hero, HandIndex(h));
    }
    return acc / mass;
  }

  auto [h1, h2] = hand_cards(hero);
  std::array<Card, 5> full{};
  std::copy(board.begin(), board.end(), full.begin());
  // Points are 2 per win and 1 per tie.
  auto score_board = [&](CardSet extra) {
    FullBoard fb(full);
    const uint32_t mine = fb.score(h1, h2);
    double acc = 0.0;
    for (const LiveHand& l : live) {
      if (l.mask.intersects(extra)) continue;
      const uint32_t theirs = fb.score(l.c1, l.c2);
      acc += l.weight * (mine > theirs ? 2.0 : (mine == theirs ? 1.0 : 0.0));
    }
    return acc;
  };

  std::vector<Card> deck;
  for (int c = 0; c < kNumCards; ++c) {
    if (!dead.contains(Card(c))) deck.push_back(Card(c));
  }
  const int n = static_cast<int>(deck.size());
  double points = 0.0;
  double completions = 1.0;  // boards per opponent hand
  if (nb == 5) {
    points = score_board(CardSet());
  } else if (nb == 4) {
    for (int i = 0; i < n; ++i) {
      full[4] = deck[i];
      points += score_board(CardSet{deck[i]});
    }
    completions = n - 2;
  } else {
    for (int i = 0; i < n; ++i) {
      full[3] = deck[i];
      for (int j = i + 1; j < n; ++j) {
        full[4] = deck[j];
        points += score_board(CardSet{deck[i], deck[j]});
      }
    }
    completions = (n - 2) * (n - 3) / 2.0;
  }
  return points / (2.0 * completions * mass);
}

}  // namespace lbr
