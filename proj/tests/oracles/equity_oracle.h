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

// Reference equity computations for tests: a slow enumerator built on the
// naive ranker and a plain Monte Carlo sampler.

#ifndef LBR_TESTS_ORACLES_EQUITY_ORACLE_H_
#define LBR_TESTS_ORACLES_EQUITY_ORACLE_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "lbr/cards.h"
#include "lbr/range.h"
#include "oracles/naive_evaluator.h"

namespace lbr::oracle {

inline double showdown_score(uint32_t mine, uint32_t theirs) {
  return mine > theirs ? 1.0 : mine == theirs ? 0.5 : 0.0;
}

// Range-weighted mean over opponent hands of the mean over every board
// completion consistent with both hands.
inline double enumerate_equity(HandIndex hero, const Range& range, std::span<const Card> board) {
  const CardSet hero_set = hand_mask(hero);
  const CardSet board_set(board);
  auto [h1, h2] = hand_cards(hero);
  double acc = 0.0, mass = 0.0;
  for (int h = 0; h < kNumHands; ++h) {
    const double w = range[HandIndex(h)];
    if (w == 0.0) continue;
    const CardSet opp = hand_mask(HandIndex(h));
    auto [o1, o2] = hand_cards(HandIndex(h));
    std::vector<Card> rest;
    for (int c = 0; c < kNumCards; ++c) {
      if (!hero_set.contains(Card(c)) && !opp.contains(Card(c)) && !board_set.contains(Card(c))) {
        rest.emplace_back(c);
      }
    }
    const std::size_t missing = 5 - board.size();
    std::vector<Card> full(board.begin(), board.end());
    full.resize(5);
    double sum = 0.0;
    long count = 0;
    auto score = [&] {
      std::vector<Card> mine(full), theirs(full);
      mine.push_back(h1);
      mine.push_back(h2);
      theirs.push_back(o1);
      theirs.push_back(o2);
      sum += showdown_score(naive_rank7(mine), naive_rank7(theirs));
      ++count;
    };
    if (missing == 0) {
      score();
    } else if (missing == 1) {
      for (Card c : rest) {
        full[4] = c;
        score();
      }
    } else if (missing == 2) {
      for (std::size_t i = 0; i < rest.size(); ++i) {
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
          full[3] = rest[i];
          full[4] = rest[j];
          score();
        }
      }
    } else {
      return std::nan("");
    }
    acc += w * sum / static_cast<double>(count);
    mass += w;
  }
  return acc / mass;
}

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Draws an opponent hand from `range` and a uniform completion per sample.
// `rank7` scores a 7-card set; any correct evaluator will do.
template <typename Rank7>
McEstimate sample_equity(HandIndex hero, const Range& range, std::span<const Card> board,
                         long samples, std::mt19937_64& rng, Rank7 rank7) {
  std::vector<double> weights(range.probabilities().begin(), range.probabilities().end());
  std::discrete_distribution<int> pick_hand(weights.begin(), weights.end());
  std::uniform_int_distribution<int> pick_card(0, kNumCards - 1);
  const CardSet fixed = hand_mask(hero) | CardSet(board);
  auto [h1, h2] = hand_cards(hero);
  double sum = 0.0, sum_sq = 0.0;
  std::array<Card, 7> mine, theirs;
  std::copy(board.begin(), board.end(), mine.begin());
  for (long i = 0; i < samples; ++i) {
    const HandIndex opp(pick_hand(rng));
    auto [o1, o2] = hand_cards(opp);
    CardSet used = fixed | hand_mask(opp);
    for (std::size_t k = board.size(); k < 5; ++k) {
      Card c;
      do {
        c = Card(pick_card(rng));
      } while (used.contains(c));
      used.insert(c);
      mine[k] = c;
    }
    theirs = mine;
    mine[5] = h1;
    mine[6] = h2;
    theirs[5] = o1;
    theirs[6] = o2;
    const double x = showdown_score(rank7(mine), rank7(theirs));
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

}  // namespace lbr::oracle

#endif  // LBR_TESTS_ORACLES_EQUITY_ORACLE_H_
