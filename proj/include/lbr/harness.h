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

// Match runner: plays LBR (player 0) against an oracle (player 1) and turns
// the outcomes into a winnings estimate in milli-big-blinds per hand.
//
// The estimator's unit is a pair of hands. With duplicate dealing, a pair is
// one deal played twice with the players swapping seats (cards stay with the
// seat). Without it, a pair is two independent deals, one per seat.

#ifndef LBR_HARNESS_H_
#define LBR_HARNESS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lbr/engine.h"
#include "lbr/local_best_response.h"
#include "lbr/range.h"
#include "lbr/strategy.h"

namespace lbr {

class PreflopEquityTable;

struct VarianceReduction {
  bool duplicate = true;
  bool imaginary = true;
};

struct MatchConfig {
  GameRules rules;
  LbrConfig lbr;
  std::string opponent = "always-call";
  int64_t pairs = 1000;
  uint64_t seed = 0;
  int sampled_queries = 0;  // 0: exact queries
  VarianceReduction variance;
  int threads = 1;
  double max_discard_rate = 0.01;

  void validate() const;
};

// Cards bound to seats: the first seat posts the big blind.
struct Deal {
  HandIndex first_hand;
  HandIndex second_hand;
  std::array<Card, 5> board{};
};
Deal random_deal(Rng& rng);

// LBR action counts indexed [round - 1][fold, call, raise].
using ActionHistogram = std::array<std::array<int64_t, 3>, 4>;

struct HandRecord {
  Deal deal;
  bool lbr_first = true;
  HandIndex lbr_hand;
  HandIndex opponent_hand;
  std::string transcript;
  std::optional<PublicState> terminal;
  std::optional<Range> terminal_range;
  Chips winnings = 0;    // LBR's actual result
  double scored = 0.0;   // chips, imaginary expectation when enabled
  bool discarded = false;
  std::string diagnostic;
  ActionHistogram lbr_actions{};
};

HandRecord play_hand(const Deal& deal, bool lbr_first, const MatchConfig& cfg,
                     const PreflopEquityTable* preflop, StrategyOracle& oracle, Rng& rng);

// Expected chips for LBR over the opponent's posterior at the end of the
// hand. Fold outcomes do not depend on the hidden hand and are returned
// unchanged.
double imaginary_value(const HandRecord& record, const Range& terminal_range);

std::pair<HandRecord, HandRecord> play_duplicate_pair(const Deal& deal, const MatchConfig& cfg,
                                                      const PreflopEquityTable* preflop,
                                                      StrategyOracle& oracle, Rng& first_seat_rng,
                                                      Rng& second_seat_rng);

struct EvalReport {
  double mean_mbb = 0.0;
  double half_width_mbb = 0.0;  // 95%
  double pair_std_mbb = 0.0;
  double raw_mean_mbb = 0.0;    // actual outcomes, ignoring imaginary scoring
  int64_t pairs = 0;            // pairs that count
  int64_t discarded_pairs = 0;
  bool discard_limit_exceeded = false;
  ActionHistogram lbr_actions{};
  std::vector<std::string> diagnostics;  // first few discard reasons
  // Scored value of both hands of each counted pair, in mBB.
  std::vector<std::array<double, 2>> hand_values_mbb;

  std::string to_text(const MatchConfig& cfg) const;
  std::string to_json(const MatchConfig& cfg) const;
};

using OracleFactory = std::function<std::unique_ptr<StrategyOracle>()>;

// Runs cfg.pairs pairs on cfg.threads workers, one oracle per worker. Pair i
// draws every random number from streams seeded by (cfg.seed, i), so the
// report does not depend on the thread count.
EvalReport evaluate(const MatchConfig& cfg, const PreflopEquityTable* preflop,
                    const OracleFactory& make_oracle);

// mean, 1.96 * sample std / sqrt(n)
std::pair<double, double> mean_and_half_width(const std::vector<double>& values);

uint64_t derive_seed(uint64_t seed, uint64_t index, uint64_t stream);

}  // namespace lbr

#endif  // LBR_HARNESS_H_
