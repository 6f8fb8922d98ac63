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

// Local best response: a greedy one-action lookahead against a known
// strategy. Each decision scores check/call and a set of candidate raises
// against the tracked opponent range, assuming the hand is checked down
// after the action unless the opponent folds to it immediately. Utilities
// are in chips relative to folding now.

#ifndef LBR_LOCAL_BEST_RESPONSE_H_
#define LBR_LOCAL_BEST_RESPONSE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lbr/engine.h"
#include "lbr/range.h"
#include "lbr/strategy.h"

namespace lbr {

class PreflopEquityTable;

struct BetSet {
  std::string name;                 // fc, fcpa, 56bets or custom
  std::vector<double> pot_fractions;  // strictly positive, ascending
  bool include_all_in = false;

  static BetSet FoldCall();
  static BetSet FoldCallPotAllIn();
  // All-in plus 0.05 * 1.15^k for k = 0..54.
  static BetSet FiftySix();
  static BetSet Custom(std::vector<double> fractions, bool all_in);
  // "fc", "fcpa", "56bets", "custom:<f1>,<f2>,..." where a fraction may be
  // written "allin". Throws ParseError.
  static BetSet Parse(std::string_view text);
};

// Rounds 1..4 as a bit mask (bit r-1 set when LBR decides in round r).
class ActiveRounds {
 public:
  constexpr ActiveRounds() = default;
  constexpr explicit ActiveRounds(uint8_t mask) : mask_(mask) {}
  static constexpr ActiveRounds All() { return ActiveRounds(0xF); }
  // "1-4", "3-4", "4", "1,3-4". Throws ParseError.
  static ActiveRounds Parse(std::string_view text);

  bool contains(int round) const { return round >= 1 && round <= 4 && (mask_ >> (round - 1) & 1); }
  uint8_t mask() const { return mask_; }
  std::string to_string() const;

 private:
  uint8_t mask_ = 0;
};

struct LbrConfig {
  BetSet bets = BetSet::FoldCall();
  ActiveRounds active_rounds = ActiveRounds::All();
};

// Raise-by amount for one pot fraction, clamped to [min_by, max_by].
Chips raise_by_for_fraction(double fraction, Chips pot_after_call, Chips min_by, Chips max_by);

// Candidate raise-by amounts (beyond the call) for the player to act,
// ascending and distinct; empty when raising is illegal.
std::vector<Chips> considered_bets(const LbrConfig& cfg, const PublicState& s);

double utility_call(double wp, double pot, double asked);
double utility_raise(double fp, double wp_after, double pot, double asked, double raise_by);

struct ScoredAction {
  Action action;
  double utility = 0.0;
  double fold_probability = 0.0;
  double wp = 0.0;
};

struct LbrDecision {
  Action action;
  double wp = 0.0;
  bool rolled_out = false;          // false for passive rounds and free checks
  std::vector<ScoredAction> scored;  // call first, then raises ascending
};

// Throws whatever the oracle throws, and DegenerateRangeError when the
// continuing range after a raise is empty while the fold probability is
// below one.
LbrDecision decide(const Range& range, const PublicState& s, HandIndex hand,
                   const LbrConfig& cfg, const StrategyModel& opponent,
                   const PreflopEquityTable* preflop);

inline Action choose_action(const Range& range, const PublicState& s, HandIndex hand,
                            const LbrConfig& cfg, const StrategyModel& opponent,
                            const PreflopEquityTable* preflop) {
  return decide(range, s, hand, cfg, opponent, preflop).action;
}

}  // namespace lbr

#endif  // LBR_LOCAL_BEST_RESPONSE_H_
