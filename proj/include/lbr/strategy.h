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

// Strategies under evaluation, seen as oracles answering per-hand action
// distributions for public states.

#ifndef LBR_STRATEGY_H_
#define LBR_STRATEGY_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lbr/cards.h"
#include "lbr/engine.h"
#include "lbr/range.h"

namespace lbr {

using Rng = std::mt19937_64;

// Probability mass spread uniformly over the integer raise-to amounts
// lo..hi inclusive.
struct RaiseBand {
  Chips lo = 0;
  Chips hi = 0;
  double mass = 0.0;
  bool operator==(const RaiseBand&) const = default;
};

class ActionDistribution {
 public:
  ActionDistribution() = default;
  static ActionDistribution Pure(Action a);

  void add(Action a, double p);
  void set_band(RaiseBand band) { band_ = band; }

  double fold() const { return fold_; }
  double call() const { return call_; }
  const std::vector<std::pair<Chips, double>>& raises() const { return raises_; }
  const std::optional<RaiseBand>& band() const { return band_; }

  double probability(Action a) const;
  double total() const;
  Action sample(Rng& rng) const;
  // Throws OracleError unless every action is legal in `space` and the
  // probabilities are non-negative and sum to one within 1e-6.
  void validate(const ActionSpace& space) const;

  // Space-separated "<action>:<prob>" tokens; a band is written r<lo>-<hi>.
  std::string to_wire() const;
  static ActionDistribution from_wire(std::string_view tokens);

  bool operator==(const ActionDistribution&) const = default;

 private:
  double fold_ = 0.0;
  double call_ = 0.0;
  std::vector<std::pair<Chips, double>> raises_;  // sorted by amount
  std::optional<RaiseBand> band_;
};

// Per-hand distributions for one public state. Hands that share a card with
// the board are absent.
class QueryResult {
 public:
  QueryResult() { slot_.fill(-1); }
  // Every hand disjoint from `board` gets `dist`.
  static QueryResult Uniform(std::span<const Card> board, ActionDistribution dist);

  void set(HandIndex h, ActionDistribution dist);
  const ActionDistribution* at(HandIndex h) const {
    int s = slot_[h.value()];
    return s < 0 ? nullptr : &pool_[s];
  }
  bool card_independent() const { return pool_.size() <= 1; }
  // sigma(s, h, a) per hand; absent hands get 0.
  Likelihoods likelihoods(Action a) const;
  Likelihoods fold_likelihoods() const;

 private:
  std::vector<ActionDistribution> pool_;
  std::array<int16_t, kNumHands> slot_;
};

class StrategyOracle {
 public:
  virtual ~StrategyOracle() = default;
  virtual std::string name() const = 0;
  // Distributions for the player to act in non-terminal `s`.
  virtual QueryResult query(const PublicState& s) = 0;
  // One action for the player to act holding `hand`.
  virtual Action sample_action(const PublicState& s, HandIndex hand, Rng& rng) = 0;
};

// Empirical distributions from `samples` independent sample_action draws per
// live hand.
QueryResult averaged_query(StrategyOracle& oracle, const PublicState& s, int samples, Rng& rng);

std::unique_ptr<StrategyOracle> chump_always_call();
std::unique_ptr<StrategyOracle> chump_half_call_half_raise();
std::unique_ptr<StrategyOracle> chump_random_legal();
// Folds whenever folding is legal, otherwise checks.
std::unique_ptr<StrategyOracle> chump_always_fold();

// "always-call", "half-raise", "random-legal", "always-fold"; nullptr if unknown.
std::unique_ptr<StrategyOracle> make_builtin_oracle(const std::string& name);

// How LBR observes the opponent: exact queries, or averaged samples when the
// strategy can only be sampled.
class StrategyModel {
 public:
  explicit StrategyModel(StrategyOracle& oracle, int samples = 0, Rng* rng = nullptr)
      : oracle_(&oracle), samples_(samples), rng_(rng) {}

  QueryResult observe(const PublicState& s) const {
    return samples_ > 0 ? averaged_query(*oracle_, s, samples_, *rng_) : oracle_->query(s);
  }
  StrategyOracle& oracle() const { return *oracle_; }
  int samples() const { return samples_; }

 private:
  StrategyOracle* oracle_;
  int samples_;
  Rng* rng_;
};

}  // namespace lbr

#endif  // LBR_STRATEGY_H_
