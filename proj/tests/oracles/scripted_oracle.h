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

#ifndef LBR_TESTS_ORACLES_SCRIPTED_ORACLE_H_
#define LBR_TESTS_ORACLES_SCRIPTED_ORACLE_H_

#include <functional>
#include <string>
#include <utility>

#include "lbr/strategy.h"

namespace lbr::testing {

// Strategy given by an arbitrary function of (state, hand).
class ScriptedOracle : public StrategyOracle {
 public:
  using Rule = std::function<ActionDistribution(const PublicState&, HandIndex)>;
  explicit ScriptedOracle(Rule rule) : rule_(std::move(rule)) {}

  std::string name() const override { return "scripted"; }
  QueryResult query(const PublicState& s) override {
    QueryResult q;
    const CardSet board(s.board());
    for (int h = 0; h < kNumHands; ++h) {
      if (!hand_mask(HandIndex(h)).intersects(board)) q.set(HandIndex(h), rule_(s, HandIndex(h)));
    }
    return q;
  }
  Action sample_action(const PublicState& s, HandIndex hand, Rng& rng) override {
    return rule_(s, hand).sample(rng);
  }

 private:
  Rule rule_;
};

}  // namespace lbr::testing

#endif  // LBR_TESTS_ORACLES_SCRIPTED_ORACLE_H_
