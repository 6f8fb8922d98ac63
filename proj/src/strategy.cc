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

#include "lbr/strategy.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "lbr/errors.h"

namespace lbr {

namespace {

constexpr double kSumTolerance = 1e-6;

std::string format_prob(double p) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, end);
}

bool parse_chips(std::string_view s, Chips& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

ActionDistribution ActionDistribution::Pure(Action a) {
  ActionDistribution d;
  d.add(a, 1.0);
  return d;
}

void ActionDistribution::add(Action a, double p) {
  switch (a.kind) {
    case ActionKind::kFold: fold_ += p; return;
    case ActionKind::kCall: call_ += p; return;
    case ActionKind::kRaiseTo: {
      auto it = std::lower_bound(raises_.begin(), raises_.end(), a.amount,
                                 [](const auto& e, Chips v) { return e.first < v; });
      if (it != raises_.end() && it->first == a.amount) {
        it->second += p;
      } else {
        raises_.insert(it, {a.amount, p});
      }
      return;
    }
  }
}

double ActionDistribution::probability(Action a) const {
  switch (a.kind) {
    case ActionKind::kFold: return fold_;
    case ActionKind::kCall: return call_;
    case ActionKind::kRaiseTo: {
      double p = 0.0;
      auto it = std::lower_bound(raises_.begin(), raises_.end(), a.amount,
                                 [](const auto& e, Chips v) { return e.first < v; });
      if (it != raises_.end() && it->first == a.amount) p += it->second;
      if (band_ && a.amount >= band_->lo && a.amount <= band_->hi) {
        p += band_->mass / static_cast<double>(band_->hi - band_->lo + 1);
      }
      return p;
    }
  }
  return 0.0;
}

double ActionDistribution::total() const {
  double t = fold_ + call_;
  for (const auto& [amount, p] : raises_) t += p;
  if (band_) t += band_->mass;
  return t;
}

Action ActionDistribution::sample(Rng& rng) const {
  double u = std::uniform_real_distribution<double>(0.0, total())(rng);
  if ((u -= fold_) < 0.0) return Action::Fold();
  if ((u -= call_) < 0.0) return Action::Call();
  for (const auto& [amount, p] : raises_) {
    if ((u -= p) < 0.0) return Action::RaiseTo(amount);
  }
  if (band_ && band_->mass > 0.0) {
    return Action::RaiseTo(std::uniform_int_distribution<Chips>(band_->lo, band_->hi)(rng));
  }
  // Rounding left u just past the last bucket; take the last non-empty one.
  if (!raises_.empty()) return Action::RaiseTo(raises_.back().first);
  return call_ > 0.0 ? Action::Call() : Action::Fold();
}

void ActionDistribution::validate(const ActionSpace& space) const {
  auto bad = [](const std::string& why) { throw OracleError("malformed distribution: " + why); };
  auto check_prob = [&](double p) {
    if (!std::isfinite(p) || p < 0.0) bad("negative or non-finite probability");
  };
  check_prob(fold_);
  check_prob(call_);
  if (fold_ > 0.0 && !space.can_fold) bad("fold with nothing to call");
  for (const auto& [amount, p] : raises_) {
    check_prob(p);
    if (p > 0.0 && !space.is_legal(Action::RaiseTo(amount))) {
      bad("illegal raise-to " + std::to_string(amount));
    }
  }
  if (band_) {
    check_prob(band_->mass);
    if (band_->mass > 0.0 &&
        (band_->lo > band_->hi || !space.is_legal(Action::RaiseTo(band_->lo)) ||
         !space.is_legal(Action::RaiseTo(band_->hi)))) {
      bad("illegal raise band");
    }
  }
  if (std::abs(total() - 1.0) > kSumTolerance) {
    bad("probabilities sum to " + format_prob(total()));
  }
}

std::string ActionDistribution::to_wire() const {
  std::string out;
  auto emit = [&](const std::string& action, double p) {
    if (p <= 0.0) return;
    if (!out.empty()) out += ' ';
    out += action + ":" + format_prob(p);
  };
  emit("f", fold_);
  emit("c", call_);
  for (const auto& [amount, p] : raises_) emit("r" + std::to_string(amount), p);
  if (band_) {
    emit("r" + std::to_string(band_->lo) + "-" + std::to_string(band_->hi), band_->mass);
  }
  return out;
}

ActionDistribution ActionDistribution::from_wire(std::string_view tokens) {
  ActionDistribution d;
  std::size_t i = 0;
  bool any = false;
  while (i < tokens.size()) {
    if (tokens[i] == ' ') {
      ++i;
      continue;
    }
    std::size_t end = tokens.find(' ', i);
    if (end == std::string_view::npos) end = tokens.size();
    std::string_view tok = tokens.substr(i, end - i);
    auto colon = tok.find(':');
    if (colon == std::string_view::npos) throw ParseError("missing ':' in '" + std::string(tok) + "'", i);
    std::string_view act = tok.substr(0, colon), prob = tok.substr(colon + 1);
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(prob.data(), prob.data() + prob.size(), p);
    if (ec != std::errc() || ptr != prob.data() + prob.size()) {
      throw ParseError("bad probability '" + std::string(prob) + "'", i + colon + 1);
    }
    auto dash = act.find('-');
    if (!act.empty() && act[0] == 'r' && dash != std::string_view::npos) {
      Chips lo = 0, hi = 0;
      if (!parse_chips(act.substr(1, dash - 1), lo) || !parse_chips(act.substr(dash + 1), hi)) {
        throw ParseError("bad raise band '" + std::string(act) + "'", i);
      }
      if (d.band_) throw ParseError("more than one raise band", i);
      d.band_ = RaiseBand{lo, hi, p};
    } else {
      try {
        d.add(parse_action(act), p);
      } catch (const ParseError&) {
        throw ParseError("bad action '" + std::string(act) + "'", i);
      }
    }
    any = true;
    i = end;
  }
  if (!any) throw ParseError("empty distribution");
  return d;
}

QueryResult QueryResult::Uniform(std::span<const Card> board, ActionDistribution dist) {
  QueryResult q;
  q.pool_.push_back(std::move(dist));
  CardSet b(board);
  for (int h = 0; h < kNumHands; ++h) {
    if (!hand_mask(HandIndex(h)).intersects(b)) q.slot_[h] = 0;
  }
  return q;
}

void QueryResult::set(HandIndex h, ActionDistribution dist) {
  if (pool_.empty() || !(pool_.back() == dist)) pool_.push_back(std::move(dist));
  slot_[h.value()] = static_cast<int16_t>(pool_.size() - 1);
}

Likelihoods QueryResult::likelihoods(Action a) const {
  std::vector<double> per_slot(pool_.size());
  for (std::size_t i = 0; i < pool_.size(); ++i) per_slot[i] = pool_[i].probability(a);
  Likelihoods out{};
  for (int h = 0; h < kNumHands; ++h) out[h] = slot_[h] < 0 ? 0.0 : per_slot[slot_[h]];
  return out;
}

Likelihoods QueryResult::fold_likelihoods() const { return likelihoods(Action::Fold()); }

QueryResult averaged_query(StrategyOracle& oracle, const PublicState& s, int samples, Rng& rng) {
  if (samples < 1) throw DomainError("averaged_query: need at least one sample");
  QueryResult q;
  CardSet board(s.board());
  const double w = 1.0 / samples;
  for (int h = 0; h < kNumHands; ++h) {
    HandIndex hand(h);
    if (hand_mask(hand).intersects(board)) continue;
    ActionDistribution d;
    for (int k = 0; k < samples; ++k) d.add(oracle.sample_action(s, hand, rng), w);
    q.set(hand, std::move(d));
  }
  return q;
}

namespace {

// Card-independent strategies defined by a rule over the legal action space.
class RuleOracle : public StrategyOracle {
 public:
  QueryResult query(const PublicState& s) override {
    return QueryResult::Uniform(s.board(), distribution(legal_actions(s)));
  }
  Action sample_action(const PublicState& s, HandIndex, Rng& rng) override {
    return distribution(legal_actions(s)).sample(rng);
  }

 protected:
  virtual ActionDistribution distribution(const ActionSpace& space) const = 0;
};

class AlwaysCall final : public RuleOracle {
 public:
  std::string name() const override { return "always-call"; }

 protected:
  ActionDistribution distribution(const ActionSpace&) const override {
    return ActionDistribution::Pure(Action::Call());
  }
};

class HalfCallHalfRaise final : public RuleOracle {
 public:
  std::string name() const override { return "half-raise"; }

 protected:
  ActionDistribution distribution(const ActionSpace& space) const override {
    if (!space.raise) return ActionDistribution::Pure(Action::Call());
    ActionDistribution d;
    d.add(Action::Call(), 0.5);
    d.set_band({space.raise->min_to, space.raise->max_to, 0.5});
    return d;
  }
};

class RandomLegal final : public RuleOracle {
 public:
  std::string name() const override { return "random-legal"; }

 protected:
  ActionDistribution distribution(const ActionSpace& space) const override {
    const int kinds = 1 + (space.can_fold ? 1 : 0) + (space.raise ? 1 : 0);
    const double p = 1.0 / kinds;
    ActionDistribution d;
    if (space.can_fold) d.add(Action::Fold(), p);
    d.add(Action::Call(), p);
    if (space.raise) d.set_band({space.raise->min_to, space.raise->max_to, p});
    return d;
  }
};

class AlwaysFold final : public RuleOracle {
 public:
  std::string name() const override { return "always-fold"; }

 protected:
  ActionDistribution distribution(const ActionSpace& space) const override {
    return ActionDistribution::Pure(space.can_fold ? Action::Fold() : Action::Call());
  }
};

}  // namespace

std::unique_ptr<StrategyOracle> chump_always_call() { return std::make_unique<AlwaysCall>(); }
std::unique_ptr<StrategyOracle> chump_half_call_half_raise() {
  return std::make_unique<HalfCallHalfRaise>();
}
std::unique_ptr<StrategyOracle> chump_random_legal() { return std::make_unique<RandomLegal>(); }
std::unique_ptr<StrategyOracle> chump_always_fold() { return std::make_unique<AlwaysFold>(); }

std::unique_ptr<StrategyOracle> make_builtin_oracle(const std::string& name) {
  if (name == "always-call") return chump_always_call();
  if (name == "half-raise") return chump_half_call_half_raise();
  if (name == "random-legal") return chump_random_legal();
  if (name == "always-fold") return chump_always_fold();
  return nullptr;
}

}  // namespace lbr
