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

#include "lbr/local_best_response.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "lbr/errors.h"
#include "lbr/preflop_table.h"

namespace lbr {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(sep, start);
    out.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

int parse_round(std::string_view s) {
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '4') return s[0] - '0';
  throw ParseError("bad round '" + std::string(s) + "' (expected 1..4)");
}

// Likelihoods equal on every hand the range supports, so conditioning on
// them leaves the range unchanged.
bool flat_on_support(const Range& range, const Likelihoods& l) {
  double lo = 2.0, hi = -1.0;
  auto p = range.probabilities();
  for (int h = 0; h < kNumHands; ++h) {
    if (p[h] > 0.0) {
      lo = std::min(lo, l[h]);
      hi = std::max(hi, l[h]);
    }
  }
  return lo == hi;
}

}  // namespace

BetSet BetSet::FoldCall() { return {"fc", {}, false}; }

BetSet BetSet::FoldCallPotAllIn() { return {"fcpa", {1.0}, true}; }

BetSet BetSet::FiftySix() {
  BetSet b{"56bets", {}, true};
  for (int k = 0; k <= 54; ++k) b.pot_fractions.push_back(0.05 * std::pow(1.15, k));
  return b;
}

BetSet BetSet::Custom(std::vector<double> fractions, bool all_in) {
  for (double f : fractions) {
    if (!(f > 0.0) || !std::isfinite(f)) throw ParseError("pot fractions must be positive");
  }
  std::sort(fractions.begin(), fractions.end());
  fractions.erase(std::unique(fractions.begin(), fractions.end()), fractions.end());
  return {"custom", std::move(fractions), all_in};
}

BetSet BetSet::Parse(std::string_view text) {
  if (text == "fc") return FoldCall();
  if (text == "fcpa") return FoldCallPotAllIn();
  if (text == "56bets") return FiftySix();
  constexpr std::string_view kPrefix = "custom:";
  if (text.substr(0, kPrefix.size()) != kPrefix) {
    throw ParseError("unknown bet set '" + std::string(text) + "'");
  }
  std::vector<double> fractions;
  bool all_in = false;
  std::string_view body = text.substr(kPrefix.size());
  if (body.empty()) return Custom({}, false);
  for (std::string_view tok : split(body, ',')) {
    if (tok == "allin" || tok == "all-in") {
      all_in = true;
      continue;
    }
    double f = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), f);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("bad pot fraction '" + std::string(tok) + "'");
    }
    fractions.push_back(f);
  }
  return Custom(std::move(fractions), all_in);
}

ActiveRounds ActiveRounds::Parse(std::string_view text) {
  uint8_t mask = 0;
  for (std::string_view part : split(text, ',')) {
    auto dash = part.find('-');
    int lo, hi;
    if (dash == std::string_view::npos) {
      lo = hi = parse_round(part);
    } else {
      lo = parse_round(part.substr(0, dash));
      hi = parse_round(part.substr(dash + 1));
    }
    if (lo > hi) throw ParseError("empty round span '" + std::string(part) + "'");
    for (int r = lo; r <= hi; ++r) mask |= static_cast<uint8_t>(1u << (r - 1));
  }
  if (mask == 0) throw ParseError("no active rounds");
  return ActiveRounds(mask);
}

std::string ActiveRounds::to_string() const {
  std::string out;
  for (int r = 1; r <= 4;) {
    if (!contains(r)) {
      ++r;
      continue;
    }
    int end = r;
    while (end < 4 && contains(end + 1)) ++end;
    if (!out.empty()) out += ',';
    out += std::to_string(r);
    if (end > r) out += "-" + std::to_string(end);
    r = end + 1;
  }
  return out;
}

Chips raise_by_for_fraction(double fraction, Chips pot_after_call, Chips min_by, Chips max_by) {
  Chips by = std::llround(fraction * static_cast<double>(pot_after_call));
  return std::clamp(by, min_by, max_by);
}

std::vector<Chips> considered_bets(const LbrConfig& cfg, const PublicState& s) {
  ActionSpace space = legal_actions(s);
  std::vector<Chips> out;
  if (!space.raise) return out;
  const Chips mine = s.contribution(s.to_act());
  const Chips asked = space.call_amount;
  const Chips min_by = space.raise->min_to - mine - asked;
  const Chips max_by = space.raise->max_to - mine - asked;
  for (double f : cfg.bets.pot_fractions) {
    out.push_back(raise_by_for_fraction(f, s.pot() + asked, min_by, max_by));
  }
  if (cfg.bets.include_all_in) out.push_back(max_by);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double utility_call(double wp, double pot, double asked) {
  return wp * pot - (1.0 - wp) * asked;
}

double utility_raise(double fp, double wp_after, double pot, double asked, double raise_by) {
  return fp * pot +
         (1.0 - fp) * (wp_after * (pot + raise_by) - (1.0 - wp_after) * (asked + raise_by));
}

LbrDecision decide(const Range& range, const PublicState& s, HandIndex hand,
                   const LbrConfig& cfg, const StrategyModel& opponent,
                   const PreflopEquityTable* preflop) {
  LbrDecision d;
  d.action = Action::Call();
  if (!cfg.active_rounds.contains(s.round())) return d;

  const ActionSpace space = legal_actions(s);
  const std::vector<Chips> bets = considered_bets(cfg, s);
  const double asked = static_cast<double>(space.call_amount);
  const double pot = static_cast<double>(s.pot());
  if (bets.empty() && space.call_amount == 0) return d;

  d.rolled_out = true;
  d.wp = wp_rollout(hand, range, s, preflop);
  d.scored.push_back({Action::Call(), utility_call(d.wp, pot, asked), 0.0, d.wp});

  const Chips mine = s.contribution(s.to_act());
  for (Chips by : bets) {
    const Action raise = Action::RaiseTo(mine + space.call_amount + by);
    const PublicState next = apply_action(s, raise);
    const Likelihoods folds = opponent.observe(next).fold_likelihoods();
    FoldSplit split = fold_split(range, folds);
    ScoredAction sa{raise, 0.0, split.fold_probability, 0.0};
    if (!split.continuing) {
      sa.utility = pot;
    } else {
      sa.wp = flat_on_support(range, folds) ? d.wp
                                            : wp_rollout(hand, *split.continuing, s, preflop);
      sa.utility = utility_raise(split.fold_probability, sa.wp, pot, asked,
                                 static_cast<double>(by));
    }
    d.scored.push_back(sa);
  }

  const ScoredAction* best = &d.scored.front();
  for (const ScoredAction& sa : d.scored) {
    if (sa.utility > best->utility) best = &sa;
  }
  if (space.can_fold && !(best->utility > 0.0)) {
    d.action = Action::Fold();
  } else {
    d.action = best->action;
  }
  return d;
}

}  // namespace lbr
