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

#include "lbr/selfcheck.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lbr/cards.h"
#include "lbr/engine.h"
#include "lbr/errors.h"
#include "lbr/harness.h"
#include "lbr/local_best_response.h"
#include "lbr/preflop_table.h"
#include "lbr/range.h"
#include "lbr/strategy.h"

namespace lbr {

namespace {

const char* const kChumps[] = {"always-call", "half-raise", "random-legal", "always-fold"};

// Thrown by a check body to fail with a message.
struct CheckFailure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure{what};
}

double range_sum(const Range& r) {
  double t = 0.0;
  for (double p : r.probabilities()) {
    require(p >= 0.0, "negative range entry");
    t += p;
  }
  return t;
}

void require_normalized(const Range& r, const std::string& where) {
  require(std::abs(range_sum(r) - 1.0) <= 1e-9, "range not normalized after " + where);
  for (int h = 0; h < kNumHands; ++h) {
    if (r[HandIndex(h)] > 0.0) {
      require(!hand_mask(HandIndex(h)).intersects(r.dead()), "mass on dead cards after " + where);
    }
  }
}

std::vector<Card> shuffled_deck(Rng& rng) {
  std::vector<Card> deck;
  for (int c = 0; c < kNumCards; ++c) deck.emplace_back(c);
  std::shuffle(deck.begin(), deck.end(), rng);
  return deck;
}

Action random_legal_action(const ActionSpace& space, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 9);
  int k = pick(rng);
  if (space.can_fold && k == 0) return Action::Fold();
  if (space.raise && k >= 6) {
    const RaiseBounds b = *space.raise;
    // Mostly small raises so hands reach later rounds.
    if (k <= 8) {
      Chips hi = std::min(b.max_to, b.min_to * 3);
      return Action::RaiseTo(std::uniform_int_distribution<Chips>(b.min_to, hi)(rng));
    }
    return Action::RaiseTo(std::uniform_int_distribution<Chips>(b.min_to, b.max_to)(rng));
  }
  return Action::Call();
}

// Random reachable state with a player to act, plus the cards used.
struct FuzzState {
  PublicState state;
  std::vector<Card> deck;  // [0,2) first player, [2,4) second, [4,9) board
};

FuzzState random_decision_state(const GameRules& rules, Rng& rng, int min_round) {
  while (true) {
    FuzzState f{initial_state(rules, static_cast<int>(rng() & 1)), shuffled_deck(rng)};
    std::size_t dealt = 0;
    const int stop_after = std::uniform_int_distribution<int>(0, 8)(rng);
    int steps = 0;
    while (!f.state.is_terminal()) {
      if (f.state.awaiting_board()) {
        const auto n = static_cast<std::size_t>(f.state.pending_board_cards());
        f.state = deal_board(f.state, std::span<const Card>(f.deck.data() + 4 + dealt, n));
        dealt += n;
        continue;
      }
      if (f.state.round() >= min_round && steps >= stop_after) return f;
      f.state = apply_action(f.state, random_legal_action(legal_actions(f.state), rng));
      ++steps;
    }
  }
}

HandIndex seat_hand(const FuzzState& f, int player) {
  const int first = f.state.first_player();
  const std::size_t base = player == first ? 0 : 2;
  return hand_index(f.deck[base], f.deck[base + 1]);
}

// Wilson-Hilferty upper tail of a chi-square statistic as a z-score.
double chi_square_z(double stat, int dof) {
  const double k = dof;
  return (std::cbrt(stat / k) - (1.0 - 2.0 / (9.0 * k))) / std::sqrt(2.0 / (9.0 * k));
}

void check_hand_index(const SelfcheckOptions&) {
  std::vector<int> seen(kNumHands, 0);
  for (int a = 0; a < kNumCards; ++a) {
    for (int b = a + 1; b < kNumCards; ++b) {
      const HandIndex h = hand_index(Card(a), Card(b));
      require(h.value() >= 0 && h.value() < kNumHands, "index out of range");
      ++seen[h.value()];
      auto [x, y] = hand_cards(h);
      require(CardSet{x, y} == CardSet{Card(a), Card(b)}, "hand_cards does not invert");
    }
  }
  for (int v : seen) require(v == 1, "index hit more than once");
}

void check_evaluator_order(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 1, 0));
  for (int i = 0; i < 100000; ++i) {
    HandRank r[3];
    for (auto& x : r) {
      auto deck = shuffled_deck(rng);
      std::array<Card, 7> seven;
      std::copy_n(deck.begin(), 7, seven.begin());
      x = evaluate7(seven);
      std::shuffle(seven.begin(), seven.end(), rng);
      require(evaluate7(seven) == x, "evaluate7 depends on card order");
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        require((r[a] < r[b]) + (r[b] < r[a]) + (r[a] == r[b]) == 1, "order not trichotomous");
        for (int c = 0; c < 3; ++c) {
          if (r[a] < r[b] && r[b] < r[c]) require(r[a] < r[c], "order not transitive");
        }
      }
    }
  }
}

void check_range_normalization(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 2, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    auto deck = shuffled_deck(rng);
    Range r = uniform_range(CardSet{deck[0], deck[1]});
    require_normalized(r, "uniform_range");
    std::size_t dealt = 2;
    for (int step = 0; step < 6; ++step) {
      const int op = static_cast<int>(rng() % 3);
      if (op == 0 && dealt < 7) {
        r = condition_on_board(r, std::span<const Card>(deck.data() + dealt, 1));
        ++dealt;
        require_normalized(r, "condition_on_board");
      } else if (op == 1) {
        Likelihoods l;
        for (double& x : l) x = u(rng) < 0.1 ? 0.0 : u(rng);
        r = bayes_update(r, l);
        require_normalized(r, "bayes_update");
      } else {
        Likelihoods l;
        for (double& x : l) x = u(rng);
        FoldSplit s = fold_split(r, l);
        require(s.continuing.has_value(), "continuing range missing");
        r = *s.continuing;
        require_normalized(r, "fold_split");
      }
    }
    Likelihoods flat;
    flat.fill(0.37);
    const Range same = bayes_update(r, flat);
    for (int h = 0; h < kNumHands; ++h) {
      require(std::abs(same[HandIndex(h)] - r[HandIndex(h)]) <= 1e-12,
              "uniform likelihoods changed the range");
    }
  }
}

void check_fold_split_conservation(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 3, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5000; ++trial) {
    auto deck = shuffled_deck(rng);
    Likelihoods w;
    for (double& x : w) x = u(rng);
    const CardSet dead{deck[0], deck[1], deck[2], deck[3], deck[4]};
    for (int h = 0; h < kNumHands; ++h) {
      if (hand_mask(HandIndex(h)).intersects(dead)) w[h] = 0.0;
    }
    const Range r = range_from_weights(w, dead);
    Likelihoods f;
    for (double& x : f) x = trial % 10 == 0 ? 1.0 : u(rng);
    const FoldSplit s = fold_split(r, f);
    double cont = 0.0;
    for (int h = 0; h < kNumHands; ++h) cont += r[HandIndex(h)] * (1.0 - f[h]);
    require(std::abs(s.fold_probability + cont - 1.0) <= 1e-9, "fp + continuing mass != 1");
    if (trial % 10 == 0) {
      require(s.fold_probability == 1.0 && !s.continuing, "all-fold split kept a range");
    }
  }
}

void check_equity_zero_sum(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 4, 0));
  for (int trial = 0; trial < 300; ++trial) {
    auto deck = shuffled_deck(rng);
    const HandIndex a = hand_index(deck[0], deck[1]);
    const HandIndex b = hand_index(deck[2], deck[3]);
    const std::size_t n = trial % 3 == 0 ? 3 : trial % 3 == 1 ? 4 : 5;
    std::span<const Card> board(deck.data() + 4, n);
    const CardSet board_set(board);
    Likelihoods pa{}, pb{};
    pa[a.value()] = 1.0;
    pb[b.value()] = 1.0;
    const Range ra = range_from_weights(pa, board_set | hand_mask(b));
    const Range rb = range_from_weights(pb, board_set | hand_mask(a));
    const double sum = wp_rollout(a, rb, board, nullptr) + wp_rollout(b, ra, board, nullptr);
    require(std::abs(sum - 1.0) <= 1e-12, "point equities do not sum to one");
  }
}

void check_river_direct(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 5, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    auto deck = shuffled_deck(rng);
    const HandIndex hero = hand_index(deck[0], deck[1]);
    std::span<const Card> board(deck.data() + 2, 5);
    const CardSet dead = CardSet(board) | hand_mask(hero);
    Likelihoods w;
    for (int h = 0; h < kNumHands; ++h) {
      w[h] = hand_mask(HandIndex(h)).intersects(dead) ? 0.0 : u(rng);
    }
    const Range r = range_from_weights(w, dead);
    std::array<Card, 7> seven;
    std::copy(board.begin(), board.end(), seven.begin());
    auto [h1, h2] = hand_cards(hero);
    seven[5] = h1;
    seven[6] = h2;
    const HandRank mine = evaluate7(seven);
    double direct = 0.0;
    for (int h = 0; h < kNumHands; ++h) {
      if (r[HandIndex(h)] == 0.0) continue;
      auto [x, y] = hand_cards(HandIndex(h));
      seven[5] = x;
      seven[6] = y;
      const HandRank theirs = evaluate7(seven);
      direct += r[HandIndex(h)] * (mine > theirs ? 1.0 : mine == theirs ? 0.5 : 0.0);
    }
    require(std::abs(direct - wp_rollout(hero, r, board, nullptr)) <= 1e-12,
            "river rollout differs from direct enumeration");
  }
}

void check_playouts(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 6, 0));
  const GameRules rules;
  for (int64_t i = 0; i < o.playouts; ++i) {
    auto deck = shuffled_deck(rng);
    PublicState s = initial_state(rules, static_cast<int>(i & 1));
    std::size_t dealt = 0;
    Chips last_pot = s.pot();
    int actions = 0;
    while (!s.is_terminal()) {
      if (s.awaiting_board()) {
        const auto n = static_cast<std::size_t>(s.pending_board_cards());
        s = deal_board(s, std::span<const Card>(deck.data() + 4 + dealt, n));
        dealt += n;
        continue;
      }
      const ActionSpace space = legal_actions(s);
      const Action a = random_legal_action(space, rng);
      require(space.is_legal(a), "sampled action not legal");
      try {
        s = apply_action(s, a);
      } catch (const IllegalActionError& e) {
        throw CheckFailure{std::string("legal action rejected: ") + e.what()};
      }
      require(s.pot() >= last_pot, "pot decreased");
      require(s.contribution(0) <= rules.stack && s.contribution(1) <= rules.stack,
              "contribution above stack");
      last_pot = s.pot();
      require(++actions <= 4 * (2 + rules.stack / rules.big_blind + 2), "hand did not terminate");
    }
    const HandIndex h0 = hand_index(deck[0], deck[1]);
    const HandIndex h1 = hand_index(deck[2], deck[3]);
    require(terminal_payoff(s, 0, h0, h1) == -terminal_payoff(s, 1, h1, h0), "payoff not zero-sum");
  }
}

void check_lbr_legality(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 7, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GameRules rules;
  const BetSet bet_sets[] = {BetSet::FoldCall(), BetSet::FoldCallPotAllIn(), BetSet::FiftySix(),
                             BetSet::Custom({0.5, 2.0}, true)};
  std::vector<std::unique_ptr<StrategyOracle>> chumps;
  for (const char* name : kChumps) chumps.push_back(make_builtin_oracle(name));
  const int min_round = o.preflop != nullptr ? 1 : 2;
  for (int64_t i = 0; i < o.decisions; ++i) {
    const FuzzState f = random_decision_state(rules, rng, min_round);
    const int me = f.state.to_act();
    const HandIndex hand = seat_hand(f, me);
    Range r = uniform_range(hand_mask(hand) | CardSet(f.state.board()));
    if (i % 4 == 0) {
      Likelihoods l;
      for (double& x : l) x = u(rng);
      r = bayes_update(r, l);
    }
    LbrConfig cfg{bet_sets[i % 4], ActiveRounds::All()};
    StrategyModel model(*chumps[(i / 4) % chumps.size()]);
    const Action a = choose_action(r, f.state, hand, cfg, model, o.preflop);
    require(legal_actions(f.state).is_legal(a),
            "LBR chose " + format_action(a) + " at " + format_state(f.state));
  }
}

void check_allin_rule(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 8, 0));
  const GameRules rules;
  auto chump = chump_always_call();
  StrategyModel model(*chump);
  const LbrConfig cfg{BetSet::Custom({}, true), ActiveRounds(0x8)};
  int checked = 0;
  while (checked < 2000) {
    const FuzzState f = random_decision_state(rules, rng, 4);
    const ActionSpace space = legal_actions(f.state);
    if (space.call_amount != 0 || !space.raise) continue;
    const HandIndex hand = seat_hand(f, f.state.to_act());
    const Range r = uniform_range(hand_mask(hand) | CardSet(f.state.board()));
    const LbrDecision d = decide(r, f.state, hand, cfg, model, nullptr);
    const bool all_in = d.action == Action::RaiseTo(space.raise->max_to);
    require(all_in == (d.wp > 0.5), "all-in iff wp > 0.5 violated at " + format_state(f.state));
    ++checked;
  }
  for (double wp : {0.1, 0.3, 0.49, 0.51, 0.7, 0.95}) {
    double prev = utility_raise(0.0, wp, 1000, 200, 1);
    for (int a = 2; a < 200; ++a) {
      const double cur = utility_raise(0.0, wp, 1000, 200, a);
      require(wp > 0.5 ? cur > prev : cur < prev, "utility_raise not monotone in the bet");
      prev = cur;
    }
  }
}

void check_chumps(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 9, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const GameRules rules;
  for (const char* name : kChumps) {
    auto chump = make_builtin_oracle(name);
    for (int i = 0; i < 300; ++i) {
      const FuzzState f = random_decision_state(rules, rng, 1);
      const QueryResult q = chump->query(f.state);
      const ActionSpace space = legal_actions(f.state);
      require(q.card_independent(), std::string(name) + " depends on cards");
      const CardSet board(f.state.board());
      for (int h = 0; h < kNumHands; ++h) {
        const ActionDistribution* d = q.at(HandIndex(h));
        require((d == nullptr) == hand_mask(HandIndex(h)).intersects(board),
                std::string(name) + " live hand coverage wrong");
        if (d == nullptr) continue;
        try {
          d->validate(space);
        } catch (const OracleError& e) {
          throw CheckFailure{std::string(name) + ": " + e.what()};
        }
      }
      Likelihoods w;
      for (int h = 0; h < kNumHands; ++h) {
        w[h] = hand_mask(HandIndex(h)).intersects(board) ? 0.0 : u(rng);
      }
      const Range r = range_from_weights(w, board);
      const Action a = chump->sample_action(f.state, seat_hand(f, f.state.to_act()), rng);
      const Range post = bayes_update(r, q.likelihoods(a));
      for (int h = 0; h < kNumHands; ++h) {
        require(std::abs(post[HandIndex(h)] - r[HandIndex(h)]) <= 1e-9,
                std::string(name) + " update changed the range");
      }
    }
  }
}

void check_sampling(const SelfcheckOptions& o) {
  Rng rng(derive_seed(o.seed, 10, 0));
  const GameRules rules;
  constexpr int kSamples = 100000;
  constexpr int kBandBins = 8;
  for (const char* name : kChumps) {
    auto chump = make_builtin_oracle(name);
    for (int i = 0; i < 6; ++i) {
      const FuzzState f = random_decision_state(rules, rng, 1 + i % 4);
      const ActionSpace space = legal_actions(f.state);
      const HandIndex hand = seat_hand(f, f.state.to_act());
      const QueryResult q = chump->query(f.state);
      const ActionDistribution& d = *q.at(hand);
      // Bins: fold, call, then the raise range cut into equal-width slices.
      std::vector<double> expected(2 + kBandBins, 0.0);
      std::vector<int64_t> observed(expected.size(), 0);
      expected[0] = d.fold();
      expected[1] = d.call();
      Chips lo = 0, width = 1;
      if (space.raise) {
        lo = space.raise->min_to;
        width = (space.raise->max_to - lo) / kBandBins + 1;
        for (Chips to = lo; to <= space.raise->max_to; ++to) {
          expected[2 + (to - lo) / width] += d.probability(Action::RaiseTo(to));
        }
      }
      for (int k = 0; k < kSamples; ++k) {
        const Action a = chump->sample_action(f.state, hand, rng);
        require(space.is_legal(a), std::string(name) + " sampled an illegal action");
        if (a.kind == ActionKind::kFold) ++observed[0];
        if (a.kind == ActionKind::kCall) ++observed[1];
        if (a.kind == ActionKind::kRaiseTo) ++observed[2 + (a.amount - lo) / width];
      }
      double stat = 0.0;
      int dof = -1;
      for (std::size_t b = 0; b < expected.size(); ++b) {
        const double e = expected[b] * kSamples;
        if (e == 0.0) {
          require(observed[b] == 0, std::string(name) + " sampled a zero-probability action");
          continue;
        }
        stat += (observed[b] - e) * (observed[b] - e) / e;
        ++dof;
      }
      if (dof > 0) {
        const double z = chi_square_z(stat, dof);
        require(z < 4.75, std::string(name) + " sampling frequencies off (chi2 " +
                              std::to_string(stat) + ", dof " + std::to_string(dof) + ")");
      }
    }
  }
}

void check_determinism(const SelfcheckOptions& o) {
  MatchConfig cfg;
  cfg.lbr = {BetSet::FoldCallPotAllIn(), ActiveRounds(0xE)};
  cfg.pairs = 300;
  cfg.seed = o.seed;
  for (const char* name : {"half-raise", "random-legal"}) {
    cfg.opponent = name;
    auto factory = [&] { return make_builtin_oracle(cfg.opponent); };
    cfg.threads = 1;
    const EvalReport a = evaluate(cfg, nullptr, factory);
    const EvalReport b = evaluate(cfg, nullptr, factory);
    cfg.threads = std::max(2, o.threads);
    const EvalReport c = evaluate(cfg, nullptr, factory);
    require(a.hand_values_mbb == b.hand_values_mbb, std::string(name) + ": reruns differ");
    require(a.hand_values_mbb == c.hand_values_mbb, std::string(name) + ": thread count matters");
    require(a.mean_mbb == c.mean_mbb && a.lbr_actions == c.lbr_actions,
            std::string(name) + ": summary differs across thread counts");
  }
}

void check_harness_bookkeeping(const SelfcheckOptions& o) {
  MatchConfig cfg;
  cfg.lbr = {BetSet::FoldCallPotAllIn(), ActiveRounds(0xC)};
  Rng rng(derive_seed(o.seed, 11, 0));
  for (const char* name : kChumps) {
    auto chump = make_builtin_oracle(name);
    for (int i = 0; i < 500; ++i) {
      const Deal deal = random_deal(rng);
      auto [first, second] = play_duplicate_pair(deal, cfg, nullptr, *chump, rng, rng);
      for (const HandRecord* r : {&first, &second}) {
        require(!r->discarded, "chump hand discarded: " + r->diagnostic);
        const PublicState& s = *r->terminal;
        require(r->winnings == -terminal_payoff(s, 1, r->opponent_hand, r->lbr_hand),
                "winnings not zero-sum in " + r->transcript);
        require(std::abs(r->winnings) <= cfg.rules.stack, "winnings above the stack");
        // Replaying the transcript must accept every action.
        const PublicState replayed =
            state_from_string(format_state(s), cfg.rules, s.first_player());
        require(replayed == s, "transcript does not replay: " + r->transcript);
      }
    }
  }
}

void check_ci_coverage(const SelfcheckOptions& o) {
  MatchConfig cfg;
  cfg.lbr = {BetSet::FoldCall(), ActiveRounds(0xE)};
  cfg.pairs = 200;
  cfg.variance = {false, false};
  int covered = 0;
  for (int run = 0; run < 100; ++run) {
    cfg.seed = derive_seed(o.seed, 12, static_cast<uint64_t>(run));
    const EvalReport r = evaluate(cfg, nullptr, [] { return chump_always_call(); });
    if (std::abs(r.mean_mbb) <= r.half_width_mbb) ++covered;
  }
  require(covered >= 90, "zero covered by only " + std::to_string(covered) + " of 100 intervals");
}

struct Suite {
  const char* name;
  void (*run)(const SelfcheckOptions&);
};

constexpr Suite kSuites[] = {
    {"hand index bijection", check_hand_index},
    {"evaluator total order", check_evaluator_order},
    {"range normalization", check_range_normalization},
    {"fold split conservation", check_fold_split_conservation},
    {"point equity zero-sum", check_equity_zero_sum},
    {"river rollout exact", check_river_direct},
    {"playout legality, chips and zero-sum payoffs", check_playouts},
    {"LBR action legality", check_lbr_legality},
    {"all-in rule and utility monotonicity", check_allin_rule},
    {"chump distributions and card independence", check_chumps},
    {"chump sampling frequencies", check_sampling},
    {"determinism under fixed seed", check_determinism},
    {"harness bookkeeping", check_harness_bookkeeping},
    {"interval coverage", check_ci_coverage},
};

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options) {
  std::vector<CheckResult> results;
  for (const Suite& suite : kSuites) {
    CheckResult r{suite.name, false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      suite.run(options);
      r.passed = true;
    } catch (const CheckFailure& f) {
      r.detail = f.what;
    } catch (const std::exception& e) {
      r.detail = std::string("unexpected exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace lbr
