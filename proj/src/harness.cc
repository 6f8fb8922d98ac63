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

#include "lbr/harness.h"

#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lbr/errors.h"
#include "lbr/preflop_table.h"

namespace lbr {

namespace {

constexpr int kLbr = 0;
constexpr int kOpponent = 1;
constexpr std::size_t kMaxDiagnostics = 10;

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

int kind_slot(Action a) {
  switch (a.kind) {
    case ActionKind::kFold: return 0;
    case ActionKind::kCall: return 1;
    case ActionKind::kRaiseTo: return 2;
  }
  return 1;
}

std::string transcript_of(const HandRecord& r, const PublicState& s) {
  std::string out = r.lbr_first ? "seat=first" : "seat=second";
  out += " lbr=" + format_hand(r.lbr_hand) + " opp=" + format_hand(r.opponent_hand);
  out += " deal=" + format_cards(r.deal.board) + " state=" + format_state(s);
  return out;
}

struct PairOutcome {
  bool discarded = false;
  std::string diagnostic;
  std::array<double, 2> scored{};
  std::array<double, 2> raw{};
  ActionHistogram actions{};
};

}  // namespace

void MatchConfig::validate() const {
  rules.validate();
  if (pairs < 1) throw DomainError("pairs must be at least 1");
  if (sampled_queries < 0) throw DomainError("sampled_queries must be >= 0");
  if (threads < 1) throw DomainError("threads must be at least 1");
  if (lbr.active_rounds.mask() == 0) throw DomainError("no active LBR rounds");
}

uint64_t derive_seed(uint64_t seed, uint64_t index, uint64_t stream) {
  return splitmix64(splitmix64(splitmix64(seed) ^ index) ^ (stream * 0xD1B54A32D192ED03ull));
}

Deal random_deal(Rng& rng) {
  std::array<int, kNumCards> deck;
  std::iota(deck.begin(), deck.end(), 0);
  for (int i = 0; i < 9; ++i) {
    std::uniform_int_distribution<int> pick(i, kNumCards - 1);
    std::swap(deck[i], deck[pick(rng)]);
  }
  Deal d;
  d.first_hand = hand_index(Card(deck[0]), Card(deck[1]));
  d.second_hand = hand_index(Card(deck[2]), Card(deck[3]));
  for (int i = 0; i < 5; ++i) d.board[i] = Card(deck[4 + i]);
  return d;
}

double imaginary_value(const HandRecord& record, const Range& terminal_range) {
  if (!record.terminal || !record.terminal->is_terminal()) {
    throw DomainError("imaginary_value: hand did not finish");
  }
  const PublicState& s = *record.terminal;
  if (s.terminal_kind() == TerminalKind::kFold) return static_cast<double>(record.winnings);
  const double wp = wp_rollout(record.lbr_hand, terminal_range, s.board(), nullptr);
  return (2.0 * wp - 1.0) * static_cast<double>(s.contribution(kLbr));
}

HandRecord play_hand(const Deal& deal, bool lbr_first, const MatchConfig& cfg,
                     const PreflopEquityTable* preflop, StrategyOracle& oracle, Rng& rng) {
  HandRecord rec;
  rec.deal = deal;
  rec.lbr_first = lbr_first;
  rec.lbr_hand = lbr_first ? deal.first_hand : deal.second_hand;
  rec.opponent_hand = lbr_first ? deal.second_hand : deal.first_hand;

  const CardSet hole = hand_mask(rec.lbr_hand) | hand_mask(rec.opponent_hand);
  if (hand_mask(rec.lbr_hand).intersects(hand_mask(rec.opponent_hand)) ||
      hole.intersects(CardSet(deal.board)) || CardSet(deal.board).size() != 5) {
    throw DomainError("play_hand: deal cards are not distinct");
  }

  PublicState s = initial_state(cfg.rules, lbr_first ? kLbr : kOpponent);
  Range range = uniform_range(hand_mask(rec.lbr_hand));
  StrategyModel model(oracle, cfg.sampled_queries, &rng);
  std::size_t dealt = 0;
  try {
    while (!s.is_terminal()) {
      if (s.awaiting_board()) {
        const std::size_t n = static_cast<std::size_t>(s.pending_board_cards());
        std::span<const Card> cards(deal.board.data() + dealt, n);
        s = deal_board(s, cards);
        range = condition_on_board(range, cards);
        dealt += n;
      } else if (s.to_act() == kLbr) {
        const Action a = choose_action(range, s, rec.lbr_hand, cfg.lbr, model, preflop);
        if (!legal_actions(s).is_legal(a)) {
          throw std::logic_error("LBR chose illegal action " + format_action(a) + " at " +
                                 format_state(s));
        }
        ++rec.lbr_actions[s.round() - 1][kind_slot(a)];
        s = apply_action(s, a);
      } else {
        const QueryResult q = model.observe(s);
        const Action a = oracle.sample_action(s, rec.opponent_hand, rng);
        if (!legal_actions(s).is_legal(a)) {
          throw OracleError("opponent played illegal action " + format_action(a) + " at " +
                            format_state(s));
        }
        range = bayes_update(range, q.likelihoods(a));
        s = apply_action(s, a);
      }
    }
  } catch (const DegenerateRangeError& e) {
    rec.discarded = true;
    rec.diagnostic = std::string("degenerate range: ") + e.what();
  } catch (const OracleError& e) {
    rec.discarded = true;
    rec.diagnostic = std::string("oracle failure: ") + e.what();
  }
  rec.transcript = transcript_of(rec, s);
  if (rec.discarded) return rec;

  rec.terminal = s;
  rec.terminal_range = range;
  rec.winnings = terminal_payoff(s, kLbr, rec.lbr_hand, rec.opponent_hand);
  rec.scored = static_cast<double>(rec.winnings);
  if (cfg.variance.imaginary) {
    try {
      rec.scored = imaginary_value(rec, range);
    } catch (const DegenerateRangeError& e) {
      rec.diagnostic = std::string("imaginary scoring fell back to actual outcome: ") + e.what();
    }
  }
  return rec;
}

std::pair<HandRecord, HandRecord> play_duplicate_pair(const Deal& deal, const MatchConfig& cfg,
                                                      const PreflopEquityTable* preflop,
                                                      StrategyOracle& oracle, Rng& first_seat_rng,
                                                      Rng& second_seat_rng) {
  HandRecord a = play_hand(deal, true, cfg, preflop, oracle, first_seat_rng);
  HandRecord b = play_hand(deal, false, cfg, preflop, oracle, second_seat_rng);
  return {std::move(a), std::move(b)};
}

std::pair<double, double> mean_and_half_width(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  if (values.empty()) return {0.0, 0.0};
  double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, 1.96 * sd / std::sqrt(n)};
}

EvalReport evaluate(const MatchConfig& cfg, const PreflopEquityTable* preflop,
                    const OracleFactory& make_oracle) {
  cfg.validate();
  if (preflop == nullptr && cfg.lbr.active_rounds.contains(1)) {
    throw TableError("LBR is active preflop but no preflop equity table was loaded");
  }
  const std::size_t n = static_cast<std::size_t>(cfg.pairs);
  std::vector<PairOutcome> outcomes(n);
  const double to_mbb = 1000.0 / static_cast<double>(cfg.rules.big_blind);

  std::atomic<std::size_t> next{0};
  auto run_pairs = [&] {
    std::unique_ptr<StrategyOracle> oracle = make_oracle();
    if (oracle == nullptr) throw OracleError("oracle factory returned nothing");
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      Rng deal_rng(derive_seed(cfg.seed, i, 0));
      Rng first_rng(derive_seed(cfg.seed, i, 1));
      Rng second_rng(derive_seed(cfg.seed, i, 2));
      HandRecord a, b;
      if (cfg.variance.duplicate) {
        std::tie(a, b) = play_duplicate_pair(random_deal(deal_rng), cfg, preflop, *oracle,
                                             first_rng, second_rng);
      } else {
        const Deal d1 = random_deal(deal_rng);
        const Deal d2 = random_deal(deal_rng);
        a = play_hand(d1, true, cfg, preflop, *oracle, first_rng);
        b = play_hand(d2, false, cfg, preflop, *oracle, second_rng);
      }
      PairOutcome& out = outcomes[i];
      out.discarded = a.discarded || b.discarded;
      out.diagnostic = a.discarded ? a.diagnostic : b.diagnostic;
      out.scored = {a.scored * to_mbb, b.scored * to_mbb};
      out.raw = {static_cast<double>(a.winnings) * to_mbb, static_cast<double>(b.winnings) * to_mbb};
      for (int r = 0; r < 4; ++r) {
        for (int k = 0; k < 3; ++k) out.actions[r][k] = a.lbr_actions[r][k] + b.lbr_actions[r][k];
      }
    }
  };
  std::mutex failure_mu;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      run_pairs();
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(n);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < cfg.threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  EvalReport report;
  std::vector<double> pair_means, raw_means;
  for (const PairOutcome& o : outcomes) {
    if (o.discarded) {
      ++report.discarded_pairs;
      if (report.diagnostics.size() < kMaxDiagnostics) report.diagnostics.push_back(o.diagnostic);
      continue;
    }
    pair_means.push_back(0.5 * (o.scored[0] + o.scored[1]));
    raw_means.push_back(0.5 * (o.raw[0] + o.raw[1]));
    report.hand_values_mbb.push_back(o.scored);
    for (int r = 0; r < 4; ++r) {
      for (int k = 0; k < 3; ++k) report.lbr_actions[r][k] += o.actions[r][k];
    }
  }
  report.pairs = static_cast<int64_t>(pair_means.size());
  std::tie(report.mean_mbb, report.half_width_mbb) = mean_and_half_width(pair_means);
  report.raw_mean_mbb = mean_and_half_width(raw_means).first;
  report.pair_std_mbb = report.pairs > 0
                            ? report.half_width_mbb * std::sqrt(static_cast<double>(report.pairs)) / 1.96
                            : 0.0;
  report.discard_limit_exceeded =
      static_cast<double>(report.discarded_pairs) > cfg.max_discard_rate * static_cast<double>(n);
  return report;
}

std::string EvalReport::to_text(const MatchConfig& cfg) const {
  std::ostringstream out;
  char line[256];
  out << "opponent        " << cfg.opponent << "\n";
  out << "bets            " << cfg.lbr.bets.name << "\n";
  out << "lbr rounds      " << cfg.lbr.active_rounds.to_string() << "\n";
  out << "stack / blinds  " << cfg.rules.stack << " / " << cfg.rules.small_blind << "-"
      << cfg.rules.big_blind << "\n";
  out << "variance        duplicate=" << (cfg.variance.duplicate ? "on" : "off")
      << " imaginary=" << (cfg.variance.imaginary ? "on" : "off") << "\n";
  std::snprintf(line, sizeof(line), "pairs           %lld (%lld discarded)\n",
                static_cast<long long>(pairs), static_cast<long long>(discarded_pairs));
  out << line;
  std::snprintf(line, sizeof(line), "LBR winnings    %.1f +- %.1f mBB/h (raw outcomes %.1f)\n",
                mean_mbb, half_width_mbb, raw_mean_mbb);
  out << line;
  out << "LBR actions     round   fold     call    raise\n";
  for (int r = 0; r < 4; ++r) {
    std::snprintf(line, sizeof(line), "                %5d %8lld %8lld %8lld\n", r + 1,
                  static_cast<long long>(lbr_actions[r][0]),
                  static_cast<long long>(lbr_actions[r][1]),
                  static_cast<long long>(lbr_actions[r][2]));
    out << line;
  }
  for (const auto& d : diagnostics) out << "discarded: " << d << "\n";
  if (discard_limit_exceeded) out << "ERROR: discard rate above limit\n";
  return out.str();
}

std::string EvalReport::to_json(const MatchConfig& cfg) const {
  nlohmann::json j;
  j["opponent"] = cfg.opponent;
  j["bets"] = cfg.lbr.bets.name;
  j["lbr_rounds"] = cfg.lbr.active_rounds.to_string();
  j["stack"] = cfg.rules.stack;
  j["small_blind"] = cfg.rules.small_blind;
  j["big_blind"] = cfg.rules.big_blind;
  j["seed"] = cfg.seed;
  j["duplicate"] = cfg.variance.duplicate;
  j["imaginary"] = cfg.variance.imaginary;
  j["sampled_queries"] = cfg.sampled_queries;
  j["mean_mbb_per_hand"] = mean_mbb;
  j["ci95_half_width_mbb"] = half_width_mbb;
  j["raw_mean_mbb_per_hand"] = raw_mean_mbb;
  j["pairs"] = pairs;
  j["discarded_pairs"] = discarded_pairs;
  j["discard_limit_exceeded"] = discard_limit_exceeded;
  nlohmann::json hist = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    hist.push_back({{"round", r + 1},
                    {"fold", lbr_actions[r][0]},
                    {"call", lbr_actions[r][1]},
                    {"raise", lbr_actions[r][2]}});
  }
  j["lbr_actions"] = hist;
  j["diagnostics"] = diagnostics;
  return j.dump(2);
}

}  // namespace lbr
