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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lbr/cards.h"
#include "lbr/engine.h"
#include "lbr/errors.h"
#include "lbr/harness.h"
#include "lbr/local_best_response.h"
#include "lbr/preflop_table.h"
#include "lbr/range.h"
#include "lbr/selfcheck.h"
#include "lbr/wire.h"

namespace py = pybind11;

namespace lbr {
namespace {

std::vector<Card> cards_of(const std::string& text) { return parse_cards(text); }

Range range_of(const std::optional<std::map<std::string, double>>& weights, CardSet dead) {
  if (!weights) return uniform_range(dead);
  Likelihoods w{};
  for (const auto& [hand, weight] : *weights) w[parse_hand(hand).value()] = weight;
  return range_from_weights(w, dead);
}

py::dict legal_dict(const PublicState& s) {
  const ActionSpace space = legal_actions(s);
  py::dict d;
  d["can_fold"] = space.can_fold;
  d["call_amount"] = space.call_amount;
  if (space.raise) {
    d["raise"] = py::make_tuple(space.raise->min_to, space.raise->max_to);
  } else {
    d["raise"] = py::none();
  }
  return d;
}

}  // namespace
}  // namespace lbr

PYBIND11_MODULE(lbr_bench, m) {
  using namespace lbr;
  m.doc() = "Local best response evaluation for heads-up no-limit hold'em";

  auto parse_error = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<IllegalActionError>(m, "IllegalActionError", domain_error.ptr());
  py::register_exception<DegenerateRangeError>(m, "DegenerateRangeError", PyExc_RuntimeError);
  py::register_exception<OracleError>(m, "OracleError", PyExc_RuntimeError);
  py::register_exception<TableError>(m, "TableError", PyExc_RuntimeError);
  (void)parse_error;

  m.def("evaluate7", [](const std::string& cards) {
        const HandRank r = evaluate7(cards_of(cards));
        return py::make_tuple(category_name(r.category()), r.packed());
      },
      py::arg("cards"), "Category name and packed strength of seven cards, e.g. 'AsKsQsJsTs2c3d'.");
  m.def("hand_index", [](const std::string& hand) { return parse_hand(hand).value(); },
        py::arg("hand"));
  m.def("format_hand", [](int index) { return format_hand(HandIndex(index)); }, py::arg("index"));

  py::class_<GameRules>(m, "GameRules")
      .def(py::init([](Chips stack, Chips sb, Chips bb) {
             GameRules r{stack, sb, bb};
             r.validate();
             return r;
           }),
           py::arg("stack") = 20000, py::arg("small_blind") = 50, py::arg("big_blind") = 100)
      .def_readonly("stack", &GameRules::stack)
      .def_readonly("small_blind", &GameRules::small_blind)
      .def_readonly("big_blind", &GameRules::big_blind);

  py::class_<PublicState>(m, "State")
      .def_static("initial", [](const GameRules& r, int first) { return initial_state(r, first); },
                  py::arg("rules") = GameRules{}, py::arg("first_player") = 0)
      .def_static("parse",
                  [](const std::string& text, const GameRules& r, int first) {
                    return state_from_string(text, r, first);
                  },
                  py::arg("text"), py::arg("rules") = GameRules{}, py::arg("first_player") = 0)
      .def("apply", [](const PublicState& s, const std::string& a) {
             return apply_action(s, parse_action(a));
           },
           py::arg("action"), "Apply 'f', 'c' or 'r<to>'.")
      .def("deal", [](const PublicState& s, const std::string& cards) {
             return deal_board(s, cards_of(cards));
           },
           py::arg("cards"))
      .def("legal_actions", &legal_dict)
      .def("payoff", [](const PublicState& s, int player, const std::string& own,
                        const std::string& other) {
             return terminal_payoff(s, player, parse_hand(own), parse_hand(other));
           },
           py::arg("player"), py::arg("own"), py::arg("other"))
      .def_property_readonly("round", &PublicState::round)
      .def_property_readonly("to_act", &PublicState::to_act)
      .def_property_readonly("pot", &PublicState::pot)
      .def_property_readonly("is_terminal", &PublicState::is_terminal)
      .def_property_readonly("awaiting_board", &PublicState::awaiting_board)
      .def("contribution", &PublicState::contribution, py::arg("player"))
      .def("__str__", &format_state)
      .def("__repr__", [](const PublicState& s) { return "State('" + format_state(s) + "')"; })
      .def("__eq__", [](const PublicState& a, const PublicState& b) { return a == b; });

  py::class_<PreflopEquityTable>(m, "PreflopTable")
      .def_static("load", &PreflopEquityTable::load, py::arg("path"))
      .def("equity", [](const PreflopEquityTable& t, const std::string& a, const std::string& b) {
             return t.equity(parse_hand(a), parse_hand(b));
           },
           py::arg("hero"), py::arg("villain"))
      .def("std_error", [](const PreflopEquityTable& t, const std::string& a, const std::string& b) {
             return t.std_error(parse_hand(a), parse_hand(b));
           },
           py::arg("hero"), py::arg("villain"));

  m.def("exact_matchup_equity", [](const std::string& a, const std::string& b) {
        return exact_matchup_equity(parse_hand(a), parse_hand(b));
      },
      py::arg("hero"), py::arg("villain"), py::call_guard<py::gil_scoped_release>());

  m.def("wp_rollout",
        [](const std::string& hero, const std::string& board,
           const std::optional<std::map<std::string, double>>& weights,
           const PreflopEquityTable* table) {
          const HandIndex h = parse_hand(hero);
          const std::vector<Card> b = cards_of(board);
          const Range r = range_of(weights, hand_mask(h) | CardSet(b));
          py::gil_scoped_release release;
          return wp_rollout(h, r, b, table);
        },
        py::arg("hero"), py::arg("board") = "", py::arg("weights") = py::none(),
        py::arg("table") = nullptr,
        "Win probability (ties count half) against a range given as {hand: weight}; uniform "
        "when omitted. An empty board needs a preflop table.");

  m.def("considered_bets",
        [](const std::string& bets, const PublicState& s) {
          return considered_bets({BetSet::Parse(bets), ActiveRounds::All()}, s);
        },
        py::arg("bets"), py::arg("state"), "Raise-by amounts LBR evaluates at a state.");

  m.def("evaluate",
        [](const std::string& opponent, const std::string& bets, const std::string& rounds,
           int64_t pairs, uint64_t seed, bool duplicate, bool imaginary, int sampled_queries,
           const GameRules& rules, const PreflopEquityTable* table, int threads) {
          MatchConfig cfg;
          cfg.rules = rules;
          cfg.opponent = opponent;
          cfg.lbr = {BetSet::Parse(bets), ActiveRounds::Parse(rounds)};
          cfg.pairs = pairs;
          cfg.seed = seed;
          cfg.variance = {duplicate, imaginary};
          cfg.sampled_queries = sampled_queries;
          cfg.threads = threads;
          OracleFactory factory = make_oracle_factory(opponent);
          std::string json;
          {
            py::gil_scoped_release release;
            json = evaluate(cfg, table, factory).to_json(cfg);
          }
          return py::module_::import("json").attr("loads")(json);
        },
        py::arg("opponent") = "always-call", py::arg("bets") = "fc", py::arg("rounds") = "3-4",
        py::arg("pairs") = 1000, py::arg("seed") = 0, py::arg("duplicate") = true,
        py::arg("imaginary") = true, py::arg("sampled_queries") = 0,
        py::arg("rules") = GameRules{}, py::arg("table") = nullptr, py::arg("threads") = 1,
        "Run a match and return the report as a dict.");

  m.def("selfcheck",
        [](uint64_t seed, int64_t playouts, int64_t decisions, const PreflopEquityTable* table) {
          SelfcheckOptions opts;
          opts.seed = seed;
          opts.playouts = playouts;
          opts.decisions = decisions;
          opts.preflop = table;
          std::vector<CheckResult> results;
          {
            py::gil_scoped_release release;
            results = run_selfcheck(opts);
          }
          py::list out;
          for (const CheckResult& r : results) {
            py::dict d;
            d["name"] = r.name;
            d["passed"] = r.passed;
            d["detail"] = r.detail;
            d["seconds"] = r.seconds;
            out.append(d);
          }
          return out;
        },
        py::arg("seed") = 1, py::arg("playouts") = 100000, py::arg("decisions") = 100000,
        py::arg("table") = nullptr);
}
