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

// Hand-vs-hand preflop equity over all five-card board completions.
//
// Matchups are reduced by suit isomorphism and by the identity
// eq(a, b) = 1 - eq(b, a); one record is stored per canonical matchup.
//
// File layout (little-endian):
//   header  magic "LBRPFEQ\0" | u32 version | u32 method | u64 seed
//           | u64 boards per entry (0 for exact) | u64 entry count
//   records u16 hand_a | u16 hand_b | f64 equity | f64 standard error
//   trailer u32 CRC-32 of everything above

#ifndef LBR_PREFLOP_TABLE_H_
#define LBR_PREFLOP_TABLE_H_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lbr/cards.h"

namespace lbr {

enum class TableMethod : uint32_t { kExact = 0, kMonteCarlo = 1 };

struct MatchupRecord {
  HandIndex a;
  HandIndex b;
  double equity = 0.0;     // of a against b
  double std_error = 0.0;  // 0 for exact entries
};

struct TableBuildOptions {
  TableMethod method = TableMethod::kExact;
  uint64_t mc_boards = 100000;
  uint64_t seed = 0;
  int threads = 1;
  // Called with (done, total) canonical matchups.
  std::function<void(std::size_t, std::size_t)> progress;
};

class PreflopEquityTable {
 public:
  static PreflopEquityTable build(const TableBuildOptions& options);
  // Needs one record per canonical matchup; throws TableError otherwise.
  static PreflopEquityTable from_records(TableMethod method, uint64_t seed, uint64_t boards,
                                         std::vector<MatchupRecord> records);
  // Throws TableError on I/O failure, bad header or checksum mismatch.
  static PreflopEquityTable load(const std::string& path);
  void save(const std::string& path) const;

  // Equity of `a` against `b`; the hands must not share a card.
  double equity(HandIndex a, HandIndex b) const {
    return equity_[static_cast<std::size_t>(a.value()) * kNumHands + b.value()];
  }
  double std_error(HandIndex a, HandIndex b) const;
  bool contains(HandIndex a, HandIndex b) const;

  TableMethod method() const { return method_; }
  uint64_t seed() const { return seed_; }
  uint64_t boards_per_entry() const { return boards_; }
  const std::vector<MatchupRecord>& records() const { return records_; }

 private:
  PreflopEquityTable() = default;
  void expand();

  TableMethod method_ = TableMethod::kExact;
  uint64_t seed_ = 0;
  uint64_t boards_ = 0;
  std::vector<MatchupRecord> records_;
  std::vector<double> equity_;    // kNumHands^2, NaN for overlapping pairs
  std::vector<int32_t> slot_;     // record index, negated-minus-one when flipped
};

// Canonical representatives of all disjoint (a, b) hand pairs, unique up to
// suit relabeling and swapping a with b.
std::vector<std::pair<HandIndex, HandIndex>> canonical_matchups();

// Exact equity of `a` against `b` over all C(48,5) boards.
double exact_matchup_equity(HandIndex a, HandIndex b);

struct EquityEstimate {
  double equity = 0.0;
  double std_error = 0.0;
};
EquityEstimate sampled_matchup_equity(HandIndex a, HandIndex b, uint64_t boards,
                                      std::mt19937_64& rng);

}  // namespace lbr

#endif  // LBR_PREFLOP_TABLE_H_
