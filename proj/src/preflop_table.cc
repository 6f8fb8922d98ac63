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

#include "lbr/preflop_table.h"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <mutex>
#include <thread>

#include "lbr/errors.h"
#include "lbr/hand_evaluator.h"

namespace lbr {

namespace {

constexpr char kMagic[8] = {'L', 'B', 'R', 'P', 'F', 'E', 'Q', '\0'};
constexpr uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 + 8 + 8;
constexpr std::size_t kRecordBytes = 2 + 2 + 8 + 8;

using SuitPerm = std::array<int, 4>;

const std::vector<SuitPerm>& suit_permutations() {
  static const std::vector<SuitPerm> perms = [] {
    std::vector<SuitPerm> out;
    SuitPerm p = {0, 1, 2, 3};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

HandIndex relabel(HandIndex h, const SuitPerm& p) {
  auto [x, y] = hand_cards(h);
  return hand_index(Card::FromRankSuit(x.rank(), p[x.suit()]),
                    Card::FromRankSuit(y.rank(), p[y.suit()]));
}

struct Canonical {
  uint32_t key;  // a * kNumHands + b of the representative
  bool flipped;  // representative is (b, a)
};

Canonical canonicalize(HandIndex a, HandIndex b) {
  Canonical best{std::numeric_limits<uint32_t>::max(), false};
  for (const SuitPerm& p : suit_permutations()) {
    uint32_t x = static_cast<uint32_t>(relabel(a, p).value());
    uint32_t y = static_cast<uint32_t>(relabel(b, p).value());
    if (x * kNumHands + y < best.key) best = {x * kNumHands + y, false};
    if (y * kNumHands + x < best.key) best = {y * kNumHands + x, true};
  }
  return best;
}

bool disjoint(HandIndex a, HandIndex b) { return !hand_mask(a).intersects(hand_mask(b)); }

template <typename T>
void put(std::string& buf, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<char>(bits >> (8 * i)));
}

template <typename T>
T get(const std::string& buf, std::size_t& pos) {
  uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits |= static_cast<uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
  }
  pos += sizeof(T);
  T v;
  std::memcpy(&v, &bits, sizeof(T));
  return v;
}

uint32_t crc_of(const std::string& bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  return static_cast<uint32_t>(
      crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&](int id) {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i, id);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<std::pair<HandIndex, HandIndex>> canonical_matchups() {
  std::vector<bool> seen(static_cast<std::size_t>(kNumHands) * kNumHands, false);
  for (int a = 0; a < kNumHands; ++a) {
    for (int b = 0; b < kNumHands; ++b) {
      if (!disjoint(HandIndex(a), HandIndex(b))) continue;
      seen[canonicalize(HandIndex(a), HandIndex(b)).key] = true;
    }
  }
  std::vector<std::pair<HandIndex, HandIndex>> out;
  for (std::size_t k = 0; k < seen.size(); ++k) {
    if (seen[k]) {
      out.emplace_back(HandIndex(static_cast<int>(k / kNumHands)),
                       HandIndex(static_cast<int>(k % kNumHands)));
    }
  }
  return out;
}

double exact_matchup_equity(HandIndex a, HandIndex b) {
  if (!disjoint(a, b)) throw DomainError("exact_matchup_equity: hands overlap");
  const HandEvaluator& ev = HandEvaluator::Get();
  auto [a1, a2] = hand_cards(a);
  auto [b1, b2] = hand_cards(b);
  std::array<uint32_t, 4> hero_suits{}, villain_suits{};
  hero_suits[a1.suit()] |= 1u << (a1.rank() - 2);
  hero_suits[a2.suit()] |= 1u << (a2.rank() - 2);
  villain_suits[b1.suit()] |= 1u << (b1.rank() - 2);
  villain_suits[b2.suit()] |= 1u << (b2.rank() - 2);

  CardSet used{a1, a2, b1, b2};
  std::array<Card, 48> deck;
  int n = 0;
  for (int c = 0; c < kNumCards; ++c) {
    if (!used.contains(Card(c))) deck[n++] = Card(c);
  }

  struct Level {
    HandEvaluator::State hero, villain;
    std::array<uint32_t, 4> suits;
  };
  std::array<Level, 6> lv;
  lv[0] = {ev.add(ev.add(HandEvaluator::kEmpty, a1), a2),
           ev.add(ev.add(HandEvaluator::kEmpty, b1), b2),
           {0, 0, 0, 0}};
  auto push = [&](int depth, Card c) {
    const Level& p = lv[depth];
    Level& q = lv[depth + 1];
    q.hero = ev.add(p.hero, c);
    q.villain = ev.add(p.villain, c);
    q.suits = p.suits;
    q.suits[c.suit()] |= 1u << (c.rank() - 2);
  };
  auto score = [&](HandEvaluator::State s, const std::array<uint32_t, 4>& own,
                   const std::array<uint32_t, 4>& board) {
    uint32_t v = ev.value(s);
    for (int k = 0; k < 4; ++k) {
      if (std::popcount(board[k]) >= 3) {
        uint32_t f = ev.flush_value(board[k] | own[k]);
        if (f > v) v = f;
      }
    }
    return v;
  };

  uint64_t points = 0, total = 0;
  for (int i0 = 0; i0 < n; ++i0) {
    push(0, deck[i0]);
    for (int i1 = i0 + 1; i1 < n; ++i1) {
      push(1, deck[i1]);
      for (int i2 = i1 + 1; i2 < n; ++i2) {
        push(2, deck[i2]);
        for (int i3 = i2 + 1; i3 < n; ++i3) {
          push(3, deck[i3]);
          for (int i4 = i3 + 1; i4 < n; ++i4) {
            push(4, deck[i4]);
            const Level& leaf = lv[5];
            uint32_t h = score(leaf.hero, hero_suits, leaf.suits);
            uint32_t v = score(leaf.villain, villain_suits, leaf.suits);
            points += h > v ? 2 : (h == v ? 1 : 0);
            ++total;
          }
        }
      }
    }
  }
  return static_cast<double>(points) / static_cast<double>(2 * total);
}

EquityEstimate sampled_matchup_equity(HandIndex a, HandIndex b, uint64_t boards,
                                      std::mt19937_64& rng) {
  if (!disjoint(a, b)) throw DomainError("sampled_matchup_equity: hands overlap");
  if (boards == 0) throw DomainError("sampled_matchup_equity: need at least one board");
  const HandEvaluator& ev = HandEvaluator::Get();
  auto [a1, a2] = hand_cards(a);
  auto [b1, b2] = hand_cards(b);
  CardSet used{a1, a2, b1, b2};
  std::array<Card, 48> deck;
  int n = 0;
  for (int c = 0; c < kNumCards; ++c) {
    if (!used.contains(Card(c))) deck[n++] = Card(c);
  }
  std::array<Card, 7> hero{a1, a2}, villain{b1, b2};
  double sum = 0.0, sum_sq = 0.0;
  for (uint64_t k = 0; k < boards; ++k) {
    for (int j = 0; j < 5; ++j) {
      std::uniform_int_distribution<int> pick(j, n - 1);
      std::swap(deck[j], deck[pick(rng)]);
      hero[2 + j] = villain[2 + j] = deck[j];
    }
    uint32_t h = ev.evaluate(hero), v = ev.evaluate(villain);
    double x = h > v ? 1.0 : (h == v ? 0.5 : 0.0);
    sum += x;
    sum_sq += x * x;
  }
  const double m = sum / static_cast<double>(boards);
  double var = 0.0;
  if (boards > 1) {
    var = (sum_sq - static_cast<double>(boards) * m * m) / static_cast<double>(boards - 1);
  }
  return {m, std::sqrt(std::max(var, 0.0) / static_cast<double>(boards))};
}

PreflopEquityTable PreflopEquityTable::build(const TableBuildOptions& options) {
  if (options.method == TableMethod::kMonteCarlo && options.mc_boards == 0) {
    throw DomainError("build: Monte Carlo table needs a positive board count");
  }
  PreflopEquityTable table;
  table.method_ = options.method;
  table.seed_ = options.seed;
  table.boards_ = options.method == TableMethod::kExact ? 0 : options.mc_boards;
  auto matchups = canonical_matchups();
  table.records_.resize(matchups.size());

  std::atomic<std::size_t> done{0};
  std::mutex progress_mu;
  parallel_for(matchups.size(), options.threads, [&](std::size_t i, int worker) {
    auto [a, b] = matchups[i];
    MatchupRecord rec{a, b, 0.0, 0.0};
    if (options.method == TableMethod::kExact) {
      rec.equity = exact_matchup_equity(a, b);
    } else {
      std::seed_seq seq{options.seed, static_cast<uint64_t>(i)};
      std::mt19937_64 rng(seq);
      auto est = sampled_matchup_equity(a, b, options.mc_boards, rng);
      rec.equity = est.equity;
      rec.std_error = est.std_error;
    }
    table.records_[i] = rec;
    std::size_t d = done.fetch_add(1) + 1;
    if (options.progress && worker == 0 && (d % 256 == 0 || d == matchups.size())) {
      std::lock_guard lock(progress_mu);
      options.progress(d, matchups.size());
    }
  });
  if (options.progress) options.progress(matchups.size(), matchups.size());
  table.expand();
  return table;
}

PreflopEquityTable PreflopEquityTable::from_records(TableMethod method, uint64_t seed,
                                                   uint64_t boards,
                                                   std::vector<MatchupRecord> records) {
  PreflopEquityTable table;
  table.method_ = method;
  table.seed_ = seed;
  table.boards_ = boards;
  table.records_ = std::move(records);
  table.expand();
  return table;
}

void PreflopEquityTable::expand() {
  const std::size_t n = static_cast<std::size_t>(kNumHands) * kNumHands;
  std::vector<int32_t> by_key(n, -1);
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!(r.equity >= 0.0 && r.equity <= 1.0) || !(r.std_error >= 0.0)) {
      throw TableError("preflop table record out of range");
    }
    by_key[static_cast<std::size_t>(r.a.value()) * kNumHands + r.b.value()] =
        static_cast<int32_t>(i);
  }
  equity_.assign(n, std::numeric_limits<double>::quiet_NaN());
  slot_.assign(n, std::numeric_limits<int32_t>::min());
  for (int a = 0; a < kNumHands; ++a) {
    for (int b = 0; b < kNumHands; ++b) {
      if (!disjoint(HandIndex(a), HandIndex(b))) continue;
      Canonical c = canonicalize(HandIndex(a), HandIndex(b));
      int32_t idx = by_key[c.key];
      if (idx < 0) throw TableError("preflop table is missing a canonical matchup");
      const std::size_t at = static_cast<std::size_t>(a) * kNumHands + b;
      equity_[at] = c.flipped ? 1.0 - records_[idx].equity : records_[idx].equity;
      slot_[at] = idx;
    }
  }
}

double PreflopEquityTable::std_error(HandIndex a, HandIndex b) const {
  int32_t idx = slot_[static_cast<std::size_t>(a.value()) * kNumHands + b.value()];
  if (idx < 0) throw DomainError("preflop table: overlapping hands");
  return records_[idx].std_error;
}

bool PreflopEquityTable::contains(HandIndex a, HandIndex b) const {
  return slot_[static_cast<std::size_t>(a.value()) * kNumHands + b.value()] >= 0;
}

void PreflopEquityTable::save(const std::string& path) const {
  std::string buf;
  buf.append(kMagic, sizeof(kMagic));
  put<uint32_t>(buf, kVersion);
  put<uint32_t>(buf, static_cast<uint32_t>(method_));
  put<uint64_t>(buf, seed_);
  put<uint64_t>(buf, boards_);
  put<uint64_t>(buf, records_.size());
  for (const auto& r : records_) {
    put<uint16_t>(buf, static_cast<uint16_t>(r.a.value()));
    put<uint16_t>(buf, static_cast<uint16_t>(r.b.value()));
    put<double>(buf, r.equity);
    put<double>(buf, r.std_error);
  }
  put<uint32_t>(buf, crc_of(buf));
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TableError("cannot open " + path + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw TableError("write failed: " + path);
}

PreflopEquityTable PreflopEquityTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError("cannot open preflop table " + path);
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kHeaderBytes + 4 || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0) {
    throw TableError(path + ": not a preflop equity table");
  }
  std::size_t pos = buf.size() - 4;
  const uint32_t stored_crc = get<uint32_t>(buf, pos);
  if (stored_crc != crc_of(buf.substr(0, buf.size() - 4))) {
    throw TableError(path + ": checksum mismatch, rebuild the table");
  }
  pos = sizeof(kMagic);
  PreflopEquityTable table;
  if (get<uint32_t>(buf, pos) != kVersion) throw TableError(path + ": unsupported version");
  uint32_t method = get<uint32_t>(buf, pos);
  if (method > 1) throw TableError(path + ": unknown method tag");
  table.method_ = static_cast<TableMethod>(method);
  table.seed_ = get<uint64_t>(buf, pos);
  table.boards_ = get<uint64_t>(buf, pos);
  const uint64_t count = get<uint64_t>(buf, pos);
  if (buf.size() != kHeaderBytes + count * kRecordBytes + 4) {
    throw TableError(path + ": truncated table");
  }
  table.records_.resize(count);
  for (auto& r : table.records_) {
    uint16_t a = get<uint16_t>(buf, pos), b = get<uint16_t>(buf, pos);
    if (a >= kNumHands || b >= kNumHands) throw TableError(path + ": bad hand index");
    r.a = HandIndex(a);
    r.b = HandIndex(b);
    r.equity = get<double>(buf, pos);
    r.std_error = get<double>(buf, pos);
  }
  table.expand();
  return table;
}

}  // namespace lbr
