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

#include "lbr/hand_evaluator.h"

#include <unordered_map>

namespace lbr {

namespace {

using Counts = std::array<uint8_t, 13>;

uint32_t pack(HandCategory category, std::initializer_list<int> ranks) {
  uint32_t v = static_cast<uint32_t>(category);
  int n = 0;
  for (int r : ranks) {
    v = (v << 4) | static_cast<uint32_t>(r);
    ++n;
  }
  for (; n < 5; ++n) v <<= 4;
  return v;
}

// Top card of the best straight in a rank-presence mask (bit i = rank i+2),
// 0 if none. The wheel A-2-3-4-5 reports 5.
int straight_top(uint32_t mask) {
  uint32_t m = (mask << 2) | ((mask >> 12) & 1) << 1;  // bit r = rank r, ace also at 1
  for (int top = 14; top >= 5; --top) {
    uint32_t run = 0x1Fu << (top - 4);
    if ((m & run) == run) return top;
  }
  return 0;
}

uint32_t straight_value(HandCategory category, int top) {
  return pack(category, {top, top - 1, top - 2, top - 3, top == 5 ? 1 : top - 4});
}

// Highest `n` ranks from `mask` excluding ranks in `skip`, most significant first.
std::vector<int> top_ranks(uint32_t mask, uint32_t skip, int n) {
  std::vector<int> out;
  for (int i = 12; i >= 0 && static_cast<int>(out.size()) < n; --i) {
    if ((mask >> i & 1) && !(skip >> i & 1)) out.push_back(i + 2);
  }
  return out;
}

uint32_t non_flush_value(const Counts& c) {
  uint32_t present = 0;
  int quad = 0, trips[2] = {0, 0}, pairs[3] = {0, 0, 0};
  int nt = 0, np = 0;
  for (int i = 12; i >= 0; --i) {
    if (c[i] == 0) continue;
    present |= 1u << i;
    int r = i + 2;
    if (c[i] == 4 && quad == 0) quad = r;
    else if (c[i] == 3 && nt < 2) trips[nt++] = r;
    else if (c[i] == 2 && np < 3) pairs[np++] = r;
  }
  auto bit = [](int r) { return 1u << (r - 2); };

  if (quad) {
    int k = top_ranks(present, bit(quad), 1)[0];
    return pack(HandCategory::kFourOfAKind, {quad, quad, quad, quad, k});
  }
  if (nt >= 1 && (nt >= 2 || np >= 1)) {
    int t = trips[0];
    int p = nt >= 2 ? trips[1] : pairs[0];
    if (nt >= 2 && np >= 1 && pairs[0] > p) p = pairs[0];
    return pack(HandCategory::kFullHouse, {t, t, t, p, p});
  }
  if (int top = straight_top(present)) {
    return straight_value(HandCategory::kStraight, top);
  }
  if (nt == 1) {
    auto k = top_ranks(present, bit(trips[0]), 2);
    return pack(HandCategory::kThreeOfAKind, {trips[0], trips[0], trips[0], k[0], k[1]});
  }
  if (np >= 2) {
    int hi = pairs[0], lo = pairs[1];
    int k = top_ranks(present, bit(hi) | bit(lo), 1)[0];
    return pack(HandCategory::kTwoPair, {hi, hi, lo, lo, k});
  }
  if (np == 1) {
    auto k = top_ranks(present, bit(pairs[0]), 3);
    return pack(HandCategory::kPair, {pairs[0], pairs[0], k[0], k[1], k[2]});
  }
  auto k = top_ranks(present, 0, 5);
  return pack(HandCategory::kHighCard, {k[0], k[1], k[2], k[3], k[4]});
}

uint32_t flush_mask_value(uint32_t mask) {
  if (std::popcount(mask) < 5) return 0;
  if (int top = straight_top(mask)) {
    return straight_value(HandCategory::kStraightFlush, top);
  }
  auto k = top_ranks(mask, 0, 5);
  return pack(HandCategory::kFlush, {k[0], k[1], k[2], k[3], k[4]});
}

}  // namespace

const HandEvaluator& HandEvaluator::Get() {
  static const HandEvaluator instance;
  return instance;
}

HandEvaluator::HandEvaluator() {
  std::array<uint32_t, 13> pow5{};
  pow5[0] = 1;
  for (int i = 1; i < 13; ++i) pow5[i] = pow5[i - 1] * 5;

  std::vector<Counts> counts{Counts{}};
  std::vector<uint32_t> keys{0};
  std::unordered_map<uint32_t, State> ids{{0, kEmpty}};
  for (std::size_t s = 0; s < counts.size(); ++s) {
    int total = 0;
    for (auto v : counts[s]) total += v;
    for (int r = 0; r < 13; ++r) {
      State target = kEmpty;
      if (total < 7 && counts[s][r] < 4) {
        uint32_t key = keys[s] + pow5[r];
        auto [it, inserted] = ids.try_emplace(key, static_cast<State>(counts.size()));
        if (inserted) {
          Counts c = counts[s];
          ++c[r];
          counts.push_back(c);
          keys.push_back(key);
        }
        target = it->second;
      }
      next_.push_back(target);
    }
  }
  value_.resize(counts.size());
  for (std::size_t s = 0; s < counts.size(); ++s) {
    int total = 0;
    for (auto v : counts[s]) total += v;
    value_[s] = total >= 5 ? non_flush_value(counts[s]) : 0;
  }
  for (uint32_t mask = 0; mask < flush_.size(); ++mask) {
    flush_[mask] = flush_mask_value(mask);
  }
}

uint32_t HandEvaluator::evaluate(std::span<const Card, 7> cards) const {
  State s = kEmpty;
  std::array<uint32_t, 4> suit_mask{};
  for (Card c : cards) {
    s = add(s, c);
    suit_mask[c.suit()] |= 1u << (c.rank() - 2);
  }
  uint32_t v = value(s);
  for (uint32_t m : suit_mask) {
    if (std::popcount(m) >= 5) {
      uint32_t f = flush_[m];
      if (f > v) v = f;
    }
  }
  return v;
}

FullBoard::FullBoard(std::span<const Card> board) : ev_(&HandEvaluator::Get()) {
  std::array<int, 4> suit_count{};
  std::array<uint32_t, 4> suit_mask{};
  for (Card c : board) {
    state_ = ev_->add(state_, c);
    ++suit_count[c.suit()];
    suit_mask[c.suit()] |= 1u << (c.rank() - 2);
  }
  for (int s = 0; s < 4; ++s) {
    if (suit_count[s] >= 3) {
      flush_suit_ = s;
      flush_mask_ = suit_mask[s];
    }
  }
}

}  // namespace lbr
