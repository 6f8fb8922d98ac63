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

// Property suites over the whole library, run by `lbr-bench selfcheck`.

#ifndef LBR_SELFCHECK_H_
#define LBR_SELFCHECK_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lbr {

class PreflopEquityTable;

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelfcheckOptions {
  uint64_t seed = 1;
  int64_t playouts = 100000;
  int64_t decisions = 100000;
  int threads = 2;
  // Enables preflop LBR decisions in the legality fuzz when set.
  const PreflopEquityTable* preflop = nullptr;
  // Called as each check finishes.
  std::function<void(const CheckResult&)> on_result;
};

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options);

}  // namespace lbr

#endif  // LBR_SELFCHECK_H_
