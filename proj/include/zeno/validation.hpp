// Copyright 2026 The zeno-lab Authors
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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace zeno::validation {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  /// Master seed shared by every Monte Carlo check.
  std::uint64_t seed = 2026;
  /// 0 selects the default worker count.
  std::size_t workers = 0;
};

/// Number of acceptance checks (ids 1..count).
int check_count();

/// Runs one acceptance check. Exceptions are reported as failures.
CheckResult run_check(int id, const Options& opts);

/// Runs all checks in order, calling `report` after each.
std::vector<CheckResult> run_all(const Options& opts,
                                 const std::function<void(const CheckResult&)>& report = {});

/// `[PASS] 3 critical-rate location: ... (0.12 s)`
std::string format(const CheckResult& r);

}  // namespace zeno::validation
