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

#include "zeno/validation.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

// Runs every acceptance check and prints one line per check.
// Usage: zeno_acceptance [seed]
int main(int argc, char** argv) {
  zeno::validation::Options opts;
  if (argc > 1) opts.seed = std::stoull(argv[1]);
  int failed = 0;
  zeno::validation::run_all(opts, [&](const zeno::validation::CheckResult& r) {
    if (!r.passed) ++failed;
    std::cout << zeno::validation::format(r) << std::endl;
  });
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed")
            << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
