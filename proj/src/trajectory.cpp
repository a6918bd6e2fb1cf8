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

#include "zeno/trajectory.hpp"

#include "zeno/error.hpp"

#include <cmath>

namespace zeno {

std::vector<double> exponential_filter(const std::vector<double>& values, double dt,
                                       double tau) {
  if (!(dt > 0.0) || !(tau > 0.0)) {
    fail(ErrorKind::invalid_argument, "filter needs dt > 0 and tau > 0");
  }
  std::vector<double> out;
  out.reserve(values.size());
  const double alpha = -std::expm1(-dt / tau);
  double y = values.empty() ? 0.0 : values.front();
  for (const double v : values) {
    y += alpha * (v - y);
    out.push_back(y);
  }
  return out;
}

}  // namespace zeno
