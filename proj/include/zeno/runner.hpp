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

#include "zeno/config.hpp"
#include "zeno/io.hpp"

#include <string>

namespace zeno::runner {

struct RunSummary {
  std::string mode;
  std::size_t trajectories = 0;
  double wall_seconds = 0.0;
  std::string out;
  /// Mode-specific extra, e.g. the located critical rate.
  std::string note;
};

/// Rendered artifacts of a run, before anything is written.
struct Artifacts {
  io::Table table;
  std::optional<analysis::Heatmap> heatmap;
  /// Pulsed unitary path between measurements, written next to the main output.
  std::optional<io::Table> path;
  io::Metadata meta;
  std::string note;
};

/// Computes the outputs of a validated configuration.
Artifacts compute(const config::RunConfig& cfg);

/// compute + atomic writes. The path table goes to `<out>.path.<ext>`.
RunSummary run(const config::RunConfig& cfg);

/// `mode=... M=... wall=...s out=...` plus the note.
std::string summary_line(const RunSummary& s);

}  // namespace zeno::runner
