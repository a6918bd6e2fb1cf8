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

#include "zeno/analysis.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zeno::io {

inline constexpr std::string_view kSchemaVersion = "zeno-lab/1";

enum class Format { csv, json };

/// One named column, numeric or text.
struct Column {
  std::string name;
  std::vector<double> numbers;
  std::vector<std::string> text;
  bool is_text = false;

  std::size_t size() const noexcept { return is_text ? text.size() : numbers.size(); }
};

struct Table {
  std::vector<Column> columns;

  Table& add(std::string name, std::vector<double> values);
  Table& add_text(std::string name, std::vector<std::string> values);
  std::size_t rows() const;
};

/// Run description embedded in every artifact.
struct Metadata {
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
};

/// 17 significant digits, shortest of fixed/scientific, locale independent.
std::string format_double(double v);

/// Throws data_integrity on NaN or infinity anywhere in the table.
void check_finite(const Table& table);
void check_finite(const analysis::Heatmap& map);

/// CSV: one '#' metadata line, the header, then one line per row.
std::string series_csv(const Table& table, const Metadata& meta);
std::string series_json(const Table& table, const Metadata& meta);

/// CSV: '#' metadata line, then `gamma_over_crit,<times...>`, then one row per
/// gamma with gamma/gamma_crit in the first cell.
std::string matrix_csv(const analysis::Heatmap& map, const Metadata& meta);
std::string matrix_json(const analysis::Heatmap& map, const Metadata& meta);

/// Validates, renders and writes atomically. An empty path writes to stdout.
void write_series(const Table& table, const Metadata& meta, const std::string& path, Format f);
void write_matrix(const analysis::Heatmap& map, const Metadata& meta, const std::string& path,
                  Format f);

/// Write to a temporary file in the same directory, then rename over `path`.
void write_atomic(const std::string& path, std::string_view content);

/// Numeric CSV reader matching series_csv: skips '#' lines, returns the header
/// and the columns. Parse error on malformed cells.
Table read_csv(std::string_view text);

}  // namespace zeno::io
