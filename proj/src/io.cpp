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

#include "zeno/io.hpp"

#include "zeno/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace zeno::io {

namespace {

std::string metadata_line(const Metadata& meta) {
  std::string s = "# ";
  s += kSchemaVersion;
  s += " mode=" + meta.mode + " seed=" + std::to_string(meta.seed);
  for (const auto& [k, v] : meta.config) {
    if (k != "mode" && k != "seed") s += " " + k + "=" + v;
  }
  s += '\n';
  return s;
}

nlohmann::ordered_json metadata_json(const Metadata& meta) {
  nlohmann::ordered_json j;
  j["schema"] = std::string(kSchemaVersion);
  j["mode"] = meta.mode;
  j["seed"] = meta.seed;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta.config) cfg[k] = v;
  j["config"] = cfg;
  return j;
}

void check_value(double v, const std::string& where) {
  if (!std::isfinite(v)) {
    fail(ErrorKind::data_integrity, "non-finite value in " + where + "; nothing was written");
  }
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) fail(ErrorKind::io, "failed writing to stdout");
    return;
  }
  write_atomic(path, content);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Table& Table::add(std::string name, std::vector<double> values) {
  Column c;
  c.name = std::move(name);
  c.numbers = std::move(values);
  columns.push_back(std::move(c));
  return *this;
}

Table& Table::add_text(std::string name, std::vector<std::string> values) {
  Column c;
  c.name = std::move(name);
  c.text = std::move(values);
  c.is_text = true;
  columns.push_back(std::move(c));
  return *this;
}

std::size_t Table::rows() const {
  if (columns.empty()) return 0;
  const std::size_t n = columns.front().size();
  for (const Column& c : columns) {
    if (c.size() != n) {
      fail(ErrorKind::data_integrity, "column '" + c.name + "' has a different length");
    }
  }
  return n;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc()) fail(ErrorKind::data_integrity, "number formatting failed");
  return {buf, res.ptr};
}

void check_finite(const Table& table) {
  table.rows();
  for (const Column& c : table.columns) {
    if (c.is_text) continue;
    for (double v : c.numbers) check_value(v, "column '" + c.name + "'");
  }
}

void check_finite(const analysis::Heatmap& map) {
  for (double v : map.gamma_over_crit) check_value(v, "gamma axis");
  for (double v : map.times) check_value(v, "time axis");
  for (const auto& row : map.values) {
    if (row.size() != map.times.size()) {
      fail(ErrorKind::data_integrity, "heatmap row length differs from the time axis");
    }
    for (double v : row) check_value(v, "heatmap");
  }
  if (map.values.size() != map.gamma_over_crit.size()) {
    fail(ErrorKind::data_integrity, "heatmap row count differs from the gamma axis");
  }
}

std::string series_csv(const Table& table, const Metadata& meta) {
  const std::size_t n = table.rows();
  std::string s = metadata_line(meta);
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) s += ',';
    s += table.columns[c].name;
  }
  s += '\n';
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) s += ',';
      const Column& col = table.columns[c];
      s += col.is_text ? col.text[r] : format_double(col.numbers[r]);
    }
    s += '\n';
  }
  return s;
}

std::string series_json(const Table& table, const Metadata& meta) {
  table.rows();
  nlohmann::ordered_json j = metadata_json(meta);
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (const Column& c : table.columns) {
    cols.push_back(c.name);
    data[c.name] = c.is_text ? nlohmann::ordered_json(c.text) : nlohmann::ordered_json(c.numbers);
  }
  j["columns"] = cols;
  j["data"] = data;
  return j.dump(1) + "\n";
}

std::string matrix_csv(const analysis::Heatmap& map, const Metadata& meta) {
  std::string s = metadata_line(meta);
  s += "gamma_over_crit";
  for (double t : map.times) s += "," + format_double(t);
  s += '\n';
  for (std::size_t r = 0; r < map.values.size(); ++r) {
    s += format_double(map.gamma_over_crit[r]);
    for (double v : map.values[r]) s += "," + format_double(v);
    s += '\n';
  }
  return s;
}

std::string matrix_json(const analysis::Heatmap& map, const Metadata& meta) {
  nlohmann::ordered_json j = metadata_json(meta);
  j["gamma_over_crit"] = map.gamma_over_crit;
  j["times"] = map.times;
  j["p1"] = map.values;
  return j.dump(1) + "\n";
}

void write_series(const Table& table, const Metadata& meta, const std::string& path, Format f) {
  check_finite(table);
  emit(path, f == Format::csv ? series_csv(table, meta) : series_json(table, meta));
}

void write_matrix(const analysis::Heatmap& map, const Metadata& meta, const std::string& path,
                  Format f) {
  check_finite(map);
  emit(path, f == Format::csv ? matrix_csv(map, meta) : matrix_json(map, meta));
}

void write_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp =
      target.parent_path() /
      (target.filename().string() + ".tmp." + std::to_string(static_cast<long>(::getpid())));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      fail(ErrorKind::io, "write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::io, "cannot move output into place at " + path);
  }
}

Table read_csv(std::string_view text) {
  Table table;
  bool have_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    if (!have_header) {
      for (auto c : cells) table.add(std::string(c), {});
      have_header = true;
      continue;
    }
    if (cells.size() != table.columns.size()) {
      fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(table.columns.size()) + " cells");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double v = 0.0;
      const auto res = std::from_chars(cells[i].data(), cells[i].data() + cells[i].size(), v);
      if (res.ec != std::errc() || res.ptr != cells[i].data() + cells[i].size()) {
        fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": malformed number '" +
                                   std::string(cells[i]) + "'");
      }
      table.columns[i].numbers.push_back(v);
    }
  }
  return table;
}

}  // namespace zeno::io
