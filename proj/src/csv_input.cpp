// Copyright 2026 The dirstat Authors.
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

#include "dirstat/csv_input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dirstat/persist.hpp"

namespace dirstat::csv {

namespace {

struct Row {
  std::size_t line = 0;
  std::vector<std::string_view> cells;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    auto cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
    cells.push_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

// Returns the header column index of each requested name, then the data rows.
std::vector<Row> read_table(std::string_view text, std::span<const std::string_view> columns,
                            std::vector<std::size_t>& index) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Row> rows;
  std::size_t line_no = 0, pos = 0;
  bool have_header = false;
  std::size_t width = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    auto cells = split(line);
    if (!have_header) {
      have_header = true;
      width = cells.size();
      index.clear();
      for (auto name : columns) {
        std::size_t found = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
          if (cells[i] == name) found = i;
        if (found == cells.size()) throw ParseError(line_no, "missing column '" + std::string(name) + "'");
        index.push_back(found);
      }
    } else {
      if (cells.size() != width)
        throw ParseError(line_no, "expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()));
      rows.push_back({line_no, std::move(cells)});
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(1, "empty file: missing header");
  return rows;
}

double parse_number(const Row& row, std::size_t col, std::string_view name) {
  const auto cell = row.cells[col];
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v))
    throw ParseError(row.line, "column '" + std::string(name) + "': not a finite number: '" + std::string(cell) + "'");
  return v;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

roc::PairedDiagnosticDataset parse_roc(std::string_view text) {
  static constexpr std::string_view kColumns[] = {"class", "marker_x", "marker_y"};
  std::vector<std::size_t> idx;
  const auto rows = read_table(text, kColumns, idx);
  std::vector<roc::Subject> subjects;
  for (const auto& row : rows) {
    const auto cls = row.cells[idx[0]];
    if (cls != "0" && cls != "1")
      throw ParseError(row.line, "column 'class' must be 0 or 1, found '" + std::string(cls) + "'");
    subjects.push_back({cls == "1", parse_number(row, idx[1], "marker_x"), parse_number(row, idx[2], "marker_y")});
  }
  return roc::PairedDiagnosticDataset(std::move(subjects));
}

roc::PairedDiagnosticDataset read_roc(const std::filesystem::path& path) { return parse_roc(slurp(path)); }

std::vector<survival::SurvivalRecord> parse_survival(std::string_view text) {
  static constexpr std::string_view kColumns[] = {"time", "event", "group"};
  std::vector<std::size_t> idx;
  const auto rows = read_table(text, kColumns, idx);
  std::vector<survival::SurvivalRecord> records;
  for (const auto& row : rows) {
    survival::SurvivalRecord r;
    r.time = parse_number(row, idx[0], "time");
    if (!(r.time > 0.0)) throw ParseError(row.line, "column 'time' must be positive");
    const auto event = row.cells[idx[1]];
    if (event != "0" && event != "1")
      throw ParseError(row.line, "column 'event' must be 0 or 1, found '" + std::string(event) + "'");
    r.event = event == "1";
    const auto group = row.cells[idx[2]];
    if (group != "A" && group != "B")
      throw ParseError(row.line, "column 'group' must be A or B, found '" + std::string(group) + "'");
    r.group = group == "A" ? survival::Group::A : survival::Group::B;
    records.push_back(r);
  }
  if (records.empty()) throw DegenerateData("no survival records");
  return records;
}

std::vector<survival::SurvivalRecord> read_survival(const std::filesystem::path& path) {
  return parse_survival(slurp(path));
}

std::string format_survival(std::span<const survival::SurvivalRecord> records) {
  std::string out = "time,event,group\n";
  for (const auto& r : records)
    out += persist::format_double(r.time) + (r.event ? ",1," : ",0,") + (r.group == survival::Group::A ? "A" : "B") + "\n";
  return out;
}

std::string format_roc(const roc::PairedDiagnosticDataset& data) {
  std::string out = "class,marker_x,marker_y\n";
  for (const auto& s : data.subjects())
    out += std::string(s.positive ? "1," : "0,") + persist::format_double(s.marker_x) + "," +
           persist::format_double(s.marker_y) + "\n";
  return out;
}

}  // namespace dirstat::csv
