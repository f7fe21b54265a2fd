//
// Copyright 2026 The dpmedreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpmr/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace dpmr {
namespace {

std::string line_ref(std::size_t line) { return "line " + std::to_string(line); }

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string expected_name(std::size_t col, std::size_t d) {
  return col == d ? "y" : "x" + std::to_string(col + 1);
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t col,
                  std::size_t d) {
  const std::string where = line_ref(line) + ", column " + std::to_string(col + 1) +
                            " (" + expected_name(col, d) + ")";
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last) {
    throw CsvError(where + ": cannot parse '" + std::string(cell) + "' as a number");
  }
  if (!std::isfinite(v)) throw CsvError(where + ": non-finite value");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return {buf, ptr};
}

void write_csv(std::ostream& out, const Table& table) {
  table.validate();
  for (std::size_t k = 0; k < table.d; ++k) out << 'x' << k + 1 << ',';
  out << "y\n";
  for (std::size_t i = 0; i < table.n; ++i) {
    for (std::size_t k = 0; k < table.d; ++k) out << format_double(table.at(i, k)) << ',';
    out << format_double(table.y[i]) << '\n';
  }
  if (!out) throw Error("write_csv: stream error");
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_csv(out, table);
}

Table read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("line 1: missing header");
  if (!line.empty() && line.back() == '\r') {
    throw CsvError("line 1: CRLF line endings are not accepted");
  }
  const auto header = split(line);
  if (header.size() < 2) throw CsvError("line 1: header needs x1 and y at least");
  const std::size_t d = header.size() - 1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != expected_name(c, d)) {
      throw CsvError("line 1, column " + std::to_string(c + 1) + ": expected '" +
                     expected_name(c, d) + "', found '" + std::string(header[c]) + "'");
    }
  }

  std::vector<std::vector<double>> cols(d);
  std::vector<double> y;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw CsvError(line_ref(lineno) + ": empty row");
    }
    const auto cells = split(line);
    if (cells.size() != d + 1) {
      throw CsvError(line_ref(lineno) + ": expected " + std::to_string(d + 1) +
                     " fields, found " + std::to_string(cells.size()));
    }
    for (std::size_t k = 0; k < d; ++k) cols[k].push_back(parse_cell(cells[k], lineno, k, d));
    y.push_back(parse_cell(cells[d], lineno, d, d));
  }
  if (y.empty()) throw CsvError("no data rows");

  Table table{y.size(), d, {}, std::move(y)};
  table.x.reserve(table.n * d);
  for (const auto& col : cols) table.x.insert(table.x.end(), col.begin(), col.end());
  return table;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return read_csv(in);
}

}  // namespace dpmr
