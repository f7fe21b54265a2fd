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

#ifndef DPMR_CSV_HPP_
#define DPMR_CSV_HPP_

// Plain CSV for design tables: header "x1,...,xd,y", LF line ends, '.' as
// the decimal point, shortest round-trip formatting.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dpmr/datagen.hpp"

namespace dpmr {

// Thrown for malformed input; the message names the line and column.
class CsvError : public Error {
 public:
  using Error::Error;
};

std::string format_double(double v);

void write_csv(std::ostream& out, const Table& table);
void write_csv(const std::filesystem::path& path, const Table& table);

Table read_csv(std::istream& in);
Table read_csv(const std::filesystem::path& path);

}  // namespace dpmr

#endif  // DPMR_CSV_HPP_
