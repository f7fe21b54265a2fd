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

#ifndef DPMR_CLI_RESULTS_HPP_
#define DPMR_CLI_RESULTS_HPP_

// Result tables in original units, as CSV or markdown.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dpmr/model.hpp"

namespace dpmr::cli {

enum class Format { kCsv, kMarkdown };

// "mu", "beta1", "beta2", ...
std::string parameter_name(std::size_t j);

// "Algorithm 1", "Baseline (smoothed)", ...
std::string display_name(const std::string& algo);

struct FitResult {
  std::string algorithm;
  Theta estimate;
  std::optional<Theta> truth;
  // Unset when timing is disabled.
  std::optional<double> elapsed_seconds;
  std::string run_id;
};

// One row per parameter: algorithm,parameter,estimate,true_value,
// elapsed_seconds,run_id.
void write_fit(std::ostream& out, const FitResult& r, Format format);

struct BenchCell {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t replicates = 0;
  Theta median_estimate;
  std::optional<double> median_elapsed;
  double median_l1_error = 0.0;
};

double median(std::vector<double> v);

// Markdown: one table per n with parameters as rows and algorithms as
// columns, then time and error rows. CSV: one row per (n, algorithm,
// parameter).
void write_bench(std::ostream& out, const std::vector<BenchCell>& cells,
                 const Theta& truth, Format format, const std::string& run_id);

}  // namespace dpmr::cli

#endif  // DPMR_CLI_RESULTS_HPP_
