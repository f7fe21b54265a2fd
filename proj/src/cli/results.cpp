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

#include "cli/results.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "dpmr/csv.hpp"

namespace dpmr::cli {
namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string maybe(const std::optional<double>& v, bool markdown) {
  if (!v) return "NA";
  return markdown ? fixed4(*v) : format_double(*v);
}

double component(const Theta& t, std::size_t j) {
  return j == 0 ? t.mu : t.beta[j - 1];
}

}  // namespace

std::string parameter_name(std::size_t j) {
  return j == 0 ? "mu" : "beta" + std::to_string(j);
}

std::string display_name(const std::string& algo) {
  if (algo == "alg1") return "Algorithm 1";
  if (algo == "alg2") return "Algorithm 2";
  if (algo == "alg3") return "Algorithm 3";
  if (algo == "baseline-smooth") return "Baseline (smoothed)";
  if (algo == "baseline-irls") return "Baseline (IRLS)";
  return algo;
}

void write_fit(std::ostream& out, const FitResult& r, Format format) {
  const std::size_t dims = r.estimate.d() + 1;
  if (format == Format::kCsv) {
    out << "algorithm,parameter,estimate,true_value,elapsed_seconds,run_id\n";
    for (std::size_t j = 0; j < dims; ++j) {
      out << r.algorithm << ',' << parameter_name(j) << ','
          << format_double(component(r.estimate, j)) << ','
          << (r.truth ? format_double(component(*r.truth, j)) : "NA") << ','
          << maybe(r.elapsed_seconds, false) << ',' << r.run_id << '\n';
    }
    return;
  }
  out << "| | " << display_name(r.algorithm) << " | True value |\n|---|---|---|\n";
  for (std::size_t j = 0; j < dims; ++j) {
    out << "| " << parameter_name(j) << " | " << fixed4(component(r.estimate, j))
        << " | " << (r.truth ? fixed4(component(*r.truth, j)) : "NA") << " |\n";
  }
  out << "| time(s) | " << maybe(r.elapsed_seconds, true) << " | |\n";
  out << "\nrun_id: " << r.run_id << '\n';
}

double median(std::vector<double> v) {
  if (v.empty()) throw InvalidArgument("median of an empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void write_bench(std::ostream& out, const std::vector<BenchCell>& cells,
                 const Theta& truth, Format format, const std::string& run_id) {
  const std::size_t dims = truth.d() + 1;
  if (format == Format::kCsv) {
    out << "n,algorithm,replicates,parameter,median_estimate,true_value,"
           "median_elapsed_seconds,median_l1_error,run_id\n";
    for (const BenchCell& c : cells) {
      for (std::size_t j = 0; j < dims; ++j) {
        out << c.n << ',' << c.algorithm << ',' << c.replicates << ','
            << parameter_name(j) << ',' << format_double(component(c.median_estimate, j))
            << ',' << format_double(component(truth, j)) << ','
            << maybe(c.median_elapsed, false) << ',' << format_double(c.median_l1_error)
            << ',' << run_id << '\n';
      }
    }
    return;
  }

  std::map<std::size_t, std::vector<const BenchCell*>> by_n;
  for (const BenchCell& c : cells) by_n[c.n].push_back(&c);
  bool first = true;
  for (const auto& [n, group] : by_n) {
    if (!first) out << '\n';
    first = false;
    out << "### n = " << n << " (" << group.front()->replicates
        << " replicates, medians)\n\n|";
    for (const BenchCell* c : group) out << " | " << display_name(c->algorithm);
    out << " | True value |\n|---|";
    for (std::size_t i = 0; i <= group.size(); ++i) out << "---|";
    out << '\n';
    for (std::size_t j = 0; j < dims; ++j) {
      out << "| " << parameter_name(j);
      for (const BenchCell* c : group) out << " | " << fixed4(component(c->median_estimate, j));
      out << " | " << fixed4(component(truth, j)) << " |\n";
    }
    out << "| time(s)";
    for (const BenchCell* c : group) out << " | " << maybe(c->median_elapsed, true);
    out << " | |\n| L1 error";
    for (const BenchCell* c : group) out << " | " << fixed4(c->median_l1_error);
    out << " | |\n";
  }
  out << "\nrun_id: " << run_id << '\n';
}

}  // namespace dpmr::cli
