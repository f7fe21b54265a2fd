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

// Reference results at desk scale. Seeds are fixed in advance;
// these are allowed to fail when the reference is not reproducible.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dpmr/cli.hpp"
#include "dpmr/csv.hpp"
#include "dpmr/datagen.hpp"
#include "dpmr/irls.hpp"
#include "dpmr/smoothing.hpp"

namespace dpmr {
namespace {

constexpr std::uint64_t kSeed = 20260101;

Normalized default_generator_data(std::size_t n, std::uint64_t stream) {
  GeneratorSpec spec;
  spec.n = n;
  RngStream rng(kSeed, stream);
  return normalize(generate(spec, rng).table);
}

void expect_close(const Theta& got, const Theta& want, double tol) {
  EXPECT_NEAR(got.mu, want.mu, tol) << "mu";
  for (std::size_t k = 0; k < want.d(); ++k) {
    EXPECT_NEAR(got.beta[k], want.beta[k], tol) << "beta" << k + 1;
  }
}

TEST(ReferenceResults, SmoothedBaselineAtN5000) {
  const Normalized nz = default_generator_data(5000, 1);
  const Theta fit = unscale_theta(fit_baseline_smoothed(nz.data, Alg1Config{}), nz.scaling);
  expect_close(fit, GeneratorSpec{}.truth(), 0.2);
}

TEST(ReferenceResults, IrlsIterationCountAtN5000) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Normalized nz = default_generator_data(5000, 10 + s);
    const IrlsTrace tr = irls_fit(nz.data, Alg2Config{});
    EXPECT_TRUE(tr.converged);
    EXPECT_LT(tr.iterations, 30u);
  }
}

TEST(ReferenceResults, Alg2AtFiveMillion) {
  const Normalized nz = default_generator_data(5000000, 2);
  RngStream rng(kSeed, 3);
  const Alg2Report rep = fit_alg2(nz.data, Alg2Config{}, rng);
  const Theta fit = unscale_theta(rep.theta, nz.scaling);
  // Reference accuracy: (1.9417, 3.0327, 0.0029, -3.9205).
  expect_close(fit, GeneratorSpec{}.truth(), 0.1);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ReferenceResults, CliDefaultsAndAlg1Row) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "dpmr_reference";
  fs::create_directories(dir);
  const std::string data = (dir / "data.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(cli::run({"generate", "--seed", std::to_string(kSeed), "--out", data}, out, err),
            cli::kExitOk)
      << err.str();
  const Table t = read_csv(fs::path(data));
  EXPECT_EQ(t.n, 5000u);
  EXPECT_EQ(t.d, 3u);
  const std::string manifest = slurp(data + ".manifest");
  EXPECT_NE(manifest.find("true_theta=2,3,0,-4"), std::string::npos) << manifest;

  std::ostringstream fit_out, fit_err;
  ASSERT_EQ(cli::run({"fit", "--algo", "alg1", "--data", data, "--seed", std::to_string(kSeed),
                      "--no-timing"},
                     fit_out, fit_err),
            cli::kExitOk)
      << fit_err.str();
  // Reference row: 2.0684, 3.0007, -0.0295, -4.0835.
  const Theta reference(2.0684, {3.0007, -0.0295, -4.0835});
  std::istringstream rows(fit_out.str());
  std::string line;
  std::getline(rows, line);
  std::vector<double> est;
  while (std::getline(rows, line)) {
    std::stringstream ls(line);
    std::string cell;
    for (int c = 0; c < 3; ++c) std::getline(ls, cell, ',');
    est.push_back(std::stod(cell));
  }
  ASSERT_EQ(est.size(), 4u);
  expect_close(Theta::from_stacked(est), reference, 0.5);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace dpmr
