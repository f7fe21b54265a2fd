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

#include "dpmr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "cli/manifest.hpp"
#include "cli/results.hpp"
#include "dpmr/csv.hpp"
#include "dpmr/datagen.hpp"
#include "dpmr/gcd.hpp"
#include "dpmr/irls.hpp"
#include "dpmr/kernels.hpp"
#include "dpmr/smoothing.hpp"
#include "dpmr/verification.hpp"

namespace dpmr::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum StreamTag : std::uint64_t {
  kGenerateStream = 1,
  kFitStream = 2,
  kBenchDataStream = 3,
  kBenchFitStream = 4,
  kProbeStream = 5,
};

constexpr std::uint64_t kFallbackSeed = 20260101;

const std::vector<std::string> kAlgos = {"alg1", "alg2", "alg3",
                                         "baseline-smooth", "baseline-irls"};

std::uint64_t algo_index(const std::string& algo) {
  return static_cast<std::uint64_t>(
      std::find(kAlgos.begin(), kAlgos.end(), algo) - kAlgos.begin());
}

std::uint64_t env_seed() {
  const char* raw = std::getenv("DPMR_SEED");
  if (raw == nullptr || *raw == '\0') return kFallbackSeed;
  std::uint64_t v = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(std::string("DPMR_SEED is not an unsigned integer: '") + raw + "'");
  }
  return v;
}

Format parse_format(const std::string& s) {
  return s == "csv" ? Format::kCsv : Format::kMarkdown;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Runs `body`, turning config validation failures into usage errors.
template <typename F>
void validate_as_usage(F&& body) {
  try {
    body();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

// Resolved settings for every fitter; fields irrelevant to the chosen
// algorithm keep their defaults and are left out of the manifest.
struct FitSettings {
  std::string algo;
  Alg1Config alg1;
  Alg2Config alg2;
  Alg3Config alg3;

  void validate() const {
    validate_as_usage([&] {
      if (algo == "alg1" || algo == "baseline-smooth") alg1.validate();
      if (algo == "alg2" || algo == "baseline-irls") alg2.validate();
      if (algo == "alg3") alg3.validate();
    });
  }

  void record(Manifest& m, double bound) const {
    m.set("algo", algo);
    if (algo == "alg1" || algo == "baseline-smooth") {
      if (algo == "alg1") m.set("epsilon", alg1.epsilon);
      m.set("lambda", alg1.lambda);
      m.set("gamma", alg1.gamma);
      m.set("solver_tol", alg1.solver_tol);
      m.set_count("solver_max_iters", alg1.max_iters);
    } else if (algo == "alg2" || algo == "baseline-irls") {
      if (algo == "alg2") m.set("epsilon", alg2.epsilon);
      m.set("lambda", alg2.lambda);
      m.set("e", alg2.e);
      m.set("tau", alg2.tau);
      m.set_count("N0", alg2.max_iters);
      m.set("v", alg2.resolved_v(bound));
    } else {
      m.set("epsilon", alg3.epsilon);
      m.set("lambda", alg3.lambda);
      m.set("ell", alg3.ell);
      m.set_count("N0", alg3.N0);
      m.set("init", std::string(alg3.init == Alg3Config::Init::kRidge ? "ridge" : "zero"));
    }
  }
};

bool randomized(const std::string& algo) { return algo == "alg1" || algo == "alg2" || algo == "alg3"; }

Theta fit_once(const FitSettings& s, const Dataset& data, RngStream& rng) {
  if (s.algo == "alg1") return fit_alg1(data, s.alg1, rng).theta;
  if (s.algo == "baseline-smooth") return fit_baseline_smoothed(data, s.alg1);
  if (s.algo == "alg2") return fit_alg2(data, s.alg2, rng).theta;
  if (s.algo == "baseline-irls") return irls_fit(data, s.alg2).final_theta();
  return fit_alg3(data, s.alg3, rng).final_theta();
}

void record_common(Manifest& m, const std::string& command) {
  m.set("artifact", std::string("dpmr"));
  m.set("version", std::string(kVersion));
  m.set("command", command);
  m.set("kernels", std::string(kernels::isa_name(kernels::active().isa)));
}

void record_dataset(Manifest& m, const Table& t, const ScalingRecord& rec) {
  m.set_count("dataset_n", t.n);
  m.set_count("dataset_d", t.d);
  m.set("dataset_fnv1a64", hex64(fingerprint(t)));
  m.set("x_scale", rec.x_scale);
  m.set("y_scale", rec.y_scale);
  m.set("bound", rec.bound);
}

// Writes results to `out_path` (or the stream) and the manifest next to it.
void emit(const std::string& out_path, const std::string& manifest_path,
          std::ostream& out, const Manifest& manifest,
          const std::function<void(std::ostream&)>& body) {
  if (out_path.empty()) {
    body(out);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot open '" + out_path + "' for writing");
    body(f);
    if (!f) throw Error("failed writing '" + out_path + "'");
  }
  if (!manifest_path.empty()) {
    manifest.write(std::filesystem::path(manifest_path));
  } else if (!out_path.empty()) {
    manifest.write(std::filesystem::path(out_path + ".manifest"));
  }
}

std::string format_theta(const Theta& t) {
  std::string s = format_double(t.mu);
  for (double b : t.beta) s += "," + format_double(b);
  return s;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::size_t n = 5000;
  std::size_t d = 0;
  double mu = 2.0;
  std::vector<double> beta{3.0, 0.0, -4.0};
  double noise_scale = 2.0;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string manifest_path;
  bool no_timing = false;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GeneratorSpec spec;
  spec.n = a.n;
  spec.true_mu = a.mu;
  spec.true_beta = a.beta;
  spec.noise_scale = a.noise_scale;
  if (a.d != 0 && a.d != a.beta.size()) {
    throw UsageError("--d " + std::to_string(a.d) + " does not match the " +
                     std::to_string(a.beta.size()) + " coefficients given by --beta");
  }
  validate_as_usage([&] { spec.validate(); });
  const std::uint64_t seed = a.seed ? *a.seed : env_seed();

  const auto start = std::chrono::steady_clock::now();
  RngStream rng(seed, stream_id({kGenerateStream}));
  const Generated g = generate(spec, rng);
  const double wall = seconds_since(start);

  Manifest m;
  record_common(m, "generate");
  m.set_count("seed", seed);
  m.set_count("n", spec.n);
  m.set_count("d", spec.d());
  m.set("true_theta", format_theta(g.truth));
  m.set("noise_law", "laplace(" + format_double(spec.noise_scale) + ")");
  m.set("covariate_law", "uniform[" + format_double(spec.covariate_lo) + "," +
                             format_double(spec.covariate_hi) + "]");
  m.set_count("dataset_n", g.table.n);
  m.set_count("dataset_d", g.table.d);
  m.set("dataset_fnv1a64", hex64(fingerprint(g.table)));
  m.set_wall_seconds(wall, !a.no_timing);

  write_csv(std::filesystem::path(a.out_path), g.table);
  m.write(std::filesystem::path(a.manifest_path.empty() ? a.out_path + ".manifest"
                                                        : a.manifest_path));
  out << "wrote " << g.table.n << " rows (d = " << g.table.d << ") run_id=" << m.run_id()
      << '\n';
  return kExitOk;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
  FitSettings settings;
  std::string data_path;
  double target_bound = 2.0;
  std::vector<double> truth;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::string out_path;
  std::string manifest_path;
  bool no_timing = false;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  a.settings.validate();
  if (!(a.target_bound > 0.0) || !std::isfinite(a.target_bound)) {
    throw UsageError("--target-bound must be finite and > 0");
  }
  const std::uint64_t seed = a.seed ? *a.seed : env_seed();
  const Table table = read_csv(std::filesystem::path(a.data_path));
  std::optional<Theta> truth;
  if (!a.truth.empty()) {
    if (a.truth.size() != table.d + 1) {
      throw UsageError("--truth needs d + 1 = " + std::to_string(table.d + 1) + " values");
    }
    truth = Theta::from_stacked(a.truth);
  }
  const Normalized norm = normalize(table, a.target_bound);

  RngStream rng(seed, stream_id({kFitStream, algo_index(a.settings.algo)}));
  const auto start = std::chrono::steady_clock::now();
  const Theta fitted = fit_once(a.settings, norm.data, rng);
  const double elapsed = seconds_since(start);

  Manifest m;
  record_common(m, "fit");
  a.settings.record(m, norm.data.bound());
  if (randomized(a.settings.algo)) m.set_count("seed", seed);
  record_dataset(m, table, norm.scaling);
  m.set_wall_seconds(elapsed, !a.no_timing);

  FitResult r{a.settings.algo, unscale_theta(fitted, norm.scaling), truth,
              a.no_timing ? std::nullopt : std::optional<double>(elapsed), m.run_id()};
  emit(a.out_path, a.manifest_path, out, m,
       [&](std::ostream& os) { write_fit(os, r, parse_format(a.format)); });
  return kExitOk;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::size_t replicates = 20;
  std::vector<std::size_t> ns{5000};
  std::vector<std::string> algos{"alg1", "alg2", "alg3"};
  double epsilon = 0.1;
  double lambda = 0.002;
  std::optional<std::uint64_t> seed;
  std::string format = "markdown";
  std::string out_path;
  std::string manifest_path;
  bool no_timing = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.replicates == 0) throw UsageError("--replicates must be >= 1");
  std::vector<FitSettings> settings;
  for (const std::string& algo : a.algos) {
    FitSettings s;
    s.algo = algo;
    s.alg1.epsilon = s.alg2.epsilon = s.alg3.epsilon = a.epsilon;
    s.alg1.lambda = s.alg2.lambda = s.alg3.lambda = a.lambda;
    s.validate();
    settings.push_back(s);
  }
  GeneratorSpec spec;
  for (std::size_t n : a.ns) {
    if (n < spec.d() + 1) throw UsageError("--n values must be >= " + std::to_string(spec.d() + 1));
  }
  const std::uint64_t seed = a.seed ? *a.seed : env_seed();

  Manifest m;
  record_common(m, "bench");
  m.set_count("seed", seed);
  m.set_count("replicates", a.replicates);
  std::string ns;
  for (std::size_t n : a.ns) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  m.set("n_list", ns);
  m.set("true_theta", format_theta(spec.truth()));
  m.set("noise_law", "laplace(" + format_double(spec.noise_scale) + ")");
  m.set("covariate_law", std::string("uniform[0,1]"));
  m.set("bound", 2.0);
  m.set("aggregate", std::string("median"));
  for (const FitSettings& s : settings) {
    Manifest part;
    s.record(part, 2.0);
    std::ostringstream os;
    part.write(os);
    // Flatten the per-algorithm settings under a prefix.
    std::istringstream is(os.str());
    std::string line;
    while (std::getline(is, line)) {
      const auto eq = line.find('=');
      const std::string key = line.substr(0, eq);
      if (key == "wall_seconds" || key == "run_id" || key == "algo" || key == "v") continue;
      m.set(s.algo + "." + key, line.substr(eq + 1));
    }
  }

  const auto wall_start = std::chrono::steady_clock::now();
  std::vector<BenchCell> cells;
  const std::size_t total = a.ns.size() * settings.size();
  for (std::size_t ni = 0; ni < a.ns.size(); ++ni) {
    const std::size_t n = a.ns[ni];
    spec.n = n;
    std::vector<std::vector<std::vector<double>>> est(settings.size());
    std::vector<std::vector<double>> times(settings.size());
    std::vector<std::vector<double>> errors(settings.size());
    for (std::size_t r = 0; r < a.replicates; ++r) {
      RngStream data_rng(seed, stream_id({kBenchDataStream, n, r}));
      const Generated g = generate(spec, data_rng);
      const Normalized norm = normalize(g.table);
      for (std::size_t s = 0; s < settings.size(); ++s) {
        RngStream fit_rng(seed, stream_id({kBenchFitStream, algo_index(settings[s].algo), n, r}));
        const auto start = std::chrono::steady_clock::now();
        const Theta fitted = fit_once(settings[s], norm.data, fit_rng);
        times[s].push_back(seconds_since(start));
        const Theta orig = unscale_theta(fitted, norm.scaling);
        est[s].push_back(orig.stacked());
        errors[s].push_back(l1_distance(orig, g.truth));
      }
    }
    for (std::size_t s = 0; s < settings.size(); ++s) {
      err << "[" << ni * settings.size() + s + 1 << "/" << total << "] "
          << settings[s].algo << " n=" << n << '\n';
      BenchCell c;
      c.algorithm = settings[s].algo;
      c.n = n;
      c.replicates = a.replicates;
      std::vector<double> omega(spec.d() + 1);
      for (std::size_t j = 0; j < omega.size(); ++j) {
        std::vector<double> col;
        for (const auto& e : est[s]) col.push_back(e[j]);
        omega[j] = median(col);
      }
      c.median_estimate = Theta::from_stacked(omega);
      if (!a.no_timing) c.median_elapsed = median(times[s]);
      c.median_l1_error = median(errors[s]);
      cells.push_back(std::move(c));
    }
  }
  m.set_wall_seconds(seconds_since(wall_start), !a.no_timing);
  emit(a.out_path, a.manifest_path, out, m, [&](std::ostream& os) {
    write_bench(os, cells, spec.truth(), parse_format(a.format), m.run_id());
  });
  return kExitOk;
}

// ------------------------------------------------------------------- probe

struct ProbeArgs {
  std::string target;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
};

int cmd_probe(const ProbeArgs& a, std::ostream& out) {
  if (a.trials && *a.trials == 0) throw UsageError("--trials must be >= 1");
  const std::uint64_t seed = a.seed ? *a.seed : env_seed();
  RngStream rng(seed, stream_id({kProbeStream}));
  std::vector<CheckResult> checks;
  constexpr std::size_t kProbeN = 50;
  constexpr std::size_t kProbeD = 3;

  if (a.target == "alg2") {
    const std::size_t trials = a.trials.value_or(1000);
    const SensitivityProbe p = sensitivity_probe_alg2(kProbeN, kProbeD, trials, Alg2Config{}, rng);
    checks.push_back(make_check("alg2_output_l1_difference_max", p.max_observed, "<=", p.bound));
  } else if (a.target == "alg3") {
    const std::size_t trials = a.trials.value_or(1000);
    const SensitivityProbe p = sensitivity_probe_alg3(kProbeN, kProbeD, trials, Alg3Config{}, rng);
    CheckResult c = make_check("alg3_step_difference_over_2eta_n0_max", p.max_ratio, "<=", 1.0);
    c.passed = p.passed;
    checks.push_back(c);
  } else if (a.target == "samplers") {
    checks = sampler_checks(a.trials.value_or(100000), rng);
  } else {
    const std::size_t reps = a.trials.value_or(200);
    constexpr double kAlpha = 0.1;
    RngStream r1 = rng.substream(1);
    RngStream r2 = rng.substream(2);
    const CoverageResult c1 = bound_coverage_alg1(2000, reps, kAlpha, r1);
    const CoverageResult c2 = bound_coverage_alg2(10000, reps, kAlpha, r2);
    checks.push_back(make_check("alg1_bound_coverage_n2000", c1.fraction, ">=", 1.0 - kAlpha - 0.05));
    checks.push_back(make_check("alg2_bound_coverage_n10000", c2.fraction, ">=", 1.0 - kAlpha - 0.05));
  }

  bool all = true;
  for (const CheckResult& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": observed " << format_double(c.observed)
        << ' ' << c.relation << ' ' << format_double(c.bound) << '\n';
    all = all && c.passed;
  }
  out << "seed=" << seed << " target=" << a.target << (all ? " all checks passed" : " some checks failed")
      << '\n';
  return all ? kExitOk : kExitRuntime;
}

// Options given on the command line that the chosen algorithm does not use.
void reject_irrelevant(const std::string& algo,
                       const std::map<std::string, CLI::Option*>& opts) {
  static const std::map<std::string, std::vector<std::string>> kAllowed = {
      {"alg1", {"--epsilon", "--lambda", "--gamma", "--seed"}},
      {"baseline-smooth", {"--lambda", "--gamma"}},
      {"alg2", {"--epsilon", "--lambda", "--e", "--tau", "--v", "--N0", "--seed"}},
      {"baseline-irls", {"--lambda", "--e", "--tau", "--v", "--N0"}},
      {"alg3", {"--epsilon", "--lambda", "--ell", "--N0", "--init", "--seed"}},
  };
  const auto& allowed = kAllowed.at(algo);
  for (const auto& [name, opt] : opts) {
    if (opt->count() > 0 && std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw UsageError(name + " does not apply to --algo " + algo);
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Differentially private median regression: data generation, fitting, "
               "benchmarks and probes.",
               "dpmr"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write synthetic data as CSV plus a manifest");
  g->add_option("--n", gen.n, "Number of records")->capture_default_str()->check(CLI::PositiveNumber);
  g->add_option("--d", gen.d, "Number of covariates (must match --beta)");
  g->add_option("--mu", gen.mu, "True intercept")->capture_default_str();
  g->add_option("--beta", gen.beta, "True slopes, comma separated")->delimiter(',')->capture_default_str();
  g->add_option("--noise-scale", gen.noise_scale, "Laplace scale of the errors")->capture_default_str();
  g->add_option("--seed", gen.seed, "Seed (default: $DPMR_SEED)");
  g->add_option("--out", gen.out_path, "Output CSV path")->required();
  g->add_option("--manifest", gen.manifest_path, "Manifest path (default: <out>.manifest)");
  g->add_flag("--no-timing", gen.no_timing, "Write NA instead of wall times");

  FitArgs fit;
  std::size_t n0_flag = 0;
  std::string init_flag = "ridge";
  double v_flag = 0.0;
  auto* f = app.add_subcommand("fit", "Fit one estimator to a CSV file");
  f->add_option("--algo", fit.settings.algo, "Estimator")->required()->check(CLI::IsMember(kAlgos));
  f->add_option("--data", fit.data_path, "Input CSV")->required();
  std::map<std::string, CLI::Option*> fit_opts;
  double epsilon = 0.1, lambda = 0.002;
  fit_opts["--epsilon"] = f->add_option("--epsilon", epsilon, "Privacy budget")->capture_default_str();
  fit_opts["--lambda"] = f->add_option("--lambda", lambda, "Ridge weight")->capture_default_str();
  fit_opts["--gamma"] = f->add_option("--gamma", fit.settings.alg1.gamma, "Huber width")->capture_default_str();
  fit_opts["--e"] = f->add_option("--e", fit.settings.alg2.e, "IRLS weight offset")->capture_default_str();
  fit_opts["--tau"] = f->add_option("--tau", fit.settings.alg2.tau, "IRLS tolerance")->capture_default_str();
  fit_opts["--v"] = f->add_option("--v", v_flag, "Bound on beta'beta (default 8B^2/(lambda e))");
  fit_opts["--N0"] = f->add_option("--N0", n0_flag, "Iteration cap (alg2, default 200) or batch count (alg3, default 40)");
  fit_opts["--ell"] = f->add_option("--ell", fit.settings.alg3.ell, "Step constant")->capture_default_str();
  fit_opts["--init"] = f->add_option("--init", init_flag, "alg3 start")->check(CLI::IsMember({"ridge", "zero"}));
  fit_opts["--seed"] = f->add_option("--seed", fit.seed, "Seed (default: $DPMR_SEED)");
  f->add_option("--target-bound", fit.target_bound, "Response bound after scaling")->capture_default_str();
  f->add_option("--truth", fit.truth, "True (mu, beta) for the report, comma separated")->delimiter(',');
  f->add_option("--format", fit.format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}))->capture_default_str();
  f->add_option("--out", fit.out_path, "Result path (default: standard output)");
  f->add_option("--manifest", fit.manifest_path, "Manifest path (default: <out>.manifest)");
  f->add_flag("--no-timing", fit.no_timing, "Report NA instead of elapsed seconds");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Replicate benchmark on synthetic data");
  b->add_option("--replicates", bench.replicates, "Replicates per cell")->capture_default_str();
  b->add_option("--n", bench.ns, "Sample sizes, comma separated")->delimiter(',')->capture_default_str();
  b->add_option("--algos", bench.algos, "Estimators, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(kAlgos))
      ->capture_default_str();
  b->add_option("--epsilon", bench.epsilon, "Privacy budget")->capture_default_str();
  b->add_option("--lambda", bench.lambda, "Ridge weight")->capture_default_str();
  b->add_option("--seed", bench.seed, "Seed (default: $DPMR_SEED)");
  b->add_option("--format", bench.format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}))->capture_default_str();
  b->add_option("--out", bench.out_path, "Result path (default: standard output)");
  b->add_option("--manifest", bench.manifest_path, "Manifest path (default: <out>.manifest)");
  b->add_flag("--no-timing", bench.no_timing, "Report NA instead of elapsed seconds");

  ProbeArgs probe;
  auto* p = app.add_subcommand("probe", "Check sensitivity, sampler and bound claims");
  p->add_option("--target", probe.target, "alg2, alg3, samplers or bounds")
      ->required()
      ->check(CLI::IsMember({"alg2", "alg3", "samplers", "bounds"}));
  p->add_option("--trials", probe.trials, "Trials, draws or replicates");
  p->add_option("--seed", probe.seed, "Seed (default: $DPMR_SEED)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "dpmr: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (f->parsed()) {
      reject_irrelevant(fit.settings.algo, fit_opts);
      FitSettings& s = fit.settings;
      s.alg1.epsilon = s.alg2.epsilon = s.alg3.epsilon = epsilon;
      s.alg1.lambda = s.alg2.lambda = s.alg3.lambda = lambda;
      if (fit_opts["--v"]->count() > 0) s.alg2.v = v_flag;
      if (n0_flag != 0) s.alg2.max_iters = s.alg3.N0 = n0_flag;
      if (fit_opts["--N0"]->count() > 0 && n0_flag == 0) throw UsageError("--N0 must be >= 1");
      s.alg3.init = init_flag == "zero" ? Alg3Config::Init::kZero : Alg3Config::Init::kRidge;
      return cmd_fit(fit, out);
    }
    if (b->parsed()) return cmd_bench(bench, out, err);
    return cmd_probe(probe, out);
  } catch (const UsageError& e) {
    err << "dpmr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "dpmr: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace dpmr::cli
