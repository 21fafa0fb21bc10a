// wshrink: denoise sample files, run Monte Carlo plans, fit rates, self-check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wshrink/experiments.hpp"
#include "wshrink/io.hpp"
#include "wshrink/shrink.hpp"
#include "wshrink/threshold.hpp"
#include "wshrink/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace wshrink;

namespace {

constexpr int kUsageError = 1;
constexpr int kInvariantFailure = 2;

// Bad input the user can fix: exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_readable(const fs::path& p) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) throw UsageError("cannot read " + p.string());
}

void require_writable_parent(const fs::path& p) {
  const auto parent = p.has_parent_path() ? p.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(parent, ec)) throw UsageError("output directory " + parent.string() + " does not exist");
}

std::size_t floor_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p * 2 <= n) p *= 2;
  return p;
}

struct DenoiseArgs {
  fs::path input;
  fs::path output;
  double alpha = 1.0;
  double M = 1.0;
  double b = 1.0;
  double delta = 1.0;
  std::string mode = "soft";
  std::string system = "haar";
  int moments = 0;
  int coarse_level = 0;
  std::string n_pad = "none";
  fs::path cache_dir;
};

int cmd_denoise(const DenoiseArgs& a) {
  require_readable(a.input);
  require_writable_parent(a.output);

  std::vector<double> values;
  try {
    values = read_column_csv(a.input);
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.input.string() + ": " + e.what());
  }
  const std::size_t original = values.size();
  if (original < 2) throw UsageError("input needs at least two samples");
  std::size_t n = original;
  if (!is_power_of_two(n)) {
    if (a.n_pad == "truncate") {
      n = floor_power_of_two(original);
      values.resize(n);
      std::cerr << "warning: truncated " << original << " samples to " << n << "\n";
    } else if (a.n_pad == "zero") {
      n = floor_power_of_two(original) * 2;
      values.resize(n, 0.0);
      std::cerr << "warning: zero-padded " << original << " samples to " << n << "\n";
    } else {
      throw UsageError("input length " + std::to_string(original) +
                       " is not a power of two; pass --n-pad truncate or --n-pad zero");
    }
  }

  ShrinkageRequest request;
  request.alpha = a.alpha;
  request.M = a.M;
  request.b = a.b;
  request.delta = a.delta;
  request.mode = parse_threshold_mode(a.mode);
  request.allow_below_n0 = true;

  WaveletBasis basis = HaarBasis{};
  if (a.system == "interval") {
    const int N = a.moments > 0 ? a.moments : std::max(1, static_cast<int>(std::ceil(a.alpha)));
    const int J0 = a.coarse_level > 0 ? a.coarse_level : interval_coarse_level(N);
    if (a.cache_dir.empty()) {
      basis = IntervalBasis{std::make_shared<const IntervalSystem>(build_interval_system(N, n, J0))};
    } else {
      basis = IntervalBasis{load_or_build_interval_system(N, n, J0, a.cache_dir)};
    }
  }

  const auto config = make_config(n, request, basis);
  std::fprintf(stderr, "J0=%d J1=%d lambda=%s\n", config.J0, config.J1, format_double(config.lambda).c_str());
  if (config.below_theorem_range) {
    std::fprintf(stderr, "warning: n=%zu is below the sample count the deviation bound assumes\n", n);
  }

  auto denoised = std::move(shrink(SignalSamples(std::move(values)), config)).release();
  if (a.n_pad == "zero" && denoised.size() > original) denoised.resize(original);
  write_column_csv(a.output, denoised);
  return 0;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

ExperimentPlan parse_plan(const json& j) {
  static const std::set<std::string> known{"signal",  "alpha",  "M",      "noise",  "n",
                                           "deltas",  "trials", "mode",   "system", "moments",
                                           "coarse_level", "lambda", "envelope_constant", "cache_dir"};
  if (!j.is_object()) throw UsageError("plan must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw UsageError("unknown plan field '" + key + "'");
  }
  for (const char* key : {"signal", "alpha", "n", "trials"}) {
    if (!j.contains(key)) throw UsageError(std::string("plan is missing '") + key + "'");
  }

  ExperimentPlan plan;
  plan.signal = parse_signal_kind(j.at("signal").get<std::string>());
  plan.alpha = j.at("alpha").get<double>();
  plan.M = get_or(j, "M", 1.0);
  plan.n_values = j.at("n").get<std::vector<std::size_t>>();
  plan.trials = j.at("trials").get<std::size_t>();
  plan.deltas = get_or(j, "deltas", std::vector<double>{1.0});
  plan.mode = parse_threshold_mode(get_or<std::string>(j, "mode", "soft"));

  if (j.contains("noise")) {
    const auto& nj = j.at("noise");
    static const std::set<std::string> noise_keys{"family", "b", "truncated_sigma", "skew_p"};
    for (const auto& [key, value] : nj.items()) {
      if (!noise_keys.count(key)) throw UsageError("unknown noise field '" + key + "'");
    }
    plan.noise.family = parse_noise_family(get_or<std::string>(nj, "family", "uniform"));
    plan.noise.b = get_or(nj, "b", 1.0);
    plan.noise.truncated_sigma = get_or(nj, "truncated_sigma", plan.noise.truncated_sigma);
    plan.noise.skew_p = get_or(nj, "skew_p", plan.noise.skew_p);
  }

  const auto system = get_or<std::string>(j, "system", "haar");
  if (system == "interval") {
    plan.interval_N = get_or(j, "moments", std::max(1, static_cast<int>(std::ceil(plan.alpha))));
    plan.interval_J0 = get_or(j, "coarse_level", 0);
    if (plan.interval_N < 1) throw UsageError("moments must be at least 1");
  } else if (system != "haar") {
    throw UsageError("system must be 'haar' or 'interval'");
  }
  if (j.contains("lambda")) plan.lambda = j.at("lambda").get<double>();
  if (j.contains("envelope_constant")) plan.envelope_constant = j.at("envelope_constant").get<double>();
  if (j.contains("cache_dir")) plan.cache_dir = j.at("cache_dir").get<std::string>();
  return plan;
}

struct SimulateArgs {
  fs::path plan;
  fs::path reports;
  fs::path summary;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  require_readable(a.plan);
  require_writable_parent(a.reports);
  require_writable_parent(a.summary);

  ExperimentPlan plan;
  try {
    plan = parse_plan(json::parse(read_file(a.plan)));
  } catch (const json::exception& e) {
    throw UsageError(a.plan.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.plan.string() + ": " + e.what());
  }
  plan.master_seed = a.seed;
  try {
    validate(plan);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto result = run_plan(plan, a.workers);
  for (const auto& cell : result.cells) {
    std::fprintf(stderr, "n=%zu delta=%s J0=%d J1=%d lambda=%s%s\n", cell.n, format_double(cell.delta).c_str(),
                 cell.J0, cell.J1, format_double(cell.lambda).c_str(),
                 cell.below_theorem_range ? " (below theorem range)" : "");
  }
  const auto summaries = summarize(plan, result);
  atomic_write(a.reports, reports_to_jsonl(result.reports));
  atomic_write(a.summary, summaries_to_csv(summaries));
  return 0;
}

struct RatesArgs {
  fs::path summary;
  double alpha = 1.0;
  std::optional<double> delta;
  fs::path output;
};

int cmd_rates(const RatesArgs& a) {
  require_readable(a.summary);
  if (!a.output.empty()) require_writable_parent(a.output);

  std::vector<CellSummary> rows;
  try {
    rows = parse_summaries_csv(read_file(a.summary));
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.summary.string() + ": " + e.what());
  }
  std::vector<double> deltas;
  for (const auto& r : rows) {
    if (a.delta && r.delta != *a.delta) continue;
    if (std::find(deltas.begin(), deltas.end(), r.delta) == deltas.end()) deltas.push_back(r.delta);
  }
  if (deltas.empty()) throw UsageError("no summary rows to fit");

  std::string out = "alpha,delta,exponent,target,intercept,residual,points\n";
  for (double delta : deltas) {
    std::vector<CellSummary> cell;
    for (const auto& r : rows) {
      if (r.delta == delta) cell.push_back(r);
    }
    RateFit fit;
    try {
      fit = fit_rate(cell, a.alpha);
    } catch (const std::invalid_argument& e) {
      throw UsageError("delta " + format_double(delta) + ": " + e.what());
    }
    out += format_double(a.alpha) + "," + format_double(delta) + "," + format_double(fit.exponent) + "," +
           format_double(fit.target) + "," + format_double(fit.intercept) + "," + format_double(fit.residual) + "," +
           std::to_string(fit.points) + "\n";
  }
  if (a.output.empty()) {
    std::cout << out;
  } else {
    atomic_write(a.output, out);
  }
  return 0;
}

int cmd_verify(unsigned workers) {
  bool ok = true;
  for (const auto& r : run_self_checks(workers)) {
    std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : kInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet shrinkage denoising and deviation experiments"};
  app.require_subcommand(1);

  DenoiseArgs dn;
  auto* denoise = app.add_subcommand("denoise", "Denoise a one-column CSV of samples");
  denoise->add_option("-i,--input", dn.input, "input CSV, one value per line")->required();
  denoise->add_option("-o,--output", dn.output, "output CSV")->required();
  denoise->add_option("--alpha", dn.alpha, "Hoelder exponent")->check(CLI::PositiveNumber);
  denoise->add_option("--M", dn.M, "Hoelder constant")->check(CLI::PositiveNumber);
  denoise->add_option("--b", dn.b, "noise range")->check(CLI::PositiveNumber);
  denoise->add_option("--delta", dn.delta, "confidence parameter")->check(CLI::NonNegativeNumber);
  denoise->add_option("--mode", dn.mode, "soft or hard")->check(CLI::IsMember({"soft", "hard"}));
  denoise->add_option("--system", dn.system, "haar or interval")->check(CLI::IsMember({"haar", "interval"}));
  denoise->add_option("--moments", dn.moments, "vanishing moments of the interval system")->check(CLI::Range(1, 5));
  denoise->add_option("--coarse-level", dn.coarse_level, "coarse level of the interval system")
      ->check(CLI::PositiveNumber);
  denoise->add_option("--n-pad", dn.n_pad, "none, truncate or zero")
      ->check(CLI::IsMember({"none", "truncate", "zero"}));
  denoise->add_option("--cache-dir", dn.cache_dir, "interval matrix cache directory");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo plan");
  simulate->add_option("plan", sim.plan, "plan JSON")->required();
  simulate->add_option("--seed", sim.seed, "master seed")->required();
  simulate->add_option("--reports", sim.reports, "JSON-lines trial reports")->required();
  simulate->add_option("--summary", sim.summary, "per-cell summary CSV")->required();
  simulate->add_option("--workers", sim.workers, "worker threads (default: WSHRINK_WORKERS or all cores)");

  RatesArgs rt;
  double rate_delta = 0.0;
  auto* rates = app.add_subcommand("rates", "Fit convergence exponents from a summary CSV");
  rates->add_option("summary", rt.summary, "summary CSV from simulate")->required();
  rates->add_option("--alpha", rt.alpha, "Hoelder exponent of the plan")->required()->check(CLI::PositiveNumber);
  auto* delta_opt = rates->add_option("--delta", rate_delta, "fit only this delta");
  rates->add_option("-o,--output", rt.output, "write the table here instead of stdout");

  unsigned verify_workers = 0;
  auto* verify = app.add_subcommand("verify", "Run the invariant self-checks");
  verify->add_option("--workers", verify_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*denoise) return cmd_denoise(dn);
    if (*simulate) return cmd_simulate(sim);
    if (*rates) {
      if (*delta_opt) rt.delta = rate_delta;
      return cmd_rates(rt);
    }
    if (*verify) return cmd_verify(verify_workers);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariantFailure;
  }
  return kUsageError;
}
