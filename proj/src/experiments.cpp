#include "wshrink/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "wshrink/daubechies.hpp"
#include "wshrink/event_a.hpp"
#include "wshrink/interval.hpp"

namespace wshrink {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& fn) {
  if (workers == 0) workers = worker_count();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

WaveletBasis make_basis(const ExperimentPlan& plan, std::size_t n) {
  if (plan.interval_N == 0) return HaarBasis{};
  const int J0 = plan.interval_J0 > 0 ? plan.interval_J0 : interval_coarse_level(plan.interval_N);
  if (!plan.cache_dir.empty()) return IntervalBasis{load_or_build_interval_system(plan.interval_N, n, J0, plan.cache_dir)};
  return IntervalBasis{std::make_shared<const IntervalSystem>(build_interval_system(plan.interval_N, n, J0))};
}

struct CellContext {
  CellInfo info;
  WaveletBasis basis;
  const SignalSamples* f = nullptr;
  const CoefficientPyramid* coef_f = nullptr;
};

TrialReport run_trial(const ExperimentPlan& plan, const CellContext& cell, std::size_t cell_index,
                      std::size_t trial) {
  TrialReport r;
  r.cell = cell_index;
  r.trial = trial;
  r.n = cell.info.n;
  r.delta = cell.info.delta;
  r.seed = derive_seed(plan.master_seed, cell_index, trial);
  r.coarse_level = cell.info.J0;

  NoiseSpec spec = plan.noise;
  spec.seed = r.seed;
  const SignalSamples e = sample_noise(spec, r.n);
  const auto f = cell.f->values();
  std::vector<double> y(r.n);
  for (std::size_t i = 0; i < r.n; ++i) y[i] = f[i] + e[i];

  const double lambda = cell.info.lambda;
  const auto coef_y = forward_transform(SignalSamples(std::move(y)), cell.basis, cell.info.J0);
  const SignalSamples estimate = inverse_transform(apply_threshold(coef_y, lambda, plan.mode), cell.basis);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < r.n; ++i) {
    const double diff = estimate[i] - f[i];
    r.max_sq_err = std::max(r.max_sq_err, diff * diff);
    sum_sq += diff * diff;
  }
  r.mse = sum_sq / static_cast<double>(r.n);

  const auto coef_e = forward_transform(e, cell.basis, cell.info.J0);
  r.exceed_by_level = count_exceedances(coef_e, lambda);
  for (auto c : r.exceed_by_level) r.exceed_count += c;
  for (double c : coef_e.approx) r.approx_exceeds = r.approx_exceeds || std::abs(c) > lambda;

  if (event_A_supported(r.n)) {
    const auto a = in_event_A(e, cell.basis, plan.noise.b);
    r.in_A = a.member;
    if (a.member) r.coeff_bound_holds = noise_coeff_bound_check(e, cell.basis, plan.noise.b).holds;
  }

  if (plan.mode == ThresholdMode::soft && r.exceed_count == 0 && !r.approx_exceeds) {
    r.shrink_bound_checked = true;
    const auto& coef_f = *cell.coef_f;
    for (std::size_t level = 0; level < coef_f.details.size(); ++level) {
      for (std::size_t k = 0; k < coef_f.details[level].size(); ++k) {
        const double df = coef_f.details[level][k];
        const double shrunk = soft_threshold(df + coef_e.details[level][k], lambda);
        const double gap = std::abs(shrunk - df);
        const double tol = 1e-12 * (std::abs(df) + lambda);
        if (gap > std::abs(df) + tol || gap > 2.0 * lambda + tol) ++r.shrink_bound_violations;
      }
    }
  }
  return r;
}

}  // namespace

void validate(const ExperimentPlan& plan) {
  if (!(plan.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(plan.M > 0.0)) throw std::invalid_argument("M must be > 0");
  validate(plan.noise);
  for (std::size_t n : plan.n_values) {
    if (n < 2 || !is_power_of_two(n)) throw GeometryError("n = " + std::to_string(n) + " is not a power of two >= 2");
  }
  if (plan.deltas.empty()) throw std::invalid_argument("plan needs at least one delta");
  for (double d : plan.deltas) {
    if (!(d >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  }
  if (plan.interval_N < 0 || plan.interval_N > kMaxVanishingMoments) {
    throw std::invalid_argument("interval N must be in [1, " + std::to_string(kMaxVanishingMoments) + "]");
  }
  if (plan.lambda && !(*plan.lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  if (!plan.lambda && plan.noise.b == 0.0) throw std::invalid_argument("b = 0 needs a fixed lambda");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(master) ^ cell) ^ trial);
}

unsigned worker_count() {
  if (const char* env = std::getenv("WSHRINK_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

PlanResult run_plan(const ExperimentPlan& plan, unsigned workers) {
  validate(plan);
  const auto signal = make_signal(plan.signal, plan.alpha, plan.M);

  std::vector<SignalSamples> clean;
  std::vector<CoefficientPyramid> clean_coef;
  std::vector<CellContext> cells;
  clean.reserve(plan.n_values.size());
  clean_coef.reserve(plan.n_values.size());
  for (std::size_t n : plan.n_values) {
    const WaveletBasis basis = make_basis(plan, n);
    clean.push_back(signal.sample(n));
    for (double delta : plan.deltas) {
      ShrinkageRequest request;
      request.alpha = plan.alpha;
      request.M = plan.M;
      request.b = plan.noise.b > 0.0 ? plan.noise.b : 1.0;
      request.delta = delta;
      request.mode = plan.mode;
      request.allow_below_n0 = true;
      const ShrinkageConfig config = make_config(n, request, basis);
      CellContext ctx;
      ctx.info = {n, delta, config.J0, config.J1, plan.lambda.value_or(config.lambda), config.c_phi,
                  config.below_theorem_range};
      ctx.basis = basis;
      cells.push_back(std::move(ctx));
    }
    clean_coef.push_back(forward_transform(clean.back(), basis, cells.back().info.J0));
  }
  const std::size_t per_n = plan.deltas.size();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cells[c].f = &clean[c / per_n];
    cells[c].coef_f = &clean_coef[c / per_n];
  }

  PlanResult result;
  for (const auto& c : cells) result.cells.push_back(c.info);
  result.reports.resize(cells.size() * plan.trials);
  parallel_for(result.reports.size(), workers, [&](std::size_t i) {
    const std::size_t cell = i / plan.trials;
    result.reports[i] = run_trial(plan, cells[cell], cell, i % plan.trials);
  });
  return result;
}

double rate_scale(std::size_t n, double alpha) {
  const double nd = static_cast<double>(n);
  return std::pow(std::log2(nd) / nd, 2.0 * alpha / (1.0 + 2.0 * alpha));
}

double calibrate_envelope(std::span<const TrialReport> reports, double alpha, double q) {
  std::vector<double> ratios;
  ratios.reserve(reports.size());
  for (const auto& r : reports) ratios.push_back(r.max_sq_err / rate_scale(r.n, alpha));
  return quantile(ratios, q);
}

std::vector<CellSummary> summarize(const ExperimentPlan& plan, const PlanResult& result) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<CellSummary> out;
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    const CellInfo& info = result.cells[c];
    CellSummary s;
    s.n = info.n;
    s.delta = info.delta;
    s.below_theorem_range = info.below_theorem_range;
    std::vector<double> max_errs;
    std::vector<double> mses;
    std::uint64_t within = 0;
    std::uint64_t members = 0;
    std::uint64_t a_trials = 0;
    const double envelope = plan.envelope_constant ? *plan.envelope_constant * rate_scale(info.n, plan.alpha) : nan;
    for (const auto& r : result.reports) {
      if (r.cell != c) continue;
      max_errs.push_back(r.max_sq_err);
      mses.push_back(r.mse);
      if (r.max_sq_err <= envelope) ++within;
      if (r.in_A) {
        ++a_trials;
        if (*r.in_A) ++members;
      }
    }
    if (max_errs.empty()) continue;
    s.trials = max_errs.size();
    s.q50_max = median(max_errs);
    s.q50_mse = median(mses);
    s.p_within_envelope = plan.envelope_constant ? static_cast<double>(within) / static_cast<double>(s.trials) : nan;
    if (a_trials > 0) {
      s.p_A_hat = static_cast<double>(members) / static_cast<double>(a_trials);
      const Interval ci = wilson_interval(members, a_trials);
      s.ci_lo = ci.lo;
      s.ci_hi = ci.hi;
    } else {
      s.p_A_hat = s.ci_lo = s.ci_hi = nan;
    }
    out.push_back(s);
  }
  return out;
}

RateFit fit_rate(std::span<const std::size_t> n_values, std::span<const double> errors, double alpha) {
  if (n_values.size() != errors.size()) throw std::invalid_argument("fit_rate needs one error per n");
  const std::set<std::size_t> distinct(n_values.begin(), n_values.end());
  if (distinct.size() < 4) throw std::invalid_argument("fit_rate needs at least four distinct n");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (!(errors[i] > 0.0)) throw std::invalid_argument("fit_rate needs positive errors");
    const double n = static_cast<double>(n_values[i]);
    x.push_back(std::log(std::log2(n) / n));
    y.push_back(std::log(errors[i]));
  }
  const LinearFit fit = least_squares(x, y);
  RateFit out;
  out.exponent = fit.slope;
  out.intercept = fit.intercept;
  out.residual = fit.residual;
  out.target = 2.0 * alpha / (1.0 + 2.0 * alpha);
  out.points = x.size();
  return out;
}

RateFit fit_rate(std::span<const CellSummary> summaries, double alpha) {
  std::vector<std::size_t> n;
  std::vector<double> err;
  for (const auto& s : summaries) {
    if (s.delta != summaries.front().delta) throw std::invalid_argument("fit_rate needs a single delta");
    n.push_back(s.n);
    err.push_back(s.q50_max);
  }
  return fit_rate(n, err, alpha);
}

EventProbability estimate_event_probability(const NoiseSpec& noise, std::size_t n, std::size_t trials,
                                            std::uint64_t master_seed, const WaveletBasis& basis,
                                            unsigned workers) {
  if (!event_A_supported(n)) {
    throw GeometryError("set A needs n = 2^J with J in {4, 8, 16}; got n = " + std::to_string(n));
  }
  struct Outcome {
    bool member = false;
    bool holds = true;
    double ratio = 0.0;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    NoiseSpec spec = noise;
    spec.seed = derive_seed(master_seed, 0, t);
    const SignalSamples e = sample_noise(spec, n);
    Outcome o;
    o.member = in_event_A(e, basis, noise.b).member;
    if (o.member) {
      const auto check = noise_coeff_bound_check(e, basis, noise.b);
      o.holds = check.holds;
      o.ratio = check.worst_ratio;
    }
    outcomes[t] = o;
  });

  EventProbability out;
  out.trials = trials;
  for (const auto& o : outcomes) {
    if (!o.member) continue;
    ++out.members;
    if (!o.holds) ++out.coeff_bound_violations;
    out.worst_member_ratio = std::max(out.worst_member_ratio, o.ratio);
  }
  out.p_hat = trials > 0 ? static_cast<double>(out.members) / static_cast<double>(trials) : 0.0;
  out.ci = wilson_interval(out.members, trials);
  return out;
}

std::vector<std::uint64_t> count_exceedances(const CoefficientPyramid& pyramid, double lambda) {
  std::vector<std::uint64_t> counts;
  counts.reserve(pyramid.details.size());
  for (const auto& level : pyramid.details) {
    std::uint64_t c = 0;
    for (double d : level) c += std::abs(d) > lambda ? 1 : 0;
    counts.push_back(c);
  }
  return counts;
}

ExceedanceCensus threshold_exceedance_census(std::span<const TrialReport> reports) {
  ExceedanceCensus census;
  for (const auto& r : reports) {
    const std::size_t top = static_cast<std::size_t>(r.coarse_level) + r.exceed_by_level.size();
    if (census.exceed_by_level.size() < top) {
      census.exceed_by_level.resize(top, 0);
      census.coefficients_by_level.resize(top, 0);
    }
    for (std::size_t i = 0; i < r.exceed_by_level.size(); ++i) {
      const std::size_t j = static_cast<std::size_t>(r.coarse_level) + i;
      census.exceed_by_level[j] += r.exceed_by_level[i];
      census.coefficients_by_level[j] += std::uint64_t{1} << j;
      census.total_exceed += r.exceed_by_level[i];
      census.total_coefficients += std::uint64_t{1} << j;
    }
  }
  return census;
}

}  // namespace wshrink
