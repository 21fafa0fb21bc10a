// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wshrink/event_a.hpp"
#include "wshrink/experiments.hpp"
#include "wshrink/haar.hpp"
#include "wshrink/holder.hpp"
#include "wshrink/interval.hpp"
#include "wshrink/stats.hpp"
#include "wshrink/threshold.hpp"

using namespace wshrink;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SignalSamples gaussian_signal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return SignalSamples(std::move(v));
}

Outcome transform_exactness() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double haar_worst = 0.0;
  for (int J = 3; J <= 14; ++J) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto y = gaussian_signal(std::size_t{1} << J, rng);
      const auto p = haar_dwt(y, 0);
      const auto back = haar_idwt(p);
      double energy = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        haar_worst = std::max(haar_worst, std::abs(back[i] - y[i]));
        energy += y[i] * y[i];
      }
      haar_worst = std::max(haar_worst, std::abs(p.to_scaled().sum_of_squares() - energy) / energy);
    }
  }
  double interval_worst = 0.0;
  for (int N : {2, 3}) {
    for (int J = 7; J <= 10; ++J) {
      const std::size_t n = std::size_t{1} << J;
      const auto sys = build_interval_system(N, n, interval_coarse_level(N));
      for (int rep = 0; rep < 3; ++rep) {
        const auto y = gaussian_signal(n, rng);
        const auto back = interval_idwt(interval_dwt(y, sys), sys);
        for (std::size_t i = 0; i < n; ++i) interval_worst = std::max(interval_worst, std::abs(back[i] - y[i]));
      }
    }
  }
  const double t = seconds_since(start);
  return {haar_worst <= 1e-10 && interval_worst <= 1e-8 && t < 10.0,
          fmt("haar worst %.3g (tol 1e-10, Parseval relative to energy), interval worst %.3g (tol 1e-8), %.2f s (limit 10 s)", haar_worst,
              interval_worst, t)};
}

// Direct block sums, written out independently of the library.
Outcome oracle_equivalence() {
  std::mt19937_64 rng(202);
  const int J = 10;
  const std::size_t n = std::size_t{1} << J;
  double worst = 0.0;
  std::size_t compared = 0;
  for (int s = 0; s < 100; ++s) {
    const auto y = gaussian_signal(n, rng);
    const auto p = haar_dwt(y, 0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += y[i];
    worst = std::max(worst, std::abs(p.approx[0] - std::pow(2.0, -J) * total));
    ++compared;
    for (int j = 0; j < J; ++j) {
      const std::size_t len = n >> j;
      const double scale = std::pow(2.0, -J + 0.5 * j);
      const auto d = p.detail(j);
      for (std::size_t k = 0; k < d.size(); ++k) {
        double first = 0.0;
        double second = 0.0;
        for (std::size_t i = 0; i < len / 2; ++i) {
          first += y[k * len + i];
          second += y[k * len + len / 2 + i];
        }
        worst = std::max(worst, std::abs(d[k] - scale * (first - second)));
        ++compared;
      }
    }
  }
  return {worst <= 1e-10, fmt("%zu coefficients, worst deviation %.3g (tol 1e-10)", compared, worst)};
}

Outcome coefficient_decay() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 4096;
  std::size_t violations = 0;
  std::size_t checked = 0;
  bool certified = true;
  for (SignalKind kind : {SignalKind::cusp, SignalKind::weierstrass}) {
    for (double alpha : {0.5, 1.0}) {
      const double M = 1.0;
      const auto samples = make_signal(kind, alpha, M).sample(n);
      certified = certified && check_holder(samples, alpha, M).holds;
      const auto p = haar_dwt(samples, 0);
      for (int j = 0; j < p.fine_level(); ++j) {
        const double bound = M * std::pow(2.0, -j * (0.5 + alpha));
        for (double d : p.detail(j)) {
          ++checked;
          if (!(std::abs(d) < bound)) ++violations;
        }
      }
    }
  }

  const std::size_t m = 1024;
  const auto sys = build_interval_system(2, m, interval_coarse_level(2));
  std::vector<double> f(m);
  for (std::size_t i = 0; i < m; ++i) f[i] = std::sin(2.0 * M_PI * static_cast<double>(i + 1) / static_cast<double>(m));
  const auto p = interval_dwt(SignalSamples(f), sys).to_unscaled();
  std::vector<double> levels;
  std::vector<double> logs;
  for (int j = sys.coarse_level() + 1; j < sys.fine_level(); ++j) {
    double mx = 0.0;
    for (double d : p.detail(j)) mx = std::max(mx, std::abs(d));
    levels.push_back(j);
    logs.push_back(std::log2(mx));
  }
  const double slope = least_squares(levels, logs).slope;
  const double t = seconds_since(start);
  return {certified && violations == 0 && slope <= -2.3 && t < 30.0,
          fmt("haar: %zu coefficients, %zu violations, certificates %s; interval N=2 slope %.3f (need <= -2.3); "
              "%.2f s (limit 30 s)",
              checked, violations, certified ? "hold" : "FAIL", slope, t)};
}

Outcome threshold_cases() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t triples = 0;
  std::size_t violations = 0;
  for (int a = 0; a < 100; ++a) {
    const double lambda = 0.03 * a;
    for (int b = -100; b < 100; ++b) {
      const double df = 0.0371 * b;
      for (int c = -25; c <= 25; ++c) {
        const double e = lambda * c / 25.0;
        const double dt = soft_threshold(df + e, lambda);
        const double err = std::abs(dt - df);
        ++triples;
        if (err > std::abs(df) + 1e-12) ++violations;
        if (err > 2.0 * lambda + 1e-12) ++violations;
      }
    }
  }
  const double t = seconds_since(start);
  return {triples >= 1000000 && violations == 0 && t < 5.0,
          fmt("%zu triples, %zu violations, %.2f s (limit 5 s)", triples, violations, t)};
}

struct EventRun {
  EventProbability uniform;
  EventProbability rademacher;
  double seconds = 0.0;
};

EventRun run_event_probability() {
  const auto start = std::chrono::steady_clock::now();
  EventRun out;
  NoiseSpec spec;
  spec.b = 1.0;
  spec.family = NoiseFamily::uniform;
  out.uniform = estimate_event_probability(spec, 256, 10000, 0x5eed0001, HaarBasis{});
  spec.family = NoiseFamily::rademacher;
  out.rademacher = estimate_event_probability(spec, 256, 10000, 0x5eed0002, HaarBasis{});
  out.seconds = seconds_since(start);
  return out;
}

Outcome event_probability(const EventRun& run) {
  const double floor = 0.504;
  const bool ok = run.uniform.ci.lo >= floor && run.rademacher.ci.lo >= floor && run.seconds < 60.0;
  return {ok, fmt("uniform %llu/%llu, 99%% lower %.4f; rademacher %llu/%llu, 99%% lower %.4f (need >= %.3f); "
                  "%.2f s (limit 60 s)",
                  static_cast<unsigned long long>(run.uniform.members),
                  static_cast<unsigned long long>(run.uniform.trials), run.uniform.ci.lo,
                  static_cast<unsigned long long>(run.rademacher.members),
                  static_cast<unsigned long long>(run.rademacher.trials), run.rademacher.ci.lo, floor, run.seconds)};
}

Outcome conditional_bound(const EventRun& run) {
  const auto violations = run.uniform.coeff_bound_violations + run.rademacher.coeff_bound_violations;
  const auto members = run.uniform.members + run.rademacher.members;
  return {members > 0 && violations == 0,
          fmt("%llu members, %llu violations, largest coefficient/bound ratio %.3f",
              static_cast<unsigned long long>(members), static_cast<unsigned long long>(violations),
              std::max(run.uniform.worst_member_ratio, run.rademacher.worst_member_ratio))};
}

struct RateRun {
  double alpha = 0.0;
  ExperimentPlan plan;
  PlanResult result;
  RateFit fit;
};

std::vector<RateRun> run_rates(double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<RateRun> runs;
  for (double alpha : {0.5, 1.0}) {
    RateRun r;
    r.alpha = alpha;
    r.plan.signal = SignalKind::cusp;
    r.plan.alpha = alpha;
    r.plan.M = 1.0;
    r.plan.noise.family = NoiseFamily::uniform;
    r.plan.noise.b = 1.0;
    r.plan.n_values = {256, 1024, 4096, 16384};
    r.plan.deltas = {1.0};
    r.plan.trials = 500;
    r.plan.master_seed = alpha < 1.0 ? 0xa11ce05 : 0xa11ce10;
    r.result = run_plan(r.plan);
    r.fit = fit_rate(summarize(r.plan, r.result), alpha);
    runs.push_back(std::move(r));
  }
  seconds = seconds_since(start);
  return runs;
}

Outcome rate_recovery(const std::vector<RateRun>& runs, double seconds) {
  bool ok = seconds < 600.0;
  std::string detail;
  for (const auto& r : runs) {
    const double gap = std::abs(r.fit.exponent - r.fit.target);
    ok = ok && gap <= 0.20;
    detail += fmt("alpha %.1f: exponent %.3f, target %.3f, gap %.3f (tol 0.20); ", r.alpha, r.fit.exponent,
                  r.fit.target, gap);
  }
  return {ok, detail + fmt("%.1f s (limit 600 s)", seconds)};
}

Outcome tail_behavior(const std::vector<RateRun>& runs) {
  bool ok = true;
  std::string detail;
  for (const auto& r : runs) {
    auto cell_reports = [&](std::size_t n) {
      std::vector<TrialReport> out;
      for (const auto& rep : r.result.reports) {
        if (rep.n == n) out.push_back(rep);
      }
      return out;
    };
    const auto base = cell_reports(256);
    const double c = calibrate_envelope(base, r.alpha, 0.999);
    auto exceed = [&](const std::vector<TrialReport>& reps, std::size_t n) {
      std::uint64_t k = 0;
      for (const auto& rep : reps) k += rep.max_sq_err > c * rate_scale(n, r.alpha);
      return k;
    };
    const double p0 = static_cast<double>(exceed(base, 256)) / static_cast<double>(base.size());
    detail += fmt("alpha %.1f: envelope %.4g, base fraction %.4f", r.alpha, c, p0);
    for (std::size_t n : {std::size_t{4096}, std::size_t{16384}}) {
      const auto reps = cell_reports(n);
      const auto k = exceed(reps, n);
      const double pvalue = binomial_upper_tail(reps.size(), k, p0);
      ok = ok && pvalue >= 0.01;
      detail += fmt(", n=%zu %llu/%zu exceed (p=%.3g)", n, static_cast<unsigned long long>(k), reps.size(), pvalue);
    }
    detail += "; ";
  }
  return {ok, detail};
}

Outcome sample_constant() {
  const double raw = min_samples(2.0).raw;
  const double rel = std::abs(raw - 1.1e7) / 1.1e7;
  return {rel <= 0.01, fmt("raw %.6g, relative gap %.4f (tol 0.01)", raw, rel)};
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&all](int id, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    std::printf("criterion %d %s: %s: %s\n", id, name, o.passed ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "transform exactness", transform_exactness);
  report(2, "oracle equivalence", oracle_equivalence);
  report(3, "coefficient decay", coefficient_decay);
  report(4, "soft threshold cases", threshold_cases);

  EventRun events;
  std::string event_error;
  try {
    events = run_event_probability();
  } catch (const std::exception& e) {
    event_error = e.what();
  }
  report(5, "event probability", [&] {
    if (!event_error.empty()) return Outcome{false, "exception: " + event_error};
    return event_probability(events);
  });
  report(6, "conditional coefficient bound", [&] {
    if (!event_error.empty()) return Outcome{false, "exception: " + event_error};
    return conditional_bound(events);
  });

  double rate_seconds = 0.0;
  std::vector<RateRun> runs;
  std::string rate_error;
  try {
    runs = run_rates(rate_seconds);
  } catch (const std::exception& e) {
    rate_error = e.what();
  }
  report(7, "rate recovery", [&] {
    if (!rate_error.empty()) return Outcome{false, "exception: " + rate_error};
    return rate_recovery(runs, rate_seconds);
  });
  report(8, "tail behavior", [&] {
    if (!rate_error.empty()) return Outcome{false, "exception: " + rate_error};
    return tail_behavior(runs);
  });
  report(9, "sample-count constant", sample_constant);

  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
