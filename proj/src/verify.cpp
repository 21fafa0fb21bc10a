#include "wshrink/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>

#include "wshrink/event_a.hpp"
#include "wshrink/experiments.hpp"
#include "wshrink/haar.hpp"
#include "wshrink/holder.hpp"
#include "wshrink/interval.hpp"
#include "wshrink/shrink.hpp"
#include "wshrink/threshold.hpp"

namespace wshrink {
namespace {

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

SignalSamples random_samples(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return SignalSamples(std::move(v));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CheckResult haar_exactness() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int J = 3; J <= 14; ++J) {
    const auto y = random_samples(std::size_t{1} << J, rng);
    const auto p = haar_dwt(y, 0);
    worst = std::max(worst, max_abs_diff(haar_idwt(p).values(), y.values()));
    double energy = 0.0;
    for (double x : y.values()) energy += x * x;
    worst = std::max(worst, std::abs(p.to_scaled().sum_of_squares() - energy) / std::max(1.0, energy));
  }
  return {"haar roundtrip and Parseval", worst < 1e-10, fmt("worst deviation %.3g", worst)};
}

CheckResult closed_form() {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int s = 0; s < 5; ++s) {
    const auto y = random_samples(256, rng);
    const auto p = haar_dwt(y, 0);
    worst = std::max(worst, std::abs(p.approx[0] - haar_coeff_closed_form(y, 0, 0, CoefficientKind::approx)));
    for (int j = 0; j < 8; ++j) {
      const auto d = p.detail(j);
      for (std::size_t k = 0; k < d.size(); ++k) {
        worst = std::max(worst, std::abs(d[k] - haar_coeff_closed_form(y, j, k, CoefficientKind::detail)));
      }
    }
  }
  return {"haar closed forms", worst < 1e-10, fmt("worst deviation %.3g", worst)};
}

CheckResult interval_exactness() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int N : {2, 3}) {
    const auto sys = build_interval_system(N, 128, interval_coarse_level(N));
    const auto y = random_samples(128, rng);
    worst = std::max(worst, max_abs_diff(interval_idwt(interval_dwt(y, sys), sys).values(), y.values()));
    worst = std::max(worst, sys.orthogonality_error());
  }
  return {"interval roundtrip and orthogonality", worst < 1e-8, fmt("worst deviation %.3g", worst)};
}

CheckResult threshold_inequalities() {
  std::size_t violations = 0;
  std::size_t count = 0;
  for (int a = 0; a <= 60; ++a) {
    const double lambda = 0.05 * a;
    for (int b = -60; b <= 60; ++b) {
      const double df = 0.05 * b;
      for (int c = -20; c <= 20; ++c) {
        const double e = lambda * c / 20.0;
        const double err = std::abs(soft_threshold(df + e, lambda) - df);
        ++count;
        if (err > std::abs(df) + 1e-12 || err > 2.0 * lambda + 1e-12) ++violations;
      }
    }
  }
  return {"soft threshold error bounds", violations == 0,
          fmt("%.0f violations in %.0f triples", static_cast<double>(violations), static_cast<double>(count))};
}

CheckResult holder_decay() {
  std::size_t violations = 0;
  for (SignalKind kind : {SignalKind::cusp, SignalKind::weierstrass}) {
    for (double alpha : {0.5, 1.0}) {
      const auto f = make_signal(kind, alpha, 1.0);
      const auto p = haar_dwt(f.sample(1024), 0);
      for (int j = 0; j < 10; ++j) {
        const double bound = std::pow(2.0, -j * (0.5 + alpha));
        for (double d : p.detail(j)) {
          if (!(std::abs(d) < bound)) ++violations;
        }
      }
    }
  }
  return {"haar coefficient decay", violations == 0, fmt("%.0f violations", static_cast<double>(violations))};
}

CheckResult event_implication(unsigned workers) {
  NoiseSpec spec;
  spec.family = NoiseFamily::uniform;
  const auto est = estimate_event_probability(spec, 256, 400, 11, HaarBasis{}, workers);
  return {"set A coefficient bound", est.coeff_bound_violations == 0 && est.members > 0,
          fmt("%.0f members, %.0f violations", static_cast<double>(est.members),
              static_cast<double>(est.coeff_bound_violations))};
}

CheckResult reproducibility() {
  ExperimentPlan plan;
  plan.signal = SignalKind::cusp;
  plan.alpha = 0.5;
  plan.n_values = {256, 512};
  plan.deltas = {0.5, 1.0};
  plan.trials = 6;
  plan.master_seed = 99;
  const auto a = run_plan(plan, 1);
  const auto b = run_plan(plan, 3);
  bool same = a.reports.size() == b.reports.size();
  for (std::size_t i = 0; same && i < a.reports.size(); ++i) {
    same = a.reports[i].seed == b.reports[i].seed && a.reports[i].max_sq_err == b.reports[i].max_sq_err &&
           a.reports[i].mse == b.reports[i].mse && a.reports[i].mse <= a.reports[i].max_sq_err;
  }
  return {"plan reproducibility", same, same ? "identical across worker counts" : "reports differ"};
}

CheckResult sample_constant() {
  const double raw = min_samples(2.0).raw;
  const double rel = std::abs(raw - 1.1e7) / 1.1e7;
  return {"minimum sample count for alpha = 2", rel <= 0.01, fmt("raw %.6g, relative gap %.3g", raw, rel)};
}

}  // namespace

std::vector<CheckResult> run_self_checks(unsigned workers) {
  std::vector<CheckResult> out;
  auto guarded = [&out](const char* name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  guarded("haar roundtrip and Parseval", haar_exactness);
  guarded("haar closed forms", closed_form);
  guarded("interval roundtrip and orthogonality", interval_exactness);
  guarded("soft threshold error bounds", threshold_inequalities);
  guarded("haar coefficient decay", holder_decay);
  guarded("set A coefficient bound", [workers] { return event_implication(workers); });
  guarded("plan reproducibility", reproducibility);
  guarded("minimum sample count for alpha = 2", sample_constant);
  return out;
}

}  // namespace wshrink
