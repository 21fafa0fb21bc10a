#ifndef WSHRINK_EXPERIMENTS_HPP
#define WSHRINK_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "wshrink/holder.hpp"
#include "wshrink/noise.hpp"
#include "wshrink/shrink.hpp"
#include "wshrink/stats.hpp"
#include "wshrink/threshold.hpp"

namespace wshrink {

struct ExperimentPlan {
  SignalKind signal = SignalKind::cusp;
  double alpha = 1.0;
  double M = 1.0;
  NoiseSpec noise;  ///< the seed field is ignored; trials derive their own
  std::vector<std::size_t> n_values;
  std::vector<double> deltas{1.0};
  std::size_t trials = 0;
  ThresholdMode mode = ThresholdMode::soft;
  int interval_N = 0;   ///< 0 selects Haar
  int interval_J0 = 0;  ///< 0 selects the smallest admissible level
  std::optional<double> lambda;             ///< fixed threshold instead of the formula
  std::optional<double> envelope_constant;  ///< c in c * rate(n)
  std::uint64_t master_seed = 0;
  std::filesystem::path cache_dir;  ///< interval matrix cache; empty disables it
};

/// Throws std::invalid_argument / GeometryError for an unusable plan.
void validate(const ExperimentPlan& plan);

/// Keyed 64-bit mix of (master, cell, trial).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial);

/// WSHRINK_WORKERS if set to a positive integer, else the hardware thread count.
unsigned worker_count();

struct TrialReport {
  std::size_t cell = 0;
  std::size_t trial = 0;
  std::size_t n = 0;
  double delta = 0.0;
  double max_sq_err = 0.0;
  double mse = 0.0;
  std::optional<bool> in_A;  ///< empty when n does not admit the set-A geometry
  std::uint64_t exceed_count = 0;
  std::uint64_t seed = 0;

  // Coefficient diagnostics (not serialized).
  int coarse_level = 0;
  std::vector<std::uint64_t> exceed_by_level;  ///< |d^(e)_{j,k}| > lambda, index j - coarse_level
  bool approx_exceeds = false;                  ///< some |c^(e)_{J0,k}| > lambda
  std::optional<bool> coeff_bound_holds;        ///< set for set-A members
  bool shrink_bound_checked = false;
  std::uint64_t shrink_bound_violations = 0;
};

struct CellInfo {
  std::size_t n = 0;
  double delta = 0.0;
  int J0 = 0;
  int J1 = 0;
  double lambda = 0.0;
  double c_phi = 1.0;
  bool below_theorem_range = false;
};

struct PlanResult {
  std::vector<CellInfo> cells;       ///< n-major, then delta
  std::vector<TrialReport> reports;  ///< ordered by (cell, trial)
};

/// Runs every (n, delta) cell for plan.trials trials on `workers` threads
/// (0 = worker_count()). Reports are independent of the worker count.
PlanResult run_plan(const ExperimentPlan& plan, unsigned workers = 0);

/// (log2 n / n)^{2 alpha / (1 + 2 alpha)}.
double rate_scale(std::size_t n, double alpha);

/// q-quantile of max_sq_err / rate_scale(n, alpha) over the reports.
double calibrate_envelope(std::span<const TrialReport> reports, double alpha, double q);

struct CellSummary {
  std::size_t n = 0;
  double delta = 0.0;
  std::size_t trials = 0;
  double q50_max = 0.0;
  double q50_mse = 0.0;
  double p_within_envelope = 0.0;  ///< NaN without an envelope constant
  double p_A_hat = 0.0;            ///< NaN when set A is not defined for n
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool below_theorem_range = false;
};

/// One summary per cell that ran at least one trial.
std::vector<CellSummary> summarize(const ExperimentPlan& plan, const PlanResult& result);

struct RateFit {
  double exponent = 0.0;  ///< slope of log(q50_max) against log(log2 n / n)
  double intercept = 0.0;
  double residual = 0.0;
  double target = 0.0;    ///< 2 alpha / (1 + 2 alpha)
  std::size_t points = 0;
};

/// Needs at least four distinct n and positive errors.
RateFit fit_rate(std::span<const std::size_t> n_values, std::span<const double> errors, double alpha);

/// Uses q50_max of the summaries; all summaries must share one delta.
RateFit fit_rate(std::span<const CellSummary> summaries, double alpha);

struct EventProbability {
  std::uint64_t members = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  Interval ci;
  std::uint64_t coeff_bound_violations = 0;  ///< among members
  double worst_member_ratio = 0.0;
};

/// Frequency of set-A membership over `trials` noise draws, with a Wilson
/// 99% interval; also runs noise_coeff_bound_check on every member.
EventProbability estimate_event_probability(const NoiseSpec& noise, std::size_t n, std::size_t trials,
                                            std::uint64_t master_seed, const WaveletBasis& basis,
                                            unsigned workers = 0);

struct ExceedanceCensus {
  std::vector<std::uint64_t> exceed_by_level;        ///< indexed by absolute level j
  std::vector<std::uint64_t> coefficients_by_level;
  std::uint64_t total_exceed = 0;
  std::uint64_t total_coefficients = 0;
};

ExceedanceCensus threshold_exceedance_census(std::span<const TrialReport> reports);

/// Per-level counts of |d_{j,k}| > lambda for a coefficient pyramid.
std::vector<std::uint64_t> count_exceedances(const CoefficientPyramid& pyramid, double lambda);

}  // namespace wshrink

#endif  // WSHRINK_EXPERIMENTS_HPP
