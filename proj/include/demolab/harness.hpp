#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "demolab/matrices.hpp"
#include "demolab/recovery.hpp"

namespace demolab {

enum class DropPolicy { random_single, random_multi, adversarial_largest };

const char* to_string(DropPolicy p);
DropPolicy policy_from_string(std::string_view s);

/// How the drop-count axis is probed per trial. Both strategies verify a
/// success at the reported d_max and a failure at d_max + 1 (or stop at the
/// m - k boundary); `gallop` reaches the boundary in O(log d_max) probes by
/// exponential search plus bisection, relying on the same per-(m, trial, D,
/// draw) seed streams, so it tests the identical submatrices `linear` would.
enum class ScanStrategy { linear, gallop };

const char* to_string(ScanStrategy s);
ScanStrategy scan_from_string(std::string_view s);

struct ExperimentConfig {
  int n = 512;
  int k = 6;
  std::vector<int> m_grid;
  int trials = 20;
  int r_submatrices = 50;
  std::vector<DropPolicy> policies = {DropPolicy::random_single, DropPolicy::random_multi};
  std::uint64_t master_seed = 1;
  double recovery_tol = 1e-4;
  SolverOptions solver;
  ScanStrategy scan = ScanStrategy::gallop;
  int jobs = 1;
};

/// Throws PreconditionError unless the grid is strictly increasing,
/// k < min(m_grid), trials >= 1 and R >= 1.
void validate(const ExperimentConfig& cfg);

/// Per-trial outcome at the deepest verified drop level.
struct TrialRecord {
  int m = 0;
  int trial = 0;
  int d = 0;  // the trial's d_max; -1 when recovery fails at D = 0
  DropPolicy policy = DropPolicy::random_single;
  bool success = false;
  double rel_error = 0.0;
  std::uint64_t seed = 0;
};

struct CurvePoint {
  int m = 0;
  int d_max = 0;  // min over trials; -1 when some trial fails at D = 0
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points_used = 0;
};

/// Least-squares line over curve points with d_max > 0; nullopt when fewer
/// than two such points exist.
std::optional<LinearFit> fit_curve(const std::vector<CurvePoint>& points);

/// Smallest m with d_max > 0.
std::optional<int> onset(const std::vector<CurvePoint>& points);

/// Measurement matrix, signal and measurements for one (m, trial) cell.
/// Identical across policies so that adversarial/random comparisons pair up.
struct TrialInstance {
  MeasurementMatrix phi;
  SparseSignal x;
  Eigen::VectorXd y;
  std::uint64_t seed = 0;
};

TrialInstance make_trial(const ExperimentConfig& cfg, int m, int trial);

/// Rows kept after the adversary removes the D largest-magnitude entries of
/// y (ties: the lowest index is dropped first).
IndexSet adversarial_keep_set(const Eigen::Ref<const Eigen::VectorXd>& y, int drop);

/// Largest D such that recovery succeeds at every drop level up to D for the
/// given policy; -1 if D = 0 already fails. rel_error_out (optional) receives
/// the relative error of the attempt at the returned level.
int d_max_trial(const TrialInstance& inst, const ExperimentConfig& cfg, int m, int trial,
                DropPolicy policy, double* rel_error_out = nullptr);

struct PolicyCurve {
  DropPolicy policy = DropPolicy::random_single;
  std::vector<CurvePoint> points;
  std::optional<LinearFit> fit;
  std::vector<TrialRecord> trials;
};

struct ExperimentResult {
  ExperimentConfig cfg;
  std::vector<PolicyCurve> curves;

  const PolicyCurve& curve(DropPolicy p) const;
};

/// Runs the full drop experiment: per (policy, m, trial) cell computes the
/// trial's d_max, aggregates the per-m curve as the minimum over trials, and
/// fits a line over the d_max > 0 points.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Onset-only scan: walks m upward and reports, per policy, the smallest m
/// whose aggregated d_max is > 0 (success at D = 0 and D = 1 on every
/// trial). Stops as soon as every policy has an onset. Far cheaper than
/// run_experiment when only onsets are needed.
std::map<DropPolicy, std::optional<int>> onset_scan(const ExperimentConfig& cfg);

/// CSV/plot emission. results.csv: policy,m,trial,d_max_trial;
/// summary.csv: policy,m,d_max; fits go to JSON via serialize.hpp.
void write_results_csv(const std::filesystem::path& path, const ExperimentResult& result);
void write_summary_csv(const std::filesystem::path& path, const ExperimentResult& result);
std::vector<TrialRecord> read_results_csv(const std::filesystem::path& path);
std::vector<std::pair<DropPolicy, CurvePoint>> read_summary_csv(const std::filesystem::path& path);

/// gnuplot script reproducing the two-curve drop plot from summary.csv.
void write_plot_script(const std::filesystem::path& path, const ExperimentResult& result,
                       const std::string& summary_csv_name);

/// Stability under over-dropping: drops d_base + d_extra measurements and
/// tracks the recovery error against ||x - x_ktilde||_1 / sqrt(ktilde) with
/// ktilde = floor((k - d_extra) / 2).
struct StabilityRow {
  int d_extra = 0;
  int trial = 0;
  bool sparse_signal = false;  // true: exactly k-sparse x; false: compressible
  double rel_err = 0.0;
  double bound_denominator = 0.0;  // 0 for exactly sparse signals with ktilde >= k
  double ratio = 0.0;              // rel_err / bound_denominator when defined
};

struct StabilitySummary {
  int d_extra = 0;
  int k_tilde = 0;
  double mean_error_compressible = 0.0;
  double max_ratio_compressible = 0.0;  // empirical c3 hat
  double mean_error_sparse = 0.0;
};

struct StabilityResult {
  int m = 0;
  int d_base = 0;
  double decay_exponent = 0.0;
  std::vector<StabilityRow> rows;
  std::vector<StabilitySummary> summaries;
};

/// Uses m = cfg.m_grid.front() as the measurement count. Preconditions:
/// every d_extra < k and k - d_extra >= 2 (so ktilde >= 1).
StabilityResult stability_experiment(const ExperimentConfig& cfg, int d_base,
                                     const std::vector<int>& d_extra_grid,
                                     double decay_exponent = 1.5);

void write_stability_csv(const std::filesystem::path& path, const StabilityResult& result);

}  // namespace demolab
