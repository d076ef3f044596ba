#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <numbers>
#include <vector>

#include "demolab/errors.hpp"
#include "demolab/matrices.hpp"

namespace demolab {

/// Monte Carlo setup for the norm-concentration experiment. The test vector
/// u = (w, x) is fixed (w: scaled constant block of length m, x: scaled
/// alternating-sign block of length n) and Phi is redrawn every trial.
struct ConcentrationConfig {
  int m = 64;
  int n = 64;
  double eta = 0.5;
  long trials = 100000;
  std::uint64_t seed = 1;
  double w_norm = 1.0 / std::numbers::sqrt2;
  double x_norm = 1.0 / std::numbers::sqrt2;
  Dist dist = Dist::gaussian;
  int jobs = 1;
};

/// Empirical tails vs. the closed-form bounds. All bounds are computed from
/// the closed forms (3e^{-M eta^2/8} etc.), never estimated. Runs with a
/// non-Gaussian entry distribution are informational: the constant 8 in the
/// exponent is Gaussian-specific.
struct TailReport {
  double empirical_mean = 0.0;
  double target_mean = 0.0;
  double empirical_tail = 0.0;
  double bound = 0.0;
  double cross_term_tail = 0.0;
  double cross_term_bound = 0.0;
  double phi_tail = 0.0;
  double phi_bound = 0.0;
  double mean_stderr = 0.0;
  double cross_term_variance = 0.0;
  double cross_term_variance_target = 0.0;
  long trials = 0;
  bool informational = false;
};

/// The deterministic test vector used by concentration_experiment.
Eigen::VectorXd concentration_test_vector(const ConcentrationConfig& cfg);

/// Estimates E||Au||^2 and the three deviation tails of the concentration
/// lemma for A = [I Phi], with per-trial deviations optionally collected
/// into `deviations` (|| Au ||^2 - ||u||^2 per trial) for histogramming.
TailReport concentration_experiment(const ConcentrationConfig& cfg,
                                    std::vector<double>* deviations = nullptr);

/// | ||Au||^2 - (||w||^2 + 2 w' Phi x + ||Phi x||^2) | for u = (w, x).
/// Contract: <= 1e-10 * ||u||^2.
double decomposition_identity(const Eigen::Ref<const Eigen::MatrixXd>& phi,
                              const Eigen::Ref<const Eigen::VectorXd>& u);

inline double decomposition_identity(const MeasurementMatrix& m,
                                     const Eigen::Ref<const Eigen::VectorXd>& u) {
  return decomposition_identity(m.entries, u);
}

/// One grid point of the sub-Gaussian moment-generating-function check.
struct MgfPoint {
  double t = 0.0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;  // e^{c^2 t^2 / 2}
  bool violated = false;
};

struct MgfReport {
  Dist dist = Dist::gaussian;
  double c = 0.0;
  long samples = 0;
  std::vector<MgfPoint> points;
  int violations = 0;
};

/// Estimates E(e^{Xt}) over t_grid for the unit-variance version of `dist`
/// (gaussian: N(0,1); rademacher: +/-1; uniform: U[-sqrt(3), sqrt(3)]) and
/// flags t where estimate - 3*stderr exceeds the Gaussian-domination bound
/// e^{c^2 t^2/2}.
MgfReport mgf_check(Dist dist, double c, const std::vector<double>& t_grid, long samples,
                    std::uint64_t seed);

}  // namespace demolab
