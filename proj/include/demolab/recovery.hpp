#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <optional>

#include "demolab/index_set.hpp"

namespace demolab {

enum class Solver { l1, omp };

inline const char* to_string(Solver s) { return s == Solver::l1 ? "l1" : "omp"; }

/// Exactly K-sparse vector with unit l2 norm.
struct SparseSignal {
  int n = 0;
  IndexSet support;
  Eigen::VectorXd values;  // one value per support index, same order
  double norm = 1.0;

  Eigen::VectorXd dense() const;
};

/// Support chosen uniformly at random, values i.i.d. standard normal, then
/// normalized to unit l2.
SparseSignal random_sparse_signal(int n, int k, std::uint64_t seed);

/// Dense compressible test vector: sorted magnitudes i^{-decay_exponent}
/// placed at randomly permuted positions with random signs, unit l2 norm.
Eigen::VectorXd compressible_signal(int n, double decay_exponent, std::uint64_t seed);

struct SolverOptions {
  double feas_tol = 1e-6;   // primal residual: ||Phi z - y|| <= feas_tol * ||y||
  double obj_tol = 1e-8;    // l1 objective change per iteration
  long max_iters = 20000;
  long check_every = 10;
  std::optional<Eigen::VectorXd> init;  // warm start for the primal iterate
  /// Optional stall cutoff: stop with converged=false when the best
  /// feasibility seen has improved by less than (1 - stall_factor) over the
  /// last stall_checks convergence checks. 0 disables (the default); the
  /// experiment presets enable it so hopeless solves fail fast.
  long stall_checks = 0;
  double stall_factor = 0.995;
};

struct RecoveryResult {
  Eigen::VectorXd estimate;
  double residual = 0.0;
  double rel_error = std::numeric_limits<double>::quiet_NaN();
  long iterations = 0;
  bool converged = false;
  Solver solver = Solver::l1;
};

/// Power-method estimate of the spectral norm (deterministic start vector).
double operator_norm(const Eigen::Ref<const Eigen::MatrixXd>& a, int iters = 200);

/// Basis pursuit min ||z||_1 s.t. Phi z = y by the Chambolle-Pock primal-dual
/// scheme with step sizes from a power-method estimate of ||Phi||_2.
/// Hitting the iteration cap is reported via converged=false, not an error.
RecoveryResult l1_recover(const Eigen::Ref<const Eigen::MatrixXd>& phi,
                          const Eigen::Ref<const Eigen::VectorXd>& y,
                          const SolverOptions& opts = {});

/// Orthogonal matching pursuit: k greedy steps of maximal residual
/// correlation with a least-squares refit. Cross-check oracle for l1_recover.
RecoveryResult omp_recover(const Eigen::Ref<const Eigen::MatrixXd>& phi,
                           const Eigen::Ref<const Eigen::VectorXd>& y, int k,
                           double feas_tol = 1e-6);

double rel_error(const Eigen::Ref<const Eigen::VectorXd>& truth,
                 const Eigen::Ref<const Eigen::VectorXd>& estimate);

/// True iff ||truth - estimate||_2 / ||truth||_2 <= tol.
bool exact_recovery(const SparseSignal& truth, const RecoveryResult& result, double tol = 1e-4);

/// Keeps the k largest-magnitude entries (ties broken by lowest index),
/// zeroes the rest.
Eigen::VectorXd best_k_term(const Eigen::Ref<const Eigen::VectorXd>& x, int k);

}  // namespace demolab
