#include "demolab/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "demolab/errors.hpp"
#include "demolab/rng.hpp"

namespace demolab {

Eigen::VectorXd SparseSignal::dense() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < support.size(); ++i) {
    x(support[static_cast<std::size_t>(i)] - 1) = values(i);
  }
  return x;
}

SparseSignal random_sparse_signal(int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) {
    throw PreconditionError("random_sparse_signal: k must lie in [1, n]");
  }
  Rng rng(seed);
  SparseSignal s;
  s.n = n;
  s.support = IndexSet::random(n, k, rng);
  s.values.resize(k);
  double norm = 0.0;
  do {
    for (int i = 0; i < k; ++i) s.values(i) = rng.normal();
    norm = s.values.norm();
  } while (norm == 0.0);
  s.values /= norm;
  s.norm = 1.0;
  return s;
}

Eigen::VectorXd compressible_signal(int n, double decay_exponent, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("compressible_signal: n must be >= 1");
  Rng rng(seed);
  std::vector<int> positions(static_cast<std::size_t>(n));
  std::iota(positions.begin(), positions.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i + 1)));
    std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(j)]);
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const double mag = std::pow(static_cast<double>(i + 1), -decay_exponent);
    const double sign = rng.uniform01() < 0.5 ? 1.0 : -1.0;
    x(positions[static_cast<std::size_t>(i)]) = sign * mag;
  }
  x /= x.norm();
  return x;
}

double operator_norm(const Eigen::Ref<const Eigen::MatrixXd>& a, int iters) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.cols());
  v /= v.norm();
  double norm_sq = 0.0;
  for (int i = 0; i < iters; ++i) {
    Eigen::VectorXd w = a.transpose() * (a * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    w /= next;
    if (std::abs(next - norm_sq) <= 1e-12 * next && i > 2) {
      norm_sq = next;
      break;
    }
    norm_sq = next;
    v.swap(w);
  }
  return std::sqrt(norm_sq);
}

namespace {

inline double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

}  // namespace

RecoveryResult l1_recover(const Eigen::Ref<const Eigen::MatrixXd>& phi,
                          const Eigen::Ref<const Eigen::VectorXd>& y,
                          const SolverOptions& opts) {
  const Eigen::Index m = phi.rows();
  const Eigen::Index n = phi.cols();
  if (y.size() != m) throw InvalidDimensionError("l1_recover: y length must equal rows");
  if (m < 1 || n < 1) throw InvalidDimensionError("l1_recover: phi must be nonempty");

  RecoveryResult res;
  res.solver = Solver::l1;
  const double y_norm = y.norm();
  if (y_norm == 0.0) {
    res.estimate = Eigen::VectorXd::Zero(n);
    res.converged = true;
    return res;
  }

  const double op = operator_norm(phi);
  if (op == 0.0) throw PreconditionError("l1_recover: phi is zero");
  const double step = 0.99 / op;  // tau = sigma = step, so tau*sigma*||Phi||^2 < 1

  Eigen::VectorXd z = opts.init && opts.init->size() == n ? *opts.init
                                                          : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd z_bar = z;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd grad(n);
  Eigen::VectorXd az(m);

  double last_obj = z.lpNorm<1>();
  long it = 0;
  bool converged = false;
  const long check_every = std::max<long>(1, opts.check_every);
  std::vector<double> best_feas_history;
  double best_feas = std::numeric_limits<double>::infinity();
  while (it < opts.max_iters) {
    az.noalias() = phi * z_bar;
    p += step * (az - y);
    grad.noalias() = phi.transpose() * p;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double next = soft_threshold(z(j) - step * grad(j), step);
      z_bar(j) = 2.0 * next - z(j);
      z(j) = next;
    }
    ++it;
    if (it % check_every == 0) {
      az.noalias() = phi * z;
      const double feas = (az - y).norm();
      const double obj = z.lpNorm<1>();
      const double obj_change = std::abs(obj - last_obj) / static_cast<double>(check_every);
      last_obj = obj;
      if (feas <= opts.feas_tol * y_norm && obj_change <= opts.obj_tol) {
        converged = true;
        break;
      }
      if (opts.stall_checks > 0) {
        best_feas = std::min(best_feas, feas);
        best_feas_history.push_back(best_feas);
        const std::size_t checks = best_feas_history.size();
        if (checks > static_cast<std::size_t>(opts.stall_checks)) {
          const double before =
              best_feas_history[checks - 1 - static_cast<std::size_t>(opts.stall_checks)];
          if (best_feas > opts.stall_factor * before) break;
        }
      }
    }
  }

  res.estimate = z;
  res.residual = (phi * z - y).norm();
  res.iterations = it;
  res.converged = converged;
  return res;
}

RecoveryResult omp_recover(const Eigen::Ref<const Eigen::MatrixXd>& phi,
                           const Eigen::Ref<const Eigen::VectorXd>& y, int k,
                           double feas_tol) {
  const Eigen::Index m = phi.rows();
  const Eigen::Index n = phi.cols();
  if (y.size() != m) throw InvalidDimensionError("omp_recover: y length must equal rows");
  if (k < 1) throw PreconditionError("omp_recover: k must be >= 1");
  if (k > m) throw PreconditionError("omp_recover: k must be <= rows");

  RecoveryResult res;
  res.solver = Solver::omp;
  const double y_norm = y.norm();
  if (y_norm == 0.0) {
    res.estimate = Eigen::VectorXd::Zero(n);
    res.converged = true;
    return res;
  }

  std::vector<int> chosen;
  std::vector<char> in_support(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd residual = y;
  Eigen::MatrixXd basis(m, k);
  Eigen::VectorXd coeffs;
  for (int step = 0; step < k; ++step) {
    // Most-correlated unused column; ties go to the lowest index.
    int best = -1;
    double best_corr = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (in_support[static_cast<std::size_t>(j)]) continue;
      const double corr = std::abs(phi.col(j).dot(residual));
      if (corr > best_corr) {
        best_corr = corr;
        best = static_cast<int>(j);
      }
    }
    chosen.push_back(best);
    in_support[static_cast<std::size_t>(best)] = 1;
    basis.col(step) = phi.col(best);

    const auto active = basis.leftCols(step + 1);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(active);
    qr.setThreshold(1e-12);
    if (qr.rank() < step + 1) {
      throw DegenerateSelectionError(
          "omp_recover: selected columns are rank-deficient at step " +
          std::to_string(step + 1));
    }
    coeffs = qr.solve(y);
    residual = y - active * coeffs;
  }

  res.estimate = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < k; ++i) res.estimate(chosen[static_cast<std::size_t>(i)]) = coeffs(i);
  res.residual = residual.norm();
  res.iterations = k;
  res.converged = res.residual <= feas_tol * y_norm;
  return res;
}

double rel_error(const Eigen::Ref<const Eigen::VectorXd>& truth,
                 const Eigen::Ref<const Eigen::VectorXd>& estimate) {
  if (truth.size() != estimate.size()) {
    throw InvalidDimensionError("rel_error: length mismatch");
  }
  const double tn = truth.norm();
  if (tn == 0.0) return estimate.norm() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return (truth - estimate).norm() / tn;
}

bool exact_recovery(const SparseSignal& truth, const RecoveryResult& result, double tol) {
  if (result.estimate.size() != truth.n) {
    throw InvalidDimensionError("exact_recovery: estimate length mismatch");
  }
  return rel_error(truth.dense(), result.estimate) <= tol;
}

Eigen::VectorXd best_k_term(const Eigen::Ref<const Eigen::VectorXd>& x, int k) {
  const Eigen::Index n = x.size();
  if (k < 0 || k > n) throw PreconditionError("best_k_term: k must lie in [0, n]");
  if (k == n) return x;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  if (k == 0) return out;
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&](Eigen::Index a, Eigen::Index b) {
                      const double fa = std::abs(x(a));
                      const double fb = std::abs(x(b));
                      if (fa != fb) return fa > fb;
                      return a < b;
                    });
  for (int i = 0; i < k; ++i) out(idx[static_cast<std::size_t>(i)]) = x(idx[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace demolab
