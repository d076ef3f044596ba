#pragma once

// Test-only oracles, deliberately independent of the library's code paths:
// different decompositions (SVD vs. symmetric eigensolver), different
// enumeration (recursion vs. lexicographic odometer), different root finding
// (bisection vs. fixed point).

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Exact RIP constant by recursive enumeration of every support of size
/// 1..order, using squared singular values of the column selections.
inline double rip_delta_svd(const Eigen::MatrixXd& phi, int order) {
  const int n = static_cast<int>(phi.cols());
  double low = std::numeric_limits<double>::infinity();
  double high = -std::numeric_limits<double>::infinity();
  std::vector<int> support;
  std::function<void(int)> recurse = [&](int start) {
    if (!support.empty()) {
      Eigen::MatrixXd sub(phi.rows(), static_cast<Eigen::Index>(support.size()));
      for (std::size_t i = 0; i < support.size(); ++i) {
        sub.col(static_cast<Eigen::Index>(i)) = phi.col(support[i]);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
      const auto& sigma = svd.singularValues();
      // Thin SVD of an r x c matrix has min(r, c) singular values; a wide
      // selection (c > r) is rank-deficient, so the smallest sigma^2 is 0.
      const double smax = sigma(0) * sigma(0);
      const double smin = static_cast<Eigen::Index>(support.size()) > phi.rows()
                              ? 0.0
                              : sigma(sigma.size() - 1) * sigma(sigma.size() - 1);
      low = std::min(low, smin);
      high = std::max(high, smax);
    }
    if (static_cast<int>(support.size()) == order) return;
    for (int j = start; j < n; ++j) {
      support.push_back(j);
      recurse(j + 1);
      support.pop_back();
    }
  };
  recurse(0);
  return std::max(1.0 - low, high - 1.0);
}

/// Solves M = c1 (k+d) log((n+M)/(k+d)) by bisection on g(M) = f(M) - M.
inline double m_required_bisection(int k, int d, long n, double c1) {
  const double kd = static_cast<double>(k + d);
  auto g = [&](double m) {
    return c1 * kd * std::log((static_cast<double>(n) + m) / kd) - m;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// E(e^{Xt}) for X uniform on [-sqrt(3), sqrt(3)] (unit variance).
inline double uniform_mgf(double t) {
  const double a = std::sqrt(3.0) * t;
  if (std::abs(a) < 1e-8) return 1.0 + a * a / 6.0;
  return std::sinh(a) / a;
}

/// Best k-term approximation by exhaustive search over all k-subsets,
/// minimizing the l2 error. Only for small n.
inline Eigen::VectorXd best_k_term_exhaustive(const Eigen::VectorXd& x, int k) {
  const int n = static_cast<int>(x.size());
  double best_err = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best = Eigen::VectorXd::Zero(n);
  std::vector<int> support;
  std::function<void(int)> recurse = [&](int start) {
    if (static_cast<int>(support.size()) == k) {
      Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
      for (int j : support) z(j) = x(j);
      const double err = (x - z).norm();
      if (err < best_err) {
        best_err = err;
        best = z;
      }
      return;
    }
    for (int j = start; j < n; ++j) {
      support.push_back(j);
      recurse(j + 1);
      support.pop_back();
    }
  };
  recurse(0);
  return best;
}

/// One-sided sign test: P(X >= wins) for X ~ Binomial(n, 1/2).
inline double sign_test_p(int n, int wins) {
  double p = 0.0;
  for (int j = wins; j <= n; ++j) {
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) -
                  n * std::log(2.0));
  }
  return std::min(p, 1.0);
}

}  // namespace oracle
