#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "demolab/index_set.hpp"
#include "demolab/matrices.hpp"

namespace demolab {

/// Default cap on the number of column/row subsets an exhaustive scan may
/// visit before it refuses and suggests Monte Carlo estimation.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000;

/// Restricted-isometry scan result. low_bound/high_bound are the extreme
/// eigenvalues of the restricted Gram matrices over the visited supports;
/// delta = max(1 - low_bound, high_bound - 1) is the smallest constant for
/// which (1-delta)||x||^2 <= ||Phi x||^2 <= (1+delta)||x||^2 holds on them.
struct RipReport {
  int order = 0;
  double delta = 0.0;
  IndexSet worst_low_subset;
  IndexSet worst_high_subset;
  double low_bound = 0.0;
  double high_bound = 0.0;
  /// true when produced by subset sampling; delta is then a lower bound on
  /// the exact constant.
  bool estimate = false;
};

/// Exact RIP constant of order `order` by exhaustive enumeration of all
/// size-`order` column supports (smaller supports are dominated by eigenvalue
/// interlacing). Throws EnumerationTooLargeError beyond `budget` subsets.
RipReport exact_rip(const Eigen::Ref<const Eigen::MatrixXd>& phi, int order,
                    std::uint64_t budget = kDefaultEnumerationBudget, int jobs = 1);

inline RipReport exact_rip(const MeasurementMatrix& m, int order,
                           std::uint64_t budget = kDefaultEnumerationBudget, int jobs = 1) {
  return exact_rip(m.entries, order, budget, jobs);
}

/// Lower-bound estimate of the RIP constant from `samples` random supports.
RipReport monte_carlo_rip(const Eigen::Ref<const Eigen::MatrixXd>& phi, int order,
                          long samples, std::uint64_t seed);

inline RipReport monte_carlo_rip(const MeasurementMatrix& m, int order, long samples,
                                 std::uint64_t seed) {
  return monte_carlo_rip(m.entries, order, samples, seed);
}

/// Democracy certificate: every row subset Gamma with |Gamma| = m_tilde must
/// give a row submatrix whose exact RIP constant at `order` stays within
/// delta_bound. Subsets with |Gamma| > m_tilde are dominated (deleting more
/// rows can only increase delta), so only the minimal size is scanned.
struct DemocracyReport {
  int m_tilde = 0;
  int order = 0;
  double delta_bound = 0.0;
  IndexSet worst_gamma;
  double worst_delta = 0.0;
  bool holds = false;
};

DemocracyReport democracy_certificate(const Eigen::Ref<const Eigen::MatrixXd>& phi, int m_tilde,
                                      int order, double delta_bound,
                                      std::uint64_t budget = kDefaultEnumerationBudget,
                                      int jobs = 1);

inline DemocracyReport democracy_certificate(const MeasurementMatrix& m, int m_tilde, int order,
                                             double delta_bound,
                                             std::uint64_t budget = kDefaultEnumerationBudget,
                                             int jobs = 1) {
  return democracy_certificate(m.entries, m_tilde, order, delta_bound, budget, jobs);
}

/// One support on which the projected isometry bounds failed, beyond slack.
struct PripViolation {
  IndexSet support;
  double eig_min = 0.0;
  double eig_max = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

struct PripReport {
  int order = 0;
  int lambda_size = 0;
  double delta = 0.0;
  double slack = 0.0;
  std::uint64_t supports_checked = 0;
  std::vector<PripViolation> violations;
  bool holds() const { return violations.empty(); }
};

/// Verifies, for every support T disjoint from lambda with
/// |T| <= order - |lambda|, that all u supported on T satisfy
///   (1 - delta/(1-delta)) ||u||^2 <= ||P_perp A u||^2 <= (1+delta) ||u||^2,
/// where P_perp nulls the columns of A indexed by lambda. `delta` must be the
/// exact RIP constant of A at `order` and lie in (0, 1); violations are
/// counted only beyond `slack`.
PripReport projected_rip_check(const AugmentedMatrix& a, const IndexSet& lambda, int order,
                               double delta, double slack = 1e-9,
                               std::uint64_t budget = kDefaultEnumerationBudget, int jobs = 1);

/// One sampled sparse pair that violated the inner-product bound.
struct IpViolation {
  long sample = 0;
  double lhs = 0.0;
  double bound = 0.0;
};

struct IpReport {
  int order = 0;
  double delta = 0.0;
  double slack = 0.0;
  long samples = 0;
  std::vector<IpViolation> violations;
  bool holds() const { return violations.empty(); }
};

/// Samples random pairs (u, v) with |supp(u) u supp(v)| <= order and checks
///   |<Au, Av> - <u, v>| <= delta ||u|| ||v|| + slack.
/// `delta` must be the exact RIP constant of `a` at `order`.
IpReport inner_product_check(const Eigen::Ref<const Eigen::MatrixXd>& a, int order, double delta,
                             long samples, std::uint64_t seed, double slack = 1e-9);

/// Constants of the democracy theorem for a given (K, D, N, C1, delta):
/// c2 = (delta/8)^2 - log(42 e / delta)/c1, epsilon = delta/14,
/// eta = delta/(2 sqrt(2)), and the measurement count solving
/// M = c1 (K+D) log((N+M)/(K+D)) as a fixed point.
struct TheoremConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double delta = 0.0;
  int k = 0;
  int d = 0;
  long n = 0;
  double m_required = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;
};

TheoremConstants theorem1_constants(int k, int d, long n, double c1, double delta);

}  // namespace demolab
