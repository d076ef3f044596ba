#include "demolab/riplab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "demolab/errors.hpp"
#include "demolab/parallel.hpp"
#include "demolab/rng.hpp"
#include "demolab/subsets.hpp"

namespace demolab {

namespace {

struct Extreme {
  double value = 0.0;
  std::uint64_t rank = 0;
  std::vector<int> subset;  // 0-based column ids
  bool set = false;
};

void keep_min(Extreme& e, double v, std::uint64_t rank, const std::vector<int>& subset) {
  if (!e.set || v < e.value || (v == e.value && rank < e.rank)) {
    e = {v, rank, subset, true};
  }
}

void keep_max(Extreme& e, double v, std::uint64_t rank, const std::vector<int>& subset) {
  if (!e.set || v > e.value || (v == e.value && rank < e.rank)) {
    e = {v, rank, subset, true};
  }
}

struct ScanResult {
  Extreme low;
  Extreme high;
};

IndexSet to_index_set(const std::vector<int>& zero_based, int universe) {
  std::vector<int> one_based(zero_based.size());
  for (std::size_t i = 0; i < zero_based.size(); ++i) one_based[i] = zero_based[i] + 1;
  return IndexSet(std::move(one_based), universe);
}

/// Extreme eigenvalues of G restricted to all size-k principal submatrices,
/// visited in lexicographic order over a contiguous rank range.
void scan_gram_range(const Eigen::MatrixXd& gram, const std::vector<int>& pool, int k,
                     std::uint64_t rank_begin, std::uint64_t rank_end, ScanResult& out) {
  const int n = static_cast<int>(pool.size());
  std::vector<int> comb = combination_at_rank(n, k, rank_begin);
  Eigen::MatrixXd block(k, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  std::vector<int> cols(static_cast<std::size_t>(k));
  for (std::uint64_t rank = rank_begin; rank < rank_end; ++rank) {
    for (int i = 0; i < k; ++i) cols[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])];
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j <= i; ++j) {
        block(i, j) = gram(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        block(j, i) = block(i, j);
      }
    }
    es.compute(block, Eigen::EigenvaluesOnly);
    keep_min(out.low, es.eigenvalues()(0), rank, cols);
    keep_max(out.high, es.eigenvalues()(k - 1), rank, cols);
    if (rank + 1 < rank_end) next_combination(comb, n);
  }
}

ScanResult scan_gram(const Eigen::MatrixXd& gram, const std::vector<int>& pool, int k,
                     std::uint64_t count, int jobs) {
  const std::uint64_t chunk_target = 4096;
  const std::uint64_t chunks =
      jobs <= 1 ? 1 : std::min<std::uint64_t>((count + chunk_target - 1) / chunk_target,
                                              static_cast<std::uint64_t>(jobs) * 8);
  if (chunks <= 1) {
    ScanResult r;
    scan_gram_range(gram, pool, k, 0, count, r);
    return r;
  }
  std::vector<ScanResult> partial(chunks);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::uint64_t begin = count * c / chunks;
    const std::uint64_t end = count * (c + 1) / chunks;
    scan_gram_range(gram, pool, k, begin, end, partial[c]);
  });
  ScanResult r;
  for (const auto& p : partial) {
    if (p.low.set) keep_min(r.low, p.low.value, p.low.rank, p.low.subset);
    if (p.high.set) keep_max(r.high, p.high.value, p.high.rank, p.high.subset);
  }
  return r;
}

RipReport report_from_scan(const ScanResult& scan, int order, int universe, bool estimate) {
  RipReport rep;
  rep.order = order;
  rep.low_bound = scan.low.value;
  rep.high_bound = scan.high.value;
  rep.worst_low_subset = to_index_set(scan.low.subset, universe);
  rep.worst_high_subset = to_index_set(scan.high.subset, universe);
  rep.delta = std::max(1.0 - rep.low_bound, rep.high_bound - 1.0);
  rep.estimate = estimate;
  return rep;
}

std::vector<int> all_columns(int n) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  return pool;
}

void check_order(int order, Eigen::Index cols, const char* caller) {
  if (order < 1) throw PreconditionError(std::string(caller) + ": order must be >= 1");
  if (order > cols) {
    throw PreconditionError(std::string(caller) + ": order " + std::to_string(order) +
                            " exceeds column count " + std::to_string(cols));
  }
}

}  // namespace

RipReport exact_rip(const Eigen::Ref<const Eigen::MatrixXd>& phi, int order,
                    std::uint64_t budget, int jobs) {
  check_order(order, phi.cols(), "exact_rip");
  const int n = static_cast<int>(phi.cols());
  const std::uint64_t count = binomial(n, order, budget + 1);
  if (count > budget) {
    throw EnumerationTooLargeError(
        "exact_rip: C(" + std::to_string(n) + "," + std::to_string(order) +
        ") exceeds the enumeration budget of " + std::to_string(budget) +
        " subsets; use monte_carlo_rip for an estimate");
  }
  const Eigen::MatrixXd gram = phi.transpose() * phi;
  const ScanResult scan = scan_gram(gram, all_columns(n), order, count, jobs);
  return report_from_scan(scan, order, n, /*estimate=*/false);
}

RipReport monte_carlo_rip(const Eigen::Ref<const Eigen::MatrixXd>& phi, int order, long samples,
                          std::uint64_t seed) {
  check_order(order, phi.cols(), "monte_carlo_rip");
  if (samples < 1) throw PreconditionError("monte_carlo_rip: samples must be >= 1");
  const int n = static_cast<int>(phi.cols());
  const Eigen::MatrixXd gram = phi.transpose() * phi;
  Rng rng(seed);
  ScanResult scan;
  Eigen::MatrixXd block(order, order);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  std::vector<int> cols(static_cast<std::size_t>(order));
  for (long s = 0; s < samples; ++s) {
    const IndexSet support = IndexSet::random(n, order, rng);
    for (int i = 0; i < order; ++i) cols[static_cast<std::size_t>(i)] = support[static_cast<std::size_t>(i)] - 1;
    for (int i = 0; i < order; ++i) {
      for (int j = 0; j <= i; ++j) {
        block(i, j) = gram(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        block(j, i) = block(i, j);
      }
    }
    es.compute(block, Eigen::EigenvaluesOnly);
    keep_min(scan.low, es.eigenvalues()(0), static_cast<std::uint64_t>(s), cols);
    keep_max(scan.high, es.eigenvalues()(order - 1), static_cast<std::uint64_t>(s), cols);
  }
  return report_from_scan(scan, order, n, /*estimate=*/true);
}

DemocracyReport democracy_certificate(const Eigen::Ref<const Eigen::MatrixXd>& phi, int m_tilde,
                                      int order, double delta_bound, std::uint64_t budget,
                                      int jobs) {
  const int m = static_cast<int>(phi.rows());
  const int n = static_cast<int>(phi.cols());
  if (m_tilde < 1 || m_tilde > m) {
    throw PreconditionError("democracy_certificate: m_tilde must lie in [1, rows]");
  }
  if (order >= m_tilde) {
    throw PreconditionError("democracy_certificate: order must be < m_tilde");
  }
  check_order(order, n, "democracy_certificate");
  const std::uint64_t gamma_count = binomial(m, m_tilde, budget + 1);
  const std::uint64_t per_gamma = binomial(n, order, budget + 1);
  if (gamma_count > budget || per_gamma > budget ||
      gamma_count > budget / std::max<std::uint64_t>(per_gamma, 1)) {
    throw EnumerationTooLargeError(
        "democracy_certificate: C(M,m_tilde) x C(N,order) exceeds the enumeration budget of " +
        std::to_string(budget) + " subsets");
  }

  const std::vector<int> pool = all_columns(n);
  struct Worst {
    double delta = -1.0;
    std::uint64_t rank = 0;
    std::vector<int> gamma;
    RipReport rip;
    bool set = false;
  };
  const std::uint64_t chunks =
      jobs <= 1 ? 1 : std::min<std::uint64_t>(gamma_count, static_cast<std::uint64_t>(jobs) * 4);
  std::vector<Worst> partial(chunks);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::uint64_t begin = gamma_count * c / chunks;
    const std::uint64_t end = gamma_count * (c + 1) / chunks;
    if (begin == end) return;
    std::vector<int> gamma = combination_at_rank(m, m_tilde, begin);
    Eigen::MatrixXd sub(m_tilde, n);
    Worst& w = partial[c];
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      for (int i = 0; i < m_tilde; ++i) sub.row(i) = phi.row(gamma[static_cast<std::size_t>(i)]);
      const Eigen::MatrixXd gram = sub.transpose() * sub;
      const ScanResult scan = scan_gram(gram, pool, order, per_gamma, 1);
      const RipReport rep = report_from_scan(scan, order, n, false);
      if (!w.set || rep.delta > w.delta || (rep.delta == w.delta && rank < w.rank)) {
        w = {rep.delta, rank, gamma, rep, true};
      }
      if (rank + 1 < end) next_combination(gamma, m);
    }
  });
  Worst worst;
  for (const auto& p : partial) {
    if (p.set && (!worst.set || p.delta > worst.delta ||
                  (p.delta == worst.delta && p.rank < worst.rank))) {
      worst = p;
    }
  }

  DemocracyReport rep;
  rep.m_tilde = m_tilde;
  rep.order = order;
  rep.delta_bound = delta_bound;
  rep.worst_gamma = to_index_set(worst.gamma, m);
  rep.worst_delta = worst.delta;
  rep.holds = worst.delta <= delta_bound;
  return rep;
}

PripReport projected_rip_check(const AugmentedMatrix& a, const IndexSet& lambda, int order,
                               double delta, double slack, std::uint64_t budget, int jobs) {
  const int cols = static_cast<int>(a.cols());
  if (lambda.universe() != cols) {
    throw IndexRangeError("projected_rip_check: lambda universe must match A's column count");
  }
  if (lambda.size() >= order) {
    throw PreconditionError("projected_rip_check: |lambda| must be < order");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw PreconditionError("projected_rip_check: delta must lie in (0,1) (RIP constant)");
  }
  check_order(order, cols, "projected_rip_check");

  const Eigen::MatrixXd projector = range_projector(a.full, lambda);
  const Eigen::MatrixXd b = complement_projector(projector) * a.full;
  const Eigen::MatrixXd gram = b.transpose() * b;

  std::vector<int> allowed;
  allowed.reserve(static_cast<std::size_t>(cols - lambda.size()));
  for (int j = 1; j <= cols; ++j) {
    if (!lambda.contains(j)) allowed.push_back(j - 1);
  }

  const int max_size = order - lambda.size();
  const int pool_n = static_cast<int>(allowed.size());
  std::uint64_t total = 0;
  for (int s = 1; s <= max_size; ++s) {
    const std::uint64_t c = binomial(pool_n, s, budget + 1);
    if (c > budget || total > budget - c) {
      throw EnumerationTooLargeError(
          "projected_rip_check: support enumeration exceeds the budget of " +
          std::to_string(budget));
    }
    total += c;
  }

  const double lower = 1.0 - delta / (1.0 - delta);
  const double upper = 1.0 + delta;

  PripReport rep;
  rep.order = order;
  rep.lambda_size = lambda.size();
  rep.delta = delta;
  rep.slack = slack;
  rep.supports_checked = total;

  for (int s = 1; s <= max_size; ++s) {
    const std::uint64_t count = binomial(pool_n, s);
    const std::uint64_t chunks =
        jobs <= 1 ? 1 : std::min<std::uint64_t>(count, static_cast<std::uint64_t>(jobs) * 4);
    std::vector<std::vector<PripViolation>> partial(chunks);
    parallel_for(chunks, jobs, [&](std::size_t c) {
      const std::uint64_t begin = count * c / chunks;
      const std::uint64_t end = count * (c + 1) / chunks;
      if (begin == end) return;
      std::vector<int> comb = combination_at_rank(pool_n, s, begin);
      Eigen::MatrixXd block(s, s);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      for (std::uint64_t rank = begin; rank < end; ++rank) {
        std::vector<int> cols_ids(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i) {
          cols_ids[static_cast<std::size_t>(i)] = allowed[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])];
        }
        for (int i = 0; i < s; ++i) {
          for (int j = 0; j <= i; ++j) {
            block(i, j) = gram(cols_ids[static_cast<std::size_t>(i)], cols_ids[static_cast<std::size_t>(j)]);
            block(j, i) = block(i, j);
          }
        }
        es.compute(block, Eigen::EigenvaluesOnly);
        const double eig_min = es.eigenvalues()(0);
        const double eig_max = es.eigenvalues()(s - 1);
        if (eig_min < lower - slack || eig_max > upper + slack) {
          partial[c].push_back(
              {to_index_set(cols_ids, cols), eig_min, eig_max, lower, upper});
        }
        if (rank + 1 < end) next_combination(comb, pool_n);
      }
    });
    for (auto& p : partial) {
      rep.violations.insert(rep.violations.end(), p.begin(), p.end());
    }
  }
  return rep;
}

IpReport inner_product_check(const Eigen::Ref<const Eigen::MatrixXd>& a, int order, double delta,
                             long samples, std::uint64_t seed, double slack) {
  check_order(order, a.cols(), "inner_product_check");
  if (samples < 1) throw PreconditionError("inner_product_check: samples must be >= 1");
  if (delta < 0.0) throw PreconditionError("inner_product_check: delta must be >= 0");

  const int n = static_cast<int>(a.cols());
  IpReport rep;
  rep.order = order;
  rep.delta = delta;
  rep.slack = slack;
  rep.samples = samples;

  Eigen::VectorXd au(a.rows());
  Eigen::VectorXd av(a.rows());
  for (long s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const int union_size = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(order)));
    const IndexSet support = IndexSet::random(n, union_size, rng);
    au.setZero();
    av.setZero();
    double uu = 0.0, vv = 0.0, uv = 0.0;
    for (int idx : support) {
      const std::uint64_t member = rng.bounded(3);  // 0: u only, 1: v only, 2: both
      double ui = 0.0, vi = 0.0;
      if (member == 0 || member == 2) ui = rng.normal();
      if (member == 1 || member == 2) vi = rng.normal();
      if (ui != 0.0) au += ui * a.col(idx - 1);
      if (vi != 0.0) av += vi * a.col(idx - 1);
      uu += ui * ui;
      vv += vi * vi;
      uv += ui * vi;
    }
    const double lhs = std::abs(au.dot(av) - uv);
    const double bound = delta * std::sqrt(uu) * std::sqrt(vv);
    if (lhs > bound + slack) {
      rep.violations.push_back({s, lhs, bound});
    }
  }
  return rep;
}

TheoremConstants theorem1_constants(int k, int d, long n, double c1, double delta) {
  if (!(c1 > 0.0)) throw PreconditionError("theorem1_constants: c1 must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw PreconditionError("theorem1_constants: delta must lie in (0,1)");
  }
  if (k < 0 || d < 0 || k + d < 1) {
    throw PreconditionError("theorem1_constants: k + d must be >= 1");
  }
  if (n < 1) throw PreconditionError("theorem1_constants: n must be >= 1");

  TheoremConstants tc;
  tc.c1 = c1;
  tc.delta = delta;
  tc.k = k;
  tc.d = d;
  tc.n = n;
  tc.c2 = (delta / 8.0) * (delta / 8.0) -
          std::log(42.0 * std::exp(1.0) / delta) / c1;
  tc.epsilon = delta / 14.0;
  tc.eta = delta / (2.0 * std::sqrt(2.0));

  const double kd = static_cast<double>(k + d);
  const double nn = static_cast<double>(n);
  auto f = [&](double m) { return c1 * kd * std::log((nn + m) / kd); };

  double m = std::max(c1 * kd * std::log(nn / kd), 0.0);
  bool converged = false;
  for (int it = 0; it < 1000; ++it) {
    if (nn + m <= 0.0) throw NumericError("theorem1_constants: log argument became nonpositive");
    const double next = f(m);
    if (!std::isfinite(next)) throw NumericError("theorem1_constants: fixed point diverged");
    if (std::abs(next - m) <= 1e-13 * std::max(1.0, std::abs(next))) {
      m = next;
      converged = true;
      break;
    }
    m = next;
  }
  if (!converged) {
    throw NumericError("theorem1_constants: fixed point did not converge in 1000 iterations");
  }
  tc.m_required = m;
  return tc;
}

}  // namespace demolab
