#include "demolab/concentration.hpp"

#include <cmath>

#include "demolab/parallel.hpp"
#include "demolab/rng.hpp"

namespace demolab {

namespace {

/// Tail event with a degenerate-threshold rule: a zero threshold (zero block
/// norm) counts an event only on an actual nonzero deviation.
bool tail_event(double deviation, double threshold) {
  return threshold > 0.0 ? deviation >= threshold : deviation > 0.0;
}

struct Tally {
  double sum_total = 0.0;
  double sum_total_sq = 0.0;
  double sum_cross = 0.0;
  double sum_cross_sq = 0.0;
  long tail = 0;
  long phi_tail = 0;
  long cross_tail = 0;
};

void validate(const ConcentrationConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 1) throw PreconditionError("concentration: m, n must be >= 1");
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) {
    throw PreconditionError("concentration: eta must lie in (0,1)");
  }
  if (cfg.trials < 1) throw PreconditionError("concentration: trials must be >= 1");
  if (cfg.w_norm < 0.0 || cfg.x_norm < 0.0) {
    throw PreconditionError("concentration: block norms must be >= 0");
  }
}

}  // namespace

Eigen::VectorXd concentration_test_vector(const ConcentrationConfig& cfg) {
  Eigen::VectorXd u(cfg.m + cfg.n);
  const double w_entry = cfg.w_norm / std::sqrt(static_cast<double>(cfg.m));
  for (int i = 0; i < cfg.m; ++i) u(i) = w_entry;
  const double x_entry = cfg.x_norm / std::sqrt(static_cast<double>(cfg.n));
  for (int j = 0; j < cfg.n; ++j) u(cfg.m + j) = (j % 2 == 0 ? x_entry : -x_entry);
  return u;
}

TailReport concentration_experiment(const ConcentrationConfig& cfg,
                                    std::vector<double>* deviations) {
  validate(cfg);
  const Eigen::VectorXd u = concentration_test_vector(cfg);
  const Eigen::VectorXd w = u.head(cfg.m);
  const Eigen::VectorXd x = u.tail(cfg.n);
  const double u_sq = u.squaredNorm();
  const double x_sq = x.squaredNorm();
  const double wn = w.norm();
  const double xn = x.norm();

  const double tail_threshold = 2.0 * cfg.eta * u_sq;
  const double phi_threshold = cfg.eta * x_sq;
  const double cross_threshold = cfg.eta * wn * xn;

  if (deviations) deviations->assign(static_cast<std::size_t>(cfg.trials), 0.0);

  // Fixed-size trial blocks keep the reduction order independent of the job
  // count, so results are identical for any `jobs`.
  const long block = 4096;
  const long blocks = (cfg.trials + block - 1) / block;
  std::vector<Tally> partial(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), cfg.jobs, [&](std::size_t b) {
    Tally t;
    const long begin = static_cast<long>(b) * block;
    const long end = std::min(cfg.trials, begin + block);
    Eigen::VectorXd phi_x(cfg.m);
    for (long trial = begin; trial < end; ++trial) {
      const MeasurementMatrix phi =
          generate(cfg.m, cfg.n, cfg.dist, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
      phi_x.noalias() = phi.entries * x;
      const double cross = 2.0 * w.dot(phi_x);
      const double phi_sq = phi_x.squaredNorm();
      const double total = (w + phi_x).squaredNorm();
      t.sum_total += total;
      t.sum_total_sq += total * total;
      t.sum_cross += cross;
      t.sum_cross_sq += cross * cross;
      if (tail_event(std::abs(total - u_sq), tail_threshold)) ++t.tail;
      if (tail_event(std::abs(phi_sq - x_sq), phi_threshold)) ++t.phi_tail;
      if (tail_event(std::abs(cross), cross_threshold)) ++t.cross_tail;
      if (deviations) (*deviations)[static_cast<std::size_t>(trial)] = total - u_sq;
    }
    partial[b] = t;
  });

  Tally sum;
  for (const auto& t : partial) {
    sum.sum_total += t.sum_total;
    sum.sum_total_sq += t.sum_total_sq;
    sum.sum_cross += t.sum_cross;
    sum.sum_cross_sq += t.sum_cross_sq;
    sum.tail += t.tail;
    sum.phi_tail += t.phi_tail;
    sum.cross_tail += t.cross_tail;
  }

  const double trials = static_cast<double>(cfg.trials);
  const double exponent = std::exp(-static_cast<double>(cfg.m) * cfg.eta * cfg.eta / 8.0);

  TailReport rep;
  rep.trials = cfg.trials;
  rep.informational = cfg.dist != Dist::gaussian;
  rep.target_mean = u_sq;
  rep.empirical_mean = sum.sum_total / trials;
  const double var_total =
      std::max(0.0, sum.sum_total_sq / trials - rep.empirical_mean * rep.empirical_mean);
  rep.mean_stderr = std::sqrt(var_total / trials);
  rep.empirical_tail = static_cast<double>(sum.tail) / trials;
  rep.bound = 3.0 * exponent;
  rep.phi_tail = static_cast<double>(sum.phi_tail) / trials;
  rep.phi_bound = 2.0 * exponent;
  rep.cross_term_tail = static_cast<double>(sum.cross_tail) / trials;
  rep.cross_term_bound = exponent;
  const double cross_mean = sum.sum_cross / trials;
  rep.cross_term_variance =
      std::max(0.0, sum.sum_cross_sq / trials - cross_mean * cross_mean);
  rep.cross_term_variance_target =
      4.0 * wn * wn * xn * xn / static_cast<double>(cfg.m);
  return rep;
}

double decomposition_identity(const Eigen::Ref<const Eigen::MatrixXd>& phi,
                              const Eigen::Ref<const Eigen::VectorXd>& u) {
  const Eigen::Index m = phi.rows();
  const Eigen::Index n = phi.cols();
  if (u.size() != m + n) {
    throw InvalidDimensionError("decomposition_identity: u must have length M+N");
  }
  const Eigen::VectorXd w = u.head(m);
  const Eigen::VectorXd x = u.tail(n);
  const Eigen::VectorXd phi_x = phi * x;
  const double lhs = (w + phi_x).squaredNorm();
  const double rhs = w.squaredNorm() + 2.0 * w.dot(phi_x) + phi_x.squaredNorm();
  return std::abs(lhs - rhs);
}

MgfReport mgf_check(Dist dist, double c, const std::vector<double>& t_grid, long samples,
                    std::uint64_t seed) {
  if (!(c > 0.0)) throw PreconditionError("mgf_check: c must be > 0");
  if (samples < 1) throw PreconditionError("mgf_check: samples must be >= 1");
  for (double t : t_grid) {
    if (!std::isfinite(t)) throw PreconditionError("mgf_check: t grid must be finite");
  }

  const std::size_t nt = t_grid.size();
  std::vector<double> sum(nt, 0.0);
  std::vector<double> sum_sq(nt, 0.0);
  Rng rng(seed);
  const double ubound = std::sqrt(3.0);
  for (long s = 0; s < samples; ++s) {
    double x = 0.0;
    switch (dist) {
      case Dist::gaussian: x = rng.normal(); break;
      case Dist::rademacher: x = rng.uniform01() < 0.5 ? 1.0 : -1.0; break;
      case Dist::uniform: x = rng.uniform(-ubound, ubound); break;
    }
    for (std::size_t i = 0; i < nt; ++i) {
      const double e = std::exp(x * t_grid[i]);
      sum[i] += e;
      sum_sq[i] += e * e;
    }
  }

  MgfReport rep;
  rep.dist = dist;
  rep.c = c;
  rep.samples = samples;
  const double ns = static_cast<double>(samples);
  for (std::size_t i = 0; i < nt; ++i) {
    MgfPoint p;
    p.t = t_grid[i];
    p.estimate = sum[i] / ns;
    const double var = std::max(0.0, sum_sq[i] / ns - p.estimate * p.estimate);
    p.stderr_ = std::sqrt(var / ns);
    p.bound = std::exp(c * c * p.t * p.t / 2.0);
    p.violated = p.estimate - 3.0 * p.stderr_ > p.bound;
    if (p.violated) ++rep.violations;
    rep.points.push_back(p);
  }
  return rep;
}

}  // namespace demolab
