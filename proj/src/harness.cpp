#include "demolab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "demolab/errors.hpp"
#include "demolab/io.hpp"
#include "demolab/parallel.hpp"
#include "demolab/rng.hpp"

namespace demolab {

namespace {

// Stream labels for deterministic per-purpose seed derivation. The Gamma
// stream is keyed by (m, trial, D, draw) and deliberately not by policy, so
// the single-submatrix policy tests exactly the first draw of the all-R
// policy and d_max ordering between them holds per trial.
constexpr std::uint64_t kPhiStream = 0xD1;
constexpr std::uint64_t kSignalStream = 0xD2;
constexpr std::uint64_t kGammaStream = 0xD3;
constexpr std::uint64_t kStabPhiStream = 0xD4;
constexpr std::uint64_t kStabSignalStream = 0xD5;
constexpr std::uint64_t kStabGammaStream = 0xD6;

}  // namespace

const char* to_string(DropPolicy p) {
  switch (p) {
    case DropPolicy::random_single: return "random_single";
    case DropPolicy::random_multi: return "random_multi";
    case DropPolicy::adversarial_largest: return "adversarial_largest";
  }
  return "?";
}

DropPolicy policy_from_string(std::string_view s) {
  if (s == "random_single") return DropPolicy::random_single;
  if (s == "random_multi") return DropPolicy::random_multi;
  if (s == "adversarial_largest") return DropPolicy::adversarial_largest;
  throw PreconditionError("unknown drop policy: " + std::string(s));
}

const char* to_string(ScanStrategy s) {
  return s == ScanStrategy::linear ? "linear" : "gallop";
}

ScanStrategy scan_from_string(std::string_view s) {
  if (s == "linear") return ScanStrategy::linear;
  if (s == "gallop") return ScanStrategy::gallop;
  throw PreconditionError("unknown scan strategy: " + std::string(s));
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw PreconditionError("experiment: n must be >= 1");
  if (cfg.k < 1 || cfg.k > cfg.n) throw PreconditionError("experiment: k must lie in [1, n]");
  if (cfg.m_grid.empty()) throw PreconditionError("experiment: m_grid must be nonempty");
  for (std::size_t i = 0; i < cfg.m_grid.size(); ++i) {
    if (i > 0 && cfg.m_grid[i] <= cfg.m_grid[i - 1]) {
      throw PreconditionError("experiment: m_grid must be strictly increasing");
    }
  }
  if (cfg.k >= cfg.m_grid.front()) {
    throw PreconditionError("experiment: k must be < min(m_grid)");
  }
  if (cfg.trials < 1) throw PreconditionError("experiment: trials must be >= 1");
  if (cfg.r_submatrices < 1) throw PreconditionError("experiment: R must be >= 1");
  if (cfg.policies.empty()) throw PreconditionError("experiment: no drop policies given");
  if (!(cfg.recovery_tol > 0.0)) throw PreconditionError("experiment: recovery_tol must be > 0");
}

std::optional<LinearFit> fit_curve(const std::vector<CurvePoint>& points) {
  std::vector<CurvePoint> used;
  for (const auto& p : points) {
    if (p.d_max > 0) used.push_back(p);
  }
  if (used.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (const auto& p : used) {
    mx += p.m;
    my += p.d_max;
  }
  mx /= static_cast<double>(used.size());
  my /= static_cast<double>(used.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : used) {
    sxx += (p.m - mx) * (p.m - mx);
    sxy += (p.m - mx) * (p.d_max - my);
  }
  if (sxx == 0.0) return std::nullopt;
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = static_cast<int>(used.size());
  return fit;
}

std::optional<int> onset(const std::vector<CurvePoint>& points) {
  for (const auto& p : points) {
    if (p.d_max > 0) return p.m;
  }
  return std::nullopt;
}

TrialInstance make_trial(const ExperimentConfig& cfg, int m, int trial) {
  TrialInstance inst;
  inst.seed = derive_seed(cfg.master_seed, kPhiStream, static_cast<std::uint64_t>(m),
                          static_cast<std::uint64_t>(trial));
  inst.phi = generate(m, cfg.n, Dist::gaussian, inst.seed);
  inst.x = random_sparse_signal(
      cfg.n, cfg.k,
      derive_seed(cfg.master_seed, kSignalStream, static_cast<std::uint64_t>(m),
                  static_cast<std::uint64_t>(trial)));
  inst.y = inst.phi.entries * inst.x.dense();
  return inst;
}

IndexSet adversarial_keep_set(const Eigen::Ref<const Eigen::VectorXd>& y, int drop) {
  const int m = static_cast<int>(y.size());
  if (drop < 0 || drop > m) throw PreconditionError("adversarial_keep_set: bad drop count");
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double fa = std::abs(y(a));
    const double fb = std::abs(y(b));
    if (fa != fb) return fa > fb;
    return a < b;
  });
  std::vector<int> keep;
  keep.reserve(static_cast<std::size_t>(m - drop));
  for (int i = drop; i < m; ++i) keep.push_back(order[static_cast<std::size_t>(i)] + 1);
  return IndexSet(std::move(keep), m);
}

namespace {

struct Attempt {
  bool success = false;
  double rel_error = 0.0;
};

/// One drop level: draws the level's submatrices and tests recovery on each.
/// For random_multi every one of the R draws must recover.
Attempt attempt_level(const TrialInstance& inst, const ExperimentConfig& cfg, int m, int trial,
                      int drop, DropPolicy policy, const Eigen::VectorXd* warm) {
  const Eigen::VectorXd truth = inst.x.dense();
  SolverOptions opts = cfg.solver;
  if (warm) opts.init = *warm;

  const int draws =
      (policy == DropPolicy::random_multi && drop > 0) ? cfg.r_submatrices : 1;
  Attempt out;
  out.success = true;
  for (int draw = 0; draw < draws; ++draw) {
    IndexSet gamma;
    if (policy == DropPolicy::adversarial_largest) {
      gamma = adversarial_keep_set(inst.y, drop);
    } else if (drop == 0) {
      gamma = IndexSet::full(m);
    } else {
      Rng rng(derive_seed(cfg.master_seed, kGammaStream, static_cast<std::uint64_t>(m),
                          static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(drop),
                          static_cast<std::uint64_t>(draw)));
      gamma = IndexSet::random(m, m - drop, rng);
    }
    const Eigen::MatrixXd sub = select_rows(inst.phi.entries, gamma);
    const Eigen::VectorXd y_sub = select_entries(inst.y, gamma);
    const RecoveryResult res = l1_recover(sub, y_sub, opts);
    const double rel = rel_error(truth, res.estimate);
    out.rel_error = std::max(out.rel_error, rel);
    if (!(res.converged && rel <= cfg.recovery_tol)) {
      out.success = false;
      out.rel_error = rel;
      return out;
    }
  }
  return out;
}

}  // namespace

int d_max_trial(const TrialInstance& inst, const ExperimentConfig& cfg, int m, int trial,
                DropPolicy policy, double* rel_error_out) {
  // Level 0 is solved cold; its estimate warm-starts every deeper level.
  const RecoveryResult base = l1_recover(inst.phi.entries, inst.y, cfg.solver);
  const Eigen::VectorXd truth = inst.x.dense();
  const double base_rel = rel_error(truth, base.estimate);
  if (!(base.converged && base_rel <= cfg.recovery_tol)) {
    if (rel_error_out) *rel_error_out = base_rel;
    return -1;
  }
  const Eigen::VectorXd warm = base.estimate;

  const int d_hi = m - cfg.k;  // keep at least k rows
  double best_rel = base_rel;
  if (d_hi == 0) {
    if (rel_error_out) *rel_error_out = best_rel;
    return 0;
  }

  auto probe = [&](int drop) { return attempt_level(inst, cfg, m, trial, drop, policy, &warm); };

  if (cfg.scan == ScanStrategy::linear) {
    int d = 0;
    for (int drop = 1; drop <= d_hi; ++drop) {
      const Attempt a = probe(drop);
      if (!a.success) break;
      best_rel = a.rel_error;
      d = drop;
    }
    if (rel_error_out) *rel_error_out = best_rel;
    return d;
  }

  // Gallop: exponential probe for the first failing level, then bisection.
  // Seeds are keyed by (m, trial, D, draw), so each probed level tests the
  // same submatrices a linear scan would.
  Attempt a1 = probe(1);
  if (!a1.success) {
    if (rel_error_out) *rel_error_out = best_rel;
    return 0;
  }
  best_rel = a1.rel_error;
  int lo = 1;       // verified success
  int hi = -1;      // verified failure (-1: none yet)
  int step = 1;
  while (hi < 0) {
    const int next = std::min(lo + step, d_hi);
    if (next == lo) break;
    const Attempt a = probe(next);
    if (a.success) {
      lo = next;
      best_rel = a.rel_error;
      if (next == d_hi) break;
      step *= 2;
    } else {
      hi = next;
    }
  }
  if (hi < 0) {
    if (rel_error_out) *rel_error_out = best_rel;
    return d_hi;
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    const Attempt a = probe(mid);
    if (a.success) {
      lo = mid;
      best_rel = a.rel_error;
    } else {
      hi = mid;
    }
  }
  if (rel_error_out) *rel_error_out = best_rel;
  return lo;
}

const PolicyCurve& ExperimentResult::curve(DropPolicy p) const {
  for (const auto& c : curves) {
    if (c.policy == p) return c;
  }
  throw PreconditionError(std::string("no curve for policy ") + to_string(p));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::size_t n_policies = cfg.policies.size();
  const std::size_t n_m = cfg.m_grid.size();
  const std::size_t n_trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t cells = n_policies * n_m * n_trials;

  struct Cell {
    int d = 0;
    double rel = 0.0;
    std::uint64_t seed = 0;
  };
  std::vector<Cell> results(cells);
  parallel_for(cells, cfg.jobs, [&](std::size_t idx) {
    const std::size_t p = idx / (n_m * n_trials);
    const std::size_t rest = idx % (n_m * n_trials);
    const int m = cfg.m_grid[rest / n_trials];
    const int trial = static_cast<int>(rest % n_trials);
    const TrialInstance inst = make_trial(cfg, m, trial);
    Cell c;
    c.seed = inst.seed;
    c.d = d_max_trial(inst, cfg, m, trial, cfg.policies[p], &c.rel);
    results[idx] = c;
  });

  ExperimentResult out;
  out.cfg = cfg;
  for (std::size_t p = 0; p < n_policies; ++p) {
    PolicyCurve curve;
    curve.policy = cfg.policies[p];
    for (std::size_t mi = 0; mi < n_m; ++mi) {
      const int m = cfg.m_grid[mi];
      int d_min = std::numeric_limits<int>::max();
      for (std::size_t t = 0; t < n_trials; ++t) {
        const Cell& c = results[p * n_m * n_trials + mi * n_trials + t];
        d_min = std::min(d_min, c.d);
        curve.trials.push_back({m, static_cast<int>(t), c.d, curve.policy, c.d >= 0, c.rel,
                                c.seed});
      }
      curve.points.push_back({m, d_min});
    }
    curve.fit = fit_curve(curve.points);
    out.curves.push_back(std::move(curve));
  }
  return out;
}

std::map<DropPolicy, std::optional<int>> onset_scan(const ExperimentConfig& cfg) {
  validate(cfg);
  std::map<DropPolicy, std::optional<int>> onsets;
  for (DropPolicy p : cfg.policies) onsets[p] = std::nullopt;

  for (int m : cfg.m_grid) {
    bool all_found = true;
    for (DropPolicy p : cfg.policies) {
      if (!onsets[p]) all_found = false;
    }
    if (all_found) break;

    for (DropPolicy p : cfg.policies) {
      if (onsets[p]) continue;
      // d_max > 0 needs success at D=0 and D=1 on every trial; abort early
      // once any trial fails.
      std::atomic<bool> failed{false};
      parallel_for(static_cast<std::size_t>(cfg.trials), cfg.jobs, [&](std::size_t t) {
        if (failed.load()) return;
        const TrialInstance inst = make_trial(cfg, m, static_cast<int>(t));
        const RecoveryResult base = l1_recover(inst.phi.entries, inst.y, cfg.solver);
        const double base_rel = rel_error(inst.x.dense(), base.estimate);
        if (!(base.converged && base_rel <= cfg.recovery_tol)) {
          failed.store(true);
          return;
        }
        if (failed.load()) return;
        const Eigen::VectorXd warm = base.estimate;
        const Attempt a = attempt_level(inst, cfg, m, static_cast<int>(t), 1, p, &warm);
        if (!a.success) failed.store(true);
      });
      if (!failed.load()) onsets[p] = m;
    }
  }
  return onsets;
}

void write_results_csv(const std::filesystem::path& path, const ExperimentResult& result) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << "policy,m,trial,d_max_trial\n";
  for (const auto& curve : result.curves) {
    for (const auto& t : curve.trials) {
      os << to_string(t.policy) << ',' << t.m << ',' << t.trial << ',' << t.d << '\n';
    }
  }
  if (!os) throw IoError("write failed: " + path.string());
}

void write_summary_csv(const std::filesystem::path& path, const ExperimentResult& result) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << "policy,m,d_max\n";
  for (const auto& curve : result.curves) {
    for (const auto& p : curve.points) {
      os << to_string(curve.policy) << ',' << p.m << ',' << p.d_max << '\n';
    }
  }
  if (!os) throw IoError("write failed: " + path.string());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

std::vector<TrialRecord> read_results_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != "policy,m,trial,d_max_trial") {
    throw IoError("bad results header in " + path.string());
  }
  std::vector<TrialRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 4) throw IoError("bad results row in " + path.string());
    TrialRecord r;
    r.policy = policy_from_string(cells[0]);
    r.m = std::stoi(cells[1]);
    r.trial = std::stoi(cells[2]);
    r.d = std::stoi(cells[3]);
    r.success = r.d >= 0;
    records.push_back(r);
  }
  return records;
}

std::vector<std::pair<DropPolicy, CurvePoint>> read_summary_csv(
    const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != "policy,m,d_max") {
    throw IoError("bad summary header in " + path.string());
  }
  std::vector<std::pair<DropPolicy, CurvePoint>> points;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3) throw IoError("bad summary row in " + path.string());
    points.emplace_back(policy_from_string(cells[0]),
                        CurvePoint{std::stoi(cells[1]), std::stoi(cells[2])});
  }
  return points;
}

void write_plot_script(const std::filesystem::path& path, const ExperimentResult& result,
                       const std::string& summary_csv_name) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << "# Drop-robustness curves: D_max vs M per policy, with linear fits\n"
     << "# over the D_max > 0 points. Run: gnuplot " << path.filename().string() << "\n"
     << "set datafile separator comma\n"
     << "set xlabel 'M'\n"
     << "set ylabel 'D_max'\n"
     << "set key top left\n";
  std::vector<std::string> plots;
  int fit_id = 0;
  for (const auto& curve : result.curves) {
    const std::string name = to_string(curve.policy);
    const int pt = curve.policy == DropPolicy::random_single ? 6
                   : curve.policy == DropPolicy::random_multi ? 7
                                                              : 4;
    plots.push_back("'" + summary_csv_name + "' using (strcol(1) eq '" + name +
                    "' ? $2 : NaN):($3 >= 0 ? $3 : NaN) with points pt " + std::to_string(pt) +
                    " title '" + name + "'");
    if (curve.fit) {
      ++fit_id;
      const std::string fn = "fit" + std::to_string(fit_id);
      os << fn << "(x) = " << format_full(curve.fit->slope) << " * x + "
         << format_full(curve.fit->intercept) << "\n";
      const std::string dt = curve.policy == DropPolicy::random_single ? " dashtype 2" : "";
      plots.push_back(fn + "(x)" + dt + " title '" + name + " fit'");
    }
  }
  os << "plot \\\n";
  for (std::size_t i = 0; i < plots.size(); ++i) {
    os << "  " << plots[i] << (i + 1 < plots.size() ? ", \\" : "") << "\n";
  }
  os << "pause -1 'press enter'\n";
  if (!os) throw IoError("write failed: " + path.string());
}

StabilityResult stability_experiment(const ExperimentConfig& cfg, int d_base,
                                     const std::vector<int>& d_extra_grid,
                                     double decay_exponent) {
  validate(cfg);
  if (d_base < 0) throw PreconditionError("stability: d_base must be >= 0");
  if (d_extra_grid.empty()) throw PreconditionError("stability: empty d_extra grid");
  const int m = cfg.m_grid.front();
  for (int d_extra : d_extra_grid) {
    if (d_extra < 0) throw PreconditionError("stability: d_extra must be >= 0");
    if (d_extra >= cfg.k) {
      throw PreconditionError("stability: d_extra must be < k (the proof needs D~ < K)");
    }
    if (cfg.k - d_extra < 2) {
      throw PreconditionError("stability: k - d_extra must be >= 2 so ktilde >= 1");
    }
    if (m - d_base - d_extra < cfg.k) {
      throw PreconditionError("stability: too few rows left after dropping");
    }
  }

  StabilityResult out;
  out.m = m;
  out.d_base = d_base;
  out.decay_exponent = decay_exponent;

  const std::size_t n_trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t n_levels = d_extra_grid.size();
  // 2 signal kinds x levels x trials, flattened; sparse first.
  std::vector<StabilityRow> rows(2 * n_levels * n_trials);
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t idx) {
    const bool sparse = idx < n_levels * n_trials;
    const std::size_t rest = idx % (n_levels * n_trials);
    const int level = static_cast<int>(rest / n_trials);
    const int trial = static_cast<int>(rest % n_trials);
    const int d_extra = d_extra_grid[static_cast<std::size_t>(level)];

    const MeasurementMatrix phi =
        generate(m, cfg.n, Dist::gaussian,
                 derive_seed(cfg.master_seed, kStabPhiStream, static_cast<std::uint64_t>(trial)));
    Eigen::VectorXd truth;
    if (sparse) {
      truth = random_sparse_signal(cfg.n, cfg.k,
                                   derive_seed(cfg.master_seed, kStabSignalStream,
                                               static_cast<std::uint64_t>(trial), 1ull))
                  .dense();
    } else {
      truth = compressible_signal(cfg.n, decay_exponent,
                                  derive_seed(cfg.master_seed, kStabSignalStream,
                                              static_cast<std::uint64_t>(trial), 0ull));
    }
    const Eigen::VectorXd y = phi.entries * truth;

    Rng rng(derive_seed(cfg.master_seed, kStabGammaStream, static_cast<std::uint64_t>(trial),
                        static_cast<std::uint64_t>(d_extra), sparse ? 1ull : 0ull));
    const IndexSet gamma = IndexSet::random(m, m - d_base - d_extra, rng);
    const RecoveryResult res =
        l1_recover(select_rows(phi.entries, gamma), select_entries(y, gamma), cfg.solver);

    StabilityRow row;
    row.d_extra = d_extra;
    row.trial = trial;
    row.sparse_signal = sparse;
    row.rel_err = rel_error(truth, res.estimate);
    const int k_tilde = (cfg.k - d_extra) / 2;
    const Eigen::VectorXd approx = best_k_term(truth, k_tilde);
    row.bound_denominator =
        (truth - approx).lpNorm<1>() / std::sqrt(static_cast<double>(k_tilde));
    row.ratio = row.bound_denominator > 0.0 ? row.rel_err / row.bound_denominator : 0.0;
    rows[idx] = row;
  });
  out.rows = std::move(rows);

  for (std::size_t level = 0; level < n_levels; ++level) {
    StabilitySummary s;
    s.d_extra = d_extra_grid[level];
    s.k_tilde = (cfg.k - s.d_extra) / 2;
    double sum_comp = 0.0, sum_sparse = 0.0;
    for (const auto& row : out.rows) {
      if (row.d_extra != s.d_extra) continue;
      if (row.sparse_signal) {
        sum_sparse += row.rel_err;
      } else {
        sum_comp += row.rel_err;
        s.max_ratio_compressible = std::max(s.max_ratio_compressible, row.ratio);
      }
    }
    s.mean_error_compressible = sum_comp / static_cast<double>(n_trials);
    s.mean_error_sparse = sum_sparse / static_cast<double>(n_trials);
    out.summaries.push_back(s);
  }
  return out;
}

void write_stability_csv(const std::filesystem::path& path, const StabilityResult& result) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << "signal,d_extra,trial,rel_error,bound_denominator,ratio\n";
  for (const auto& r : result.rows) {
    os << (r.sparse_signal ? "sparse" : "compressible") << ',' << r.d_extra << ',' << r.trial
       << ',' << format_full(r.rel_err) << ',' << format_full(r.bound_denominator) << ','
       << format_full(r.ratio) << '\n';
  }
  if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace demolab
