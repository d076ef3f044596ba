#include "demolab/serialize.hpp"

#include <fstream>

#include "demolab/errors.hpp"

namespace demolab {

json to_json(const IndexSet& s) {
  return json{{"indices", s.indices()}, {"universe", s.universe()}};
}

json to_json(const RipReport& r) {
  return json{{"order", r.order},
              {"delta", r.delta},
              {"worst_low_subset", to_json(r.worst_low_subset)},
              {"worst_high_subset", to_json(r.worst_high_subset)},
              {"low_bound", r.low_bound},
              {"high_bound", r.high_bound},
              {"estimate", r.estimate}};
}

json to_json(const DemocracyReport& r) {
  return json{{"m_tilde", r.m_tilde},
              {"order", r.order},
              {"delta_bound", r.delta_bound},
              {"worst_gamma", to_json(r.worst_gamma)},
              {"worst_delta", r.worst_delta},
              {"holds", r.holds}};
}

json to_json(const PripReport& r) {
  json violations = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < kViolationCap; ++i) {
    const auto& v = r.violations[i];
    violations.push_back(json{{"support", to_json(v.support)},
                              {"eig_min", v.eig_min},
                              {"eig_max", v.eig_max},
                              {"lower_bound", v.lower_bound},
                              {"upper_bound", v.upper_bound}});
  }
  return json{{"order", r.order},
              {"lambda_size", r.lambda_size},
              {"delta", r.delta},
              {"slack", r.slack},
              {"supports_checked", r.supports_checked},
              {"violations", violations},
              {"total_violations", r.violations.size()},
              {"holds", r.holds()}};
}

json to_json(const IpReport& r) {
  json violations = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < kViolationCap; ++i) {
    const auto& v = r.violations[i];
    violations.push_back(json{{"sample", v.sample}, {"lhs", v.lhs}, {"bound", v.bound}});
  }
  return json{{"order", r.order},       {"delta", r.delta},
              {"slack", r.slack},       {"samples", r.samples},
              {"violations", violations}, {"total_violations", r.violations.size()},
              {"holds", r.holds()}};
}

json to_json(const TheoremConstants& c) {
  return json{{"c1", c.c1},       {"c2", c.c2},
              {"delta", c.delta}, {"k", c.k},
              {"d", c.d},         {"n", c.n},
              {"m_required", c.m_required}, {"epsilon", c.epsilon},
              {"eta", c.eta}};
}

json to_json(const TailReport& r) {
  return json{{"empirical_mean", r.empirical_mean},
              {"target_mean", r.target_mean},
              {"empirical_tail", r.empirical_tail},
              {"bound", r.bound},
              {"cross_term_tail", r.cross_term_tail},
              {"cross_term_bound", r.cross_term_bound},
              {"phi_tail", r.phi_tail},
              {"phi_bound", r.phi_bound},
              {"mean_stderr", r.mean_stderr},
              {"cross_term_variance", r.cross_term_variance},
              {"cross_term_variance_target", r.cross_term_variance_target},
              {"trials", r.trials},
              {"informational", r.informational}};
}

json to_json(const MgfReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back(json{{"t", p.t},
                          {"estimate", p.estimate},
                          {"stderr", p.stderr_},
                          {"bound", p.bound},
                          {"violated", p.violated}});
  }
  return json{{"dist", to_string(r.dist)},
              {"c", r.c},
              {"samples", r.samples},
              {"points", points},
              {"violations", r.violations}};
}

json to_json(const RecoveryResult& r) {
  std::vector<double> estimate(r.estimate.data(), r.estimate.data() + r.estimate.size());
  json j{{"estimate", estimate},
         {"residual", r.residual},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"solver", to_string(r.solver)}};
  if (std::isfinite(r.rel_error)) j["rel_error"] = r.rel_error;
  return j;
}

json to_json(const LinearFit& f) {
  return json{{"slope", f.slope}, {"intercept", f.intercept}, {"points_used", f.points_used}};
}

json to_json(const ExperimentResult& r) {
  json curves = json::array();
  for (const auto& c : r.curves) {
    json points = json::array();
    for (const auto& p : c.points) {
      points.push_back(json{{"m", p.m}, {"d_max", p.d_max}});
    }
    json jc{{"policy", to_string(c.policy)}, {"points", points}};
    if (c.fit) jc["fit"] = to_json(*c.fit);
    curves.push_back(jc);
  }
  return json{{"curves", curves}};
}

json to_json(const StabilityResult& r) {
  json summaries = json::array();
  for (const auto& s : r.summaries) {
    summaries.push_back(json{{"d_extra", s.d_extra},
                             {"k_tilde", s.k_tilde},
                             {"mean_error_compressible", s.mean_error_compressible},
                             {"max_ratio_compressible", s.max_ratio_compressible},
                             {"mean_error_sparse", s.mean_error_sparse}});
  }
  return json{{"m", r.m},
              {"d_base", r.d_base},
              {"decay_exponent", r.decay_exponent},
              {"summaries", summaries}};
}

json to_json(const RunManifest& m) {
  return json{{"subcommand", m.subcommand}, {"config_path", m.config_path},
              {"master_seed", m.master_seed}, {"output_dir", m.output_dir},
              {"version", m.version},       {"timestamp", m.timestamp},
              {"args", m.args}};
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << j.dump(2) << '\n';
  if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace demolab
