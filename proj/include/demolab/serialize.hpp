#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "demolab/concentration.hpp"
#include "demolab/harness.hpp"
#include "demolab/recovery.hpp"
#include "demolab/riplab.hpp"

namespace demolab {

/// Violation lists are serialized capped at this many entries, alongside the
/// total count.
inline constexpr std::size_t kViolationCap = 100;

using nlohmann::json;

json to_json(const IndexSet& s);
json to_json(const RipReport& r);
json to_json(const DemocracyReport& r);
json to_json(const PripReport& r);
json to_json(const IpReport& r);
json to_json(const TheoremConstants& c);
json to_json(const TailReport& r);
json to_json(const MgfReport& r);
json to_json(const RecoveryResult& r);
json to_json(const LinearFit& f);
json to_json(const ExperimentResult& r);
json to_json(const StabilityResult& r);

/// Provenance record written alongside every CLI output set. Re-running the
/// recorded argv reproduces the outputs bit-for-bit (modulo timestamp).
struct RunManifest {
  std::string subcommand;
  std::string config_path;
  std::uint64_t master_seed = 0;
  std::string output_dir;
  std::string version;
  std::string timestamp;
  std::vector<std::string> args;
};

json to_json(const RunManifest& m);

void write_json(const std::filesystem::path& path, const json& j);

}  // namespace demolab
