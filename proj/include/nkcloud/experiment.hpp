#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkcloud/cloud.hpp"
#include "nkcloud/evolvability.hpp"
#include "nkcloud/heuristic.hpp"
#include "nkcloud/landscape.hpp"
#include "nkcloud/optima.hpp"

namespace nkcloud {

/// Invalid configuration value; `key()` names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Flat `key=value` settings, keys spelled like the CLI flags without dashes
/// (`sample-seed`, `bin-width`, ...). Later sources override earlier ones.
using Settings = std::map<std::string, std::string>;

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
Settings parse_settings(std::istream& in);
Settings load_settings_file(const std::filesystem::path& path);

enum class SamplingMode { exhaustive, sampled };

/// Largest N enumerated exhaustively without `allow-large`.
inline constexpr int kExhaustiveLimit = 25;

struct ExperimentConfig {
  int n = 25;
  int k = 20;
  std::uint64_t seed = 1;
  LinkModel links = LinkModel::random;
  SamplingMode mode = SamplingMode::exhaustive;
  std::uint64_t samples = 1'000'000;
  std::uint64_t sample_seed = 1;
  double bin_width = kDefaultBinWidth;
  BorderingRule rule = BorderingRule::whole_neighborhood;
  std::optional<GhcConfig> ghc;
  BarrierOptions barrier;
  std::filesystem::path output_dir = "out";
  unsigned workers = 0;
  bool allow_large = false;
  bool dump_points = false;
  bool dump_runs = false;

  /// Builds and validates a config; unknown keys are rejected. `ghc` is set
  /// when any of generations/runs/run-seed is present.
  static ExperimentConfig from_settings(const Settings& settings);

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  NkLandscape landscape() const { return NkLandscape(n, k, seed, links); }
  GenotypeStream genotypes(const NkLandscape& land) const;
};

struct CloudRun {
  CloudShape shape;
  EvolvabilityThresholds thresholds;
  RegressionFit fit;
  Line predicted;
  std::vector<std::filesystem::path> files;
};

struct GhcRun {
  CloudShape shape;
  EvolvabilityThresholds thresholds;
  RegressionFit fit;
  std::vector<Trajectory> runs;
  AverageTrajectory average;
  BarrierReport barrier;
  std::vector<std::filesystem::path> files;
};

struct OptimaRun {
  OptimaCensus census;
  DiagonalReport diagonal;
  std::vector<std::filesystem::path> files;
};

// Each command writes its artifacts into cfg.output_dir together with a
// landscape descriptor. On failure every file it created is removed before
// the exception propagates. Progress goes to `log` when non-null.

CloudRun cmd_cloud(const ExperimentConfig& cfg, std::ostream* log = nullptr);
GhcRun cmd_ghc(const ExperimentConfig& cfg, std::ostream* log = nullptr);
OptimaRun cmd_optima(const ExperimentConfig& cfg, std::ostream* log = nullptr);

}  // namespace nkcloud
