#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nkcloud/evolvability.hpp"
#include "nkcloud/genotype.hpp"
#include "nkcloud/landscape.hpp"

namespace nkcloud {

struct GhcConfig {
  int generations = 100;
  int runs = 70;
  std::uint64_t run_seed = 1;

  void validate() const;
};

/// One best-improvement move: the fittest neighbor if it is strictly fitter
/// than g (lowest flipped locus wins ties), otherwise g itself.
Genotype ghc_step(const NkLandscape& land, const Genotype& g);

struct TrajectoryPoint {
  int generation;
  double f;
  double f_border;
  Genotype state;
};

/// generations + 1 entries; entry 0 is the start.
struct Trajectory {
  std::vector<TrajectoryPoint> points;
};

Trajectory run_ghc(const NkLandscape& land, const Genotype& start, int generations);

/// Start genotype of run `index`: uniform, keyed by (run_seed, index).
Genotype run_start(const NkLandscape& land, std::uint64_t run_seed, int index);

/// All `cfg.runs` trajectories in run order, computed on `workers` threads.
std::vector<Trajectory> run_ghc_batch(const NkLandscape& land, const GhcConfig& cfg, unsigned workers = 0);

struct AveragePoint {
  int generation;
  double mean_f;
  double mean_f_border;
  double std_f;  // population std of f across runs
};

struct AverageTrajectory {
  std::vector<AveragePoint> points;
};

/// Pointwise average over runs, reduced in run order.
AverageTrajectory average(std::span<const Trajectory> runs);

AverageTrajectory average_trajectory(const NkLandscape& land, const GhcConfig& cfg, unsigned workers = 0);

struct BarrierOptions {
  double tolerance = 0.03;
  double band = 0.03;
};

struct BarrierReport {
  double beta;
  double terminal_f;
  double terminal_f_border;
  double distance;  // |terminal_f - beta|
  double tolerance;
  bool pass;
  double band;
  /// Share of generations >= 1 whose (mean_f, mean_f_border) lies within
  /// `band` (vertically) of the GHC FC_mean line.
  double fraction_near_mean_line;
};

/// Throws when beta is missing or the trajectory is empty.
BarrierReport barrier_report(const AverageTrajectory& avg, const EvolvabilityThresholds& t, const Line& mean_line,
                             const BarrierOptions& options = {});

}  // namespace nkcloud
