#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nkcloud/cloud.hpp"
#include "nkcloud/genotype.hpp"
#include "nkcloud/landscape.hpp"

namespace nkcloud {

struct HistogramRow {
  double phi;
  std::uint64_t count;

  friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

struct OptimaCensus {
  /// Genotypes strictly fitter than every neighbor.
  std::uint64_t strict_optima = 0;
  /// Genotypes with no fitter neighbor but at least one of equal fitness.
  std::uint64_t plateau_ties = 0;
  /// Fitness histogram of the strict optima, ascending phi, non-empty bins.
  std::vector<HistogramRow> histogram;
};

OptimaCensus local_optima_census(const NkLandscape& land, const GenotypeStream& genotypes,
                                 double bin_width = kDefaultBinWidth, unsigned workers = 0);

struct DiagonalCounterexample {
  Genotype genotype;
  double f;
  double f_border;
  bool strict_optimum;
};

/// Checks in the ghc_best cloud that strict local optima sit strictly below
/// the diagonal and genotypes with an improving neighbor strictly above.
/// Optimality is decided by a direct neighbor comparison, independently of
/// the bordering-fitness computation.
struct DiagonalReport {
  bool verdict = true;
  std::uint64_t checked = 0;
  std::uint64_t below = 0;
  std::uint64_t above = 0;
  std::uint64_t on_diagonal = 0;
  std::vector<DiagonalCounterexample> counterexamples;  // first few only
};

DiagonalReport optima_below_diagonal(const NkLandscape& land, const GenotypeStream& genotypes,
                                     unsigned workers = 0);

}  // namespace nkcloud
