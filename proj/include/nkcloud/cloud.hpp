#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "nkcloud/genotype.hpp"
#include "nkcloud/landscape.hpp"

namespace nkcloud {

inline constexpr double kDefaultBinWidth = 0.002;

/// Which neighbor fitness becomes the bordering fitness f~ of a genotype.
enum class BorderingRule {
  whole_neighborhood,  // N points per genotype, one per Hamming-1 neighbor
  ghc_best,            // 1 point per genotype: best neighbor fitness
};

std::string_view to_string(BorderingRule rule);
BorderingRule parse_bordering_rule(std::string_view text);

/// The N Hamming-1 neighbors of g, locus 0 flipped first.
std::vector<Genotype> neighbors(const Genotype& g);

/// floor(f / w), with f = 1.0 clamped into the top bin. Throws for f outside
/// [0, 1] or w <= 0.
std::int64_t bin_index(double f, double width);

/// Index of the highest bin of width w on [0, 1].
std::int64_t top_bin_index(double width);

/// Running statistics of the bordering fitnesses whose abscissa falls in
/// [index*w, (index+1)*w). Welford update; Chan et al. pairwise merge.
struct NeutralityBin {
  std::int64_t index = 0;
  double phi = 0.0;
  std::uint64_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double value);
  void merge(const NeutralityBin& other);

  /// Population variance.
  double variance() const { return count > 0 ? m2 / static_cast<double>(count) : 0.0; }
  double stddev() const;
};

class FitnessCloud {
 public:
  explicit FitnessCloud(BorderingRule rule, double bin_width = kDefaultBinWidth);

  /// Records the point (f, f~); both must lie in [0, 1].
  void add(double f, double f_border);

  /// Folds another cloud of the same rule and bin width into this one.
  void merge(const FitnessCloud& other);

  BorderingRule rule() const { return rule_; }
  double bin_width() const { return width_; }
  std::uint64_t total_points() const { return total_; }
  bool empty() const { return total_ == 0; }
  const std::map<std::int64_t, NeutralityBin>& bins() const { return bins_; }

 private:
  BorderingRule rule_;
  double width_;
  std::uint64_t total_ = 0;
  std::map<std::int64_t, NeutralityBin> bins_;
};

struct ShapeRow {
  double phi;
  double min;
  double mean;
  double max;
  double std;
  std::uint64_t count;

  friend bool operator==(const ShapeRow&, const ShapeRow&) = default;
};

/// FC_min / FC_mean / FC_max (with per-bin std) sampled at bin centers,
/// ascending in phi.
struct CloudShape {
  std::vector<ShapeRow> rows;

  friend bool operator==(const CloudShape&, const CloudShape&) = default;
};

/// (f(g), best neighbor fitness): the ghc_best point of g.
std::pair<double, double> ghc_point(const NkLandscape& land, const Genotype& g);

/// Accumulates the cloud of `genotypes` on `workers` threads (0 = all cores).
/// The result does not depend on the worker count.
FitnessCloud build_cloud(const NkLandscape& land, const GenotypeStream& genotypes, BorderingRule rule,
                         double bin_width = kDefaultBinWidth, unsigned workers = 0);

/// Sequential build over an explicit genotype list.
FitnessCloud build_cloud(const NkLandscape& land, std::span<const Genotype> genotypes, BorderingRule rule,
                         double bin_width = kDefaultBinWidth);

/// Raw (f, f~) points in stream order. Only sensible for small N.
std::vector<std::pair<double, double>> cloud_points(const NkLandscape& land, const GenotypeStream& genotypes,
                                                    BorderingRule rule);

CloudShape shape(const FitnessCloud& cloud);

}  // namespace nkcloud
