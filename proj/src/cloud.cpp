#include "nkcloud/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nkcloud/parallel.hpp"

namespace nkcloud {

std::string_view to_string(BorderingRule rule) {
  return rule == BorderingRule::whole_neighborhood ? "whole" : "ghc";
}

BorderingRule parse_bordering_rule(std::string_view text) {
  if (text == "whole") return BorderingRule::whole_neighborhood;
  if (text == "ghc") return BorderingRule::ghc_best;
  throw std::invalid_argument("unknown bordering rule '" + std::string(text) + "' (expected whole|ghc)");
}

std::vector<Genotype> neighbors(const Genotype& g) {
  std::vector<Genotype> out;
  out.reserve(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) out.push_back(g.flipped(i));
  return out;
}

std::int64_t top_bin_index(double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bin width must be > 0");
  const double per_unit = 1.0 / width;
  const double nearest = std::round(per_unit);
  // 1/0.002 is not exactly 500 in binary; snap near-integers.
  const double bins = std::abs(per_unit - nearest) <= 1e-9 * per_unit ? nearest : std::ceil(per_unit);
  return std::max<std::int64_t>(0, static_cast<std::int64_t>(bins) - 1);
}

std::int64_t bin_index(double f, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bin width must be > 0");
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fitness " + std::to_string(f) + " outside [0, 1]");
  return std::min(static_cast<std::int64_t>(std::floor(f / width)), top_bin_index(width));
}

void NeutralityBin::add(double value) {
  if (count == 0) {
    min = max = value;
  } else {
    min = std::min(min, value);
    max = std::max(max, value);
  }
  ++count;
  const double delta = value - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (value - mean);
}

void NeutralityBin::merge(const NeutralityBin& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double n_a = static_cast<double>(count);
  const double n_b = static_cast<double>(other.count);
  const double n = n_a + n_b;
  const double delta = other.mean - mean;
  mean += delta * (n_b / n);
  m2 += other.m2 + delta * delta * (n_a * n_b / n);
  min = std::min(min, other.min);
  max = std::max(max, other.max);
  count += other.count;
}

double NeutralityBin::stddev() const { return std::sqrt(std::max(0.0, variance())); }

FitnessCloud::FitnessCloud(BorderingRule rule, double bin_width) : rule_(rule), width_(bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be > 0");
}

void FitnessCloud::add(double f, double f_border) {
  if (!(f_border >= 0.0 && f_border <= 1.0)) {
    throw std::invalid_argument("bordering fitness " + std::to_string(f_border) + " outside [0, 1]");
  }
  const std::int64_t idx = bin_index(f, width_);
  auto [it, inserted] = bins_.try_emplace(idx);
  if (inserted) {
    it->second.index = idx;
    it->second.phi = (static_cast<double>(idx) + 0.5) * width_;
  }
  it->second.add(f_border);
  ++total_;
}

void FitnessCloud::merge(const FitnessCloud& other) {
  if (other.rule_ != rule_ || other.width_ != width_) {
    throw std::invalid_argument("cannot merge clouds with different rule or bin width");
  }
  for (const auto& [idx, bin] : other.bins_) {
    auto [it, inserted] = bins_.try_emplace(idx, bin);
    if (!inserted) it->second.merge(bin);
  }
  total_ += other.total_;
}

std::pair<double, double> ghc_point(const NkLandscape& land, const Genotype& g) {
  double around[kMaxLoci];
  const double f = land.neighborhood(g, std::span(around, static_cast<std::size_t>(land.n())));
  return {f, *std::max_element(around, around + land.n())};
}

namespace {

template <class Range>
void accumulate(const NkLandscape& land, const Range& genotypes, FitnessCloud& cloud) {
  const auto n = static_cast<std::size_t>(land.n());
  double around[kMaxLoci];
  for (const Genotype g : genotypes) {
    const double f = land.neighborhood(g, std::span(around, n));
    if (cloud.rule() == BorderingRule::whole_neighborhood) {
      for (std::size_t j = 0; j < n; ++j) cloud.add(f, around[j]);
    } else {
      cloud.add(f, *std::max_element(around, around + n));
    }
  }
}

}  // namespace

FitnessCloud build_cloud(const NkLandscape& land, const GenotypeStream& genotypes, BorderingRule rule,
                         double bin_width, unsigned workers) {
  if (genotypes.empty()) throw std::invalid_argument("cannot build a cloud from an empty genotype stream");
  if (genotypes.loci() != land.n()) throw std::invalid_argument("genotype stream length does not match landscape");
  auto partials = map_chunks(genotypes.size(), workers, [&](std::uint64_t first, std::uint64_t last) {
    FitnessCloud part(rule, bin_width);
    accumulate(land, genotypes.slice(first, last), part);
    return part;
  });
  FitnessCloud cloud(rule, bin_width);
  for (const FitnessCloud& part : partials) cloud.merge(part);
  return cloud;
}

FitnessCloud build_cloud(const NkLandscape& land, std::span<const Genotype> genotypes, BorderingRule rule,
                         double bin_width) {
  if (genotypes.empty()) throw std::invalid_argument("cannot build a cloud from an empty genotype list");
  FitnessCloud cloud(rule, bin_width);
  accumulate(land, genotypes, cloud);
  return cloud;
}

std::vector<std::pair<double, double>> cloud_points(const NkLandscape& land, const GenotypeStream& genotypes,
                                                    BorderingRule rule) {
  std::vector<std::pair<double, double>> points;
  const auto n = static_cast<std::size_t>(land.n());
  double around[kMaxLoci];
  for (const Genotype g : genotypes) {
    const double f = land.neighborhood(g, std::span(around, n));
    if (rule == BorderingRule::whole_neighborhood) {
      for (std::size_t j = 0; j < n; ++j) points.emplace_back(f, around[j]);
    } else {
      points.emplace_back(f, *std::max_element(around, around + n));
    }
  }
  return points;
}

CloudShape shape(const FitnessCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("cannot take the shape of an empty cloud");
  CloudShape out;
  out.rows.reserve(cloud.bins().size());
  for (const auto& [idx, bin] : cloud.bins()) {
    out.rows.push_back({bin.phi, bin.min, bin.mean, bin.max, bin.stddev(), bin.count});
  }
  return out;
}

}  // namespace nkcloud
