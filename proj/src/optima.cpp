#include "nkcloud/optima.hpp"

#include <algorithm>
#include <map>

#include "nkcloud/parallel.hpp"

namespace nkcloud {

namespace {

constexpr std::size_t kMaxCounterexamples = 16;

struct CensusPart {
  std::uint64_t strict = 0;
  std::uint64_t ties = 0;
  std::map<std::int64_t, std::uint64_t> bins;
};

}  // namespace

OptimaCensus local_optima_census(const NkLandscape& land, const GenotypeStream& genotypes, double bin_width,
                                 unsigned workers) {
  top_bin_index(bin_width);  // validates the width
  auto parts = map_chunks(genotypes.size(), workers, [&](std::uint64_t first, std::uint64_t last) {
    CensusPart part;
    const auto n = static_cast<std::size_t>(land.n());
    double around[kMaxLoci];
    for (const Genotype g : genotypes.slice(first, last)) {
      const double f = land.neighborhood(g, std::span(around, n));
      bool tie = false;
      bool strict = true;
      for (std::size_t j = 0; j < n && strict; ++j) {
        if (around[j] > f) strict = false;
        if (around[j] == f) tie = true;
      }
      if (!strict) continue;
      if (tie) {
        ++part.ties;
      } else {
        ++part.strict;
        ++part.bins[bin_index(f, bin_width)];
      }
    }
    return part;
  });

  OptimaCensus census;
  std::map<std::int64_t, std::uint64_t> bins;
  for (const CensusPart& p : parts) {
    census.strict_optima += p.strict;
    census.plateau_ties += p.ties;
    for (const auto& [idx, c] : p.bins) bins[idx] += c;
  }
  for (const auto& [idx, c] : bins) census.histogram.push_back({(static_cast<double>(idx) + 0.5) * bin_width, c});
  return census;
}

DiagonalReport optima_below_diagonal(const NkLandscape& land, const GenotypeStream& genotypes, unsigned workers) {
  auto parts = map_chunks(genotypes.size(), workers, [&](std::uint64_t first, std::uint64_t last) {
    DiagonalReport part;
    for (const Genotype g : genotypes.slice(first, last)) {
      const auto [f, f_border] = ghc_point(land, g);
      bool improving = false;
      bool tied = false;
      for (const Genotype& y : neighbors(g)) {
        const double fy = land.fitness(y);
        improving = improving || fy > f;
        tied = tied || fy == f;
      }
      const bool strict_optimum = !improving && !tied;

      ++part.checked;
      if (f_border < f) {
        ++part.below;
      } else if (f_border > f) {
        ++part.above;
      } else {
        ++part.on_diagonal;
      }
      const bool ok = strict_optimum ? f_border < f : (improving ? f_border > f : f_border == f);
      if (!ok) {
        part.verdict = false;
        if (part.counterexamples.size() < kMaxCounterexamples) {
          part.counterexamples.push_back({g, f, f_border, strict_optimum});
        }
      }
    }
    return part;
  });

  DiagonalReport report;
  for (const DiagonalReport& p : parts) {
    report.verdict = report.verdict && p.verdict;
    report.checked += p.checked;
    report.below += p.below;
    report.above += p.above;
    report.on_diagonal += p.on_diagonal;
    for (const auto& c : p.counterexamples) {
      if (report.counterexamples.size() < kMaxCounterexamples) report.counterexamples.push_back(c);
    }
  }
  return report;
}

}  // namespace nkcloud
