#include "nkcloud/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nkcloud/cloud.hpp"
#include "nkcloud/parallel.hpp"

namespace nkcloud {

void GhcConfig::validate() const {
  if (generations < 1) throw std::invalid_argument("generations must be >= 1, got " + std::to_string(generations));
  if (runs < 1) throw std::invalid_argument("runs must be >= 1, got " + std::to_string(runs));
}

namespace {

// Best neighbor by value, lowest locus on ties.
struct BestMove {
  double f;
  double best;
  int locus;
};

BestMove scan(const NkLandscape& land, const Genotype& g) {
  double around[kMaxLoci];
  const double f = land.neighborhood(g, std::span(around, static_cast<std::size_t>(land.n())));
  int locus = 0;
  for (int j = 1; j < land.n(); ++j) {
    if (around[j] > around[locus]) locus = j;
  }
  return {f, around[locus], locus};
}

}  // namespace

Genotype ghc_step(const NkLandscape& land, const Genotype& g) {
  const BestMove m = scan(land, g);
  return m.best > m.f ? g.flipped(m.locus) : g;
}

Trajectory run_ghc(const NkLandscape& land, const Genotype& start, int generations) {
  if (generations < 1) throw std::invalid_argument("generations must be >= 1");
  Trajectory t;
  t.points.reserve(static_cast<std::size_t>(generations) + 1);
  Genotype state = start;
  BestMove m = scan(land, state);
  t.points.push_back({0, m.f, m.best, state});
  for (int gen = 1; gen <= generations; ++gen) {
    if (m.best > m.f) {
      state = state.flipped(m.locus);
      m = scan(land, state);
    }
    t.points.push_back({gen, m.f, m.best, state});
  }
  return t;
}

Genotype run_start(const NkLandscape& land, std::uint64_t run_seed, int index) {
  return random_genotype(land.n(), run_seed, static_cast<std::uint64_t>(index), Stream::run_start);
}

std::vector<Trajectory> run_ghc_batch(const NkLandscape& land, const GhcConfig& cfg, unsigned workers) {
  cfg.validate();
  std::vector<Trajectory> runs(static_cast<std::size_t>(cfg.runs));
  // One chunk per run keeps every run on its own task.
  const unsigned threads = std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(cfg.runs));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto drain = [&] {
    for (int r; (r = next.fetch_add(1)) < cfg.runs;) {
      try {
        runs[static_cast<std::size_t>(r)] = run_ghc(land, run_start(land, cfg.run_seed, r), cfg.generations);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(drain);
  }
  if (failure) std::rethrow_exception(failure);
  return runs;
}

AverageTrajectory average(std::span<const Trajectory> runs) {
  if (runs.empty()) throw std::invalid_argument("cannot average zero trajectories");
  const std::size_t len = runs.front().points.size();
  for (const Trajectory& t : runs) {
    if (t.points.size() != len) throw std::invalid_argument("trajectories differ in length");
  }
  const auto count = static_cast<double>(runs.size());
  AverageTrajectory avg;
  avg.points.reserve(len);
  for (std::size_t gen = 0; gen < len; ++gen) {
    double sum_f = 0.0, sum_border = 0.0;
    for (const Trajectory& t : runs) {
      sum_f += t.points[gen].f;
      sum_border += t.points[gen].f_border;
    }
    const double mean_f = sum_f / count;
    double ss = 0.0;
    for (const Trajectory& t : runs) {
      const double d = t.points[gen].f - mean_f;
      ss += d * d;
    }
    avg.points.push_back({runs.front().points[gen].generation, mean_f, sum_border / count, std::sqrt(ss / count)});
  }
  return avg;
}

AverageTrajectory average_trajectory(const NkLandscape& land, const GhcConfig& cfg, unsigned workers) {
  const auto runs = run_ghc_batch(land, cfg, workers);
  return average(runs);
}

BarrierReport barrier_report(const AverageTrajectory& avg, const EvolvabilityThresholds& t, const Line& mean_line,
                             const BarrierOptions& options) {
  if (!t.beta) throw std::invalid_argument("barrier_report: threshold beta is missing");
  if (avg.points.empty()) throw std::invalid_argument("barrier_report: empty trajectory");

  const AveragePoint& last = avg.points.back();
  BarrierReport r{};
  r.beta = *t.beta;
  r.terminal_f = last.mean_f;
  r.terminal_f_border = last.mean_f_border;
  r.distance = std::abs(last.mean_f - r.beta);
  r.tolerance = options.tolerance;
  r.pass = r.distance <= options.tolerance;
  r.band = options.band;

  std::size_t near = 0;
  for (std::size_t i = 1; i < avg.points.size(); ++i) {
    const AveragePoint& p = avg.points[i];
    if (std::abs(p.mean_f_border - mean_line(p.mean_f)) <= options.band) ++near;
  }
  const std::size_t tail = avg.points.size() - 1;
  r.fraction_near_mean_line = tail > 0 ? static_cast<double>(near) / static_cast<double>(tail) : 0.0;
  return r;
}

}  // namespace nkcloud
