#include "nkcloud/experiment.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>

#include "nkcloud/csv_io.hpp"
#include "nkcloud/svg_plot.hpp"

namespace nkcloud {

namespace fs = std::filesystem;

Settings parse_settings(std::istream& in) {
  Settings out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", "line " + std::to_string(lineno) + " is not key=value: " + line);
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

Settings load_settings_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  return parse_settings(in);
}

namespace {

std::int64_t parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key, "expected an integer, got '" + text + "'");
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text[0] != '-') {
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key, "expected a number, got '" + text + "'");
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "expected true|false, got '" + text + "'");
}

int parse_int(const std::string& key, const std::string& text) {
  const std::int64_t v = parse_integer(key, text);
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(key, "value out of range: " + text);
  return static_cast<int>(v);
}

// Files created by a command; removed on destruction unless committed.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw ConfigError("out", "cannot create output directory " + dir_.string());
  }
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  ~OutputSet() {
    if (committed_) return;
    for (const auto& p : files_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("out", "cannot write " + path.string());
    files_.push_back(path);
    body(out);
    out.flush();
    if (!out) throw ConfigError("out", "write failed for " + path.string());
  }

  std::vector<fs::path> commit() {
    committed_ = true;
    return files_;
  }

 private:
  fs::path dir_;
  std::vector<fs::path> files_;
  bool committed_ = false;
};

void write_fit(std::ostream& out, const ExperimentConfig& cfg, const FitnessCloud& cloud, const RegressionFit& fit,
               const Line& predicted) {
  out << "n=" << cfg.n << "\nk=" << cfg.k << "\nrule=" << to_string(cloud.rule())
      << "\nmode=" << (cfg.mode == SamplingMode::exhaustive ? "exhaustive" : "sample")
      << "\npoints=" << cloud.total_points() << "\nbins=" << cloud.bins().size()
      << "\nobserved_slope=" << format_real(fit.slope) << "\nobserved_intercept=" << format_real(fit.intercept)
      << "\nr_squared=" << format_real(fit.r_squared) << "\npredicted_slope=" << format_real(predicted.slope)
      << "\nslope_error=" << format_real(fit.slope - predicted.slope) << '\n';
  // The intercept law is only known for the whole-neighborhood cloud.
  if (cloud.rule() == BorderingRule::whole_neighborhood) {
    out << "predicted_intercept=" << format_real(predicted.intercept)
        << "\nintercept_error=" << format_real(fit.intercept - predicted.intercept) << '\n';
  }
}

void write_thresholds_warnings(std::ostream* log, const EvolvabilityThresholds& t) {
  if (log == nullptr) return;
  for (const auto& w : t.warnings) *log << "warning: " << w << '\n';
}

std::string title(const ExperimentConfig& cfg, const char* what) {
  return std::string(what) + " (N=" + std::to_string(cfg.n) + ", K=" + std::to_string(cfg.k) + ")";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_settings(const Settings& settings) {
  static const std::set<std::string> known = {
      "n",          "k",           "seed",      "links",       "mode",         "samples",
      "sample-seed", "bin-width",  "rule",      "generations", "runs",         "run-seed",
      "out",        "barrier-tol", "barrier-band", "threads",  "allow-large",  "dump-points",
      "dump-runs"};
  for (const auto& [key, value] : settings) {
    if (!known.contains(key)) throw ConfigError(key, "unknown setting");
  }

  ExperimentConfig cfg;
  auto get = [&](const char* key) -> const std::string* {
    const auto it = settings.find(key);
    return it == settings.end() ? nullptr : &it->second;
  };
  if (auto v = get("n")) cfg.n = parse_int("n", *v);
  if (auto v = get("k")) cfg.k = parse_int("k", *v);
  if (auto v = get("seed")) cfg.seed = parse_unsigned("seed", *v);
  if (auto v = get("links")) {
    try {
      cfg.links = parse_link_model(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("links", e.what());
    }
  }
  if (auto v = get("mode")) {
    if (*v == "exhaustive") {
      cfg.mode = SamplingMode::exhaustive;
    } else if (*v == "sample") {
      cfg.mode = SamplingMode::sampled;
    } else {
      throw ConfigError("mode", "expected exhaustive|sample, got '" + *v + "'");
    }
  }
  if (auto v = get("samples")) cfg.samples = parse_unsigned("samples", *v);
  if (auto v = get("sample-seed")) cfg.sample_seed = parse_unsigned("sample-seed", *v);
  if (auto v = get("bin-width")) cfg.bin_width = parse_double("bin-width", *v);
  if (auto v = get("rule")) {
    try {
      cfg.rule = parse_bordering_rule(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("rule", e.what());
    }
  }
  if (get("generations") || get("runs") || get("run-seed")) {
    GhcConfig g;
    if (auto v = get("generations")) g.generations = parse_int("generations", *v);
    if (auto v = get("runs")) g.runs = parse_int("runs", *v);
    if (auto v = get("run-seed")) g.run_seed = parse_unsigned("run-seed", *v);
    cfg.ghc = g;
  }
  if (auto v = get("out")) cfg.output_dir = *v;
  if (auto v = get("barrier-tol")) cfg.barrier.tolerance = parse_double("barrier-tol", *v);
  if (auto v = get("barrier-band")) cfg.barrier.band = parse_double("barrier-band", *v);
  if (auto v = get("threads")) {
    const auto t = parse_unsigned("threads", *v);
    if (t > 4096) throw ConfigError("threads", "at most 4096 workers");
    cfg.workers = static_cast<unsigned>(t);
  }
  if (auto v = get("allow-large")) cfg.allow_large = parse_bool("allow-large", *v);
  if (auto v = get("dump-points")) cfg.dump_points = parse_bool("dump-points", *v);
  if (auto v = get("dump-runs")) cfg.dump_runs = parse_bool("dump-runs", *v);
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  if (n < 1 || n > kMaxLoci) throw ConfigError("n", "must satisfy 1 <= n <= 32, got " + std::to_string(n));
  if (k < 0 || k > n - 1) {
    throw ConfigError("k", "must satisfy 0 <= k <= n-1 = " + std::to_string(n - 1) + ", got " + std::to_string(k));
  }
  if (mode == SamplingMode::exhaustive && n > kExhaustiveLimit && !allow_large) {
    throw ConfigError("mode", "exhaustive enumeration of n=" + std::to_string(n) +
                                  " exceeds 25 loci; use sample mode or set allow-large");
  }
  if (mode == SamplingMode::sampled && samples < 1) throw ConfigError("samples", "must be >= 1");
  if (!(bin_width > 0.0) || bin_width > 1.0) throw ConfigError("bin-width", "must lie in (0, 1]");
  if (ghc) {
    if (ghc->generations < 1) throw ConfigError("generations", "must be >= 1");
    if (ghc->runs < 1) throw ConfigError("runs", "must be >= 1");
  }
  if (!(barrier.tolerance >= 0.0)) throw ConfigError("barrier-tol", "must be >= 0");
  if (!(barrier.band >= 0.0)) throw ConfigError("barrier-band", "must be >= 0");
  if (dump_points && n > 16) throw ConfigError("dump-points", "raw point dumps are limited to n <= 16");
}

GenotypeStream ExperimentConfig::genotypes(const NkLandscape& land) const {
  return mode == SamplingMode::exhaustive ? enumerate(land) : sample(land, samples, sample_seed);
}

CloudRun cmd_cloud(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  OutputSet outputs(cfg.output_dir);
  const NkLandscape land = cfg.landscape();
  const GenotypeStream genotypes = cfg.genotypes(land);
  if (log && cfg.mode == SamplingMode::exhaustive && cfg.n > kExhaustiveLimit) {
    *log << "warning: exhaustive enumeration of 2^" << cfg.n << " genotypes\n";
  }
  if (log) *log << "cloud: " << genotypes.size() << " genotypes, rule " << to_string(cfg.rule) << '\n';

  const FitnessCloud cloud = build_cloud(land, genotypes, cfg.rule, cfg.bin_width, cfg.workers);
  if (log) *log << "cloud: " << cloud.total_points() << " points in " << cloud.bins().size() << " bins\n";

  CloudRun run{shape(cloud), {}, {}, weinberger_line(cfg.n, cfg.k), {}};
  run.thresholds = thresholds(run.shape);
  run.fit = fit_mean_line(run.shape);
  write_thresholds_warnings(log, run.thresholds);

  outputs.write("landscape.txt", [&](std::ostream& o) { write_descriptor(o, land); });
  outputs.write("shape.csv", [&](std::ostream& o) { write_shape_csv(o, run.shape); });
  outputs.write("thresholds.csv", [&](std::ostream& o) { write_thresholds_csv(o, run.thresholds); });
  outputs.write("fit.txt", [&](std::ostream& o) { write_fit(o, cfg, cloud, run.fit, run.predicted); });
  outputs.write("cloud.svg", [&](std::ostream& o) {
    PlotSpec plot{title(cfg, cfg.rule == BorderingRule::whole_neighborhood ? "Whole fitness cloud" : "GHC fitness cloud"),
                  &run.shape, &run.thresholds, nullptr, std::nullopt};
    if (cfg.rule == BorderingRule::whole_neighborhood) plot.reference_line = run.predicted;
    write_svg_plot(o, plot);
  });
  if (cfg.dump_points) {
    outputs.write("points.csv",
                  [&](std::ostream& o) { write_points_csv(o, cloud_points(land, genotypes, cfg.rule)); });
  }
  run.files = outputs.commit();
  return run;
}

GhcRun cmd_ghc(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  if (!cfg.ghc) {
    throw ConfigError("ghc", "the ghc command needs a hill-climbing setup; supply generations, runs and run-seed");
  }
  OutputSet outputs(cfg.output_dir);
  const NkLandscape land = cfg.landscape();
  const GenotypeStream genotypes = cfg.genotypes(land);
  if (log) *log << "ghc: cloud over " << genotypes.size() << " genotypes\n";

  const FitnessCloud cloud = build_cloud(land, genotypes, BorderingRule::ghc_best, cfg.bin_width, cfg.workers);
  GhcRun run;
  run.shape = shape(cloud);
  run.thresholds = thresholds(run.shape);
  run.fit = fit_mean_line(run.shape);
  write_thresholds_warnings(log, run.thresholds);

  if (log) *log << "ghc: " << cfg.ghc->runs << " runs x " << cfg.ghc->generations << " generations\n";
  run.runs = run_ghc_batch(land, *cfg.ghc, cfg.workers);
  run.average = average(run.runs);
  run.barrier = barrier_report(run.average, run.thresholds, {run.fit.slope, run.fit.intercept}, cfg.barrier);

  const Line predicted = weinberger_line(cfg.n, cfg.k);
  outputs.write("landscape.txt", [&](std::ostream& o) { write_descriptor(o, land); });
  outputs.write("shape.csv", [&](std::ostream& o) { write_shape_csv(o, run.shape); });
  outputs.write("thresholds.csv", [&](std::ostream& o) { write_thresholds_csv(o, run.thresholds); });
  outputs.write("fit.txt", [&](std::ostream& o) { write_fit(o, cfg, cloud, run.fit, predicted); });
  outputs.write("trajectory.csv", [&](std::ostream& o) { write_trajectory_csv(o, run.average); });
  if (cfg.dump_runs) outputs.write("runs.csv", [&](std::ostream& o) { write_runs_csv(o, run.runs); });
  outputs.write("barrier.txt", [&](std::ostream& o) {
    const BarrierReport& b = run.barrier;
    o << "beta=" << format_real(b.beta) << "\nterminal_mean_f=" << format_real(b.terminal_f)
      << "\nterminal_mean_f_border=" << format_real(b.terminal_f_border) << "\ndistance=" << format_real(b.distance)
      << "\ntolerance=" << format_real(b.tolerance) << "\npass=" << (b.pass ? "true" : "false")
      << "\nband=" << format_real(b.band) << "\nfraction_near_mean_line=" << format_real(b.fraction_near_mean_line)
      << "\nmean_line_slope=" << format_real(run.fit.slope) << "\nmean_line_intercept=" << format_real(run.fit.intercept)
      << "\ngeneration0_mean_f=" << format_real(run.average.points.front().mean_f) << '\n';
  });
  outputs.write("ghc.svg", [&](std::ostream& o) {
    write_svg_plot(o, {title(cfg, "GHC fitness cloud and average trajectory"), &run.shape, &run.thresholds,
                       &run.average, std::nullopt});
  });
  run.files = outputs.commit();
  if (log) {
    *log << "ghc: terminal mean f " << run.barrier.terminal_f << ", beta " << run.barrier.beta << ", "
         << (run.barrier.pass ? "within" : "outside") << " tolerance\n";
  }
  return run;
}

OptimaRun cmd_optima(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  if (cfg.mode != SamplingMode::exhaustive) {
    throw ConfigError("mode", "the local-optima census needs exhaustive enumeration");
  }
  OutputSet outputs(cfg.output_dir);
  const NkLandscape land = cfg.landscape();
  const GenotypeStream genotypes = enumerate(land);
  if (log) *log << "optima: scanning " << genotypes.size() << " genotypes\n";

  OptimaRun run;
  run.census = local_optima_census(land, genotypes, cfg.bin_width, cfg.workers);
  run.diagonal = optima_below_diagonal(land, genotypes, cfg.workers);

  outputs.write("landscape.txt", [&](std::ostream& o) { write_descriptor(o, land); });
  outputs.write("optima.txt", [&](std::ostream& o) {
    const DiagonalReport& d = run.diagonal;
    o << "strict_optima=" << run.census.strict_optima << "\nplateau_ties=" << run.census.plateau_ties
      << "\nverdict=" << (d.verdict ? "true" : "false") << "\nchecked=" << d.checked << "\nbelow_diagonal=" << d.below
      << "\nabove_diagonal=" << d.above << "\non_diagonal=" << d.on_diagonal
      << "\ncounterexamples=" << d.counterexamples.size() << '\n';
    for (const auto& c : d.counterexamples) {
      o << "counterexample=" << c.genotype.to_string() << ' ' << format_real(c.f) << ' ' << format_real(c.f_border)
        << (c.strict_optimum ? " optimum" : " non-optimum") << '\n';
    }
  });
  outputs.write("optima_histogram.csv", [&](std::ostream& o) { write_histogram_csv(o, run.census.histogram); });
  run.files = outputs.commit();
  if (log) {
    *log << "optima: " << run.census.strict_optima << " strict optima, " << run.census.plateau_ties
         << " plateau ties, verdict " << (run.diagonal.verdict ? "true" : "false") << '\n';
  }
  return run;
}

}  // namespace nkcloud
