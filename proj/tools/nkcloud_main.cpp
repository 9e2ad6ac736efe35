// nkcloud: fitness clouds, evolvability thresholds and hill-climbing runs on
// NK landscapes.
//
//   nkcloud cloud  --n 16 --k 4 --out out/whole
//   nkcloud ghc    --n 16 --k 8 --out out/ghc
//   nkcloud optima --n 12 --k 6 --out out/optima
//
// Settings may also come from --config FILE (flat key=value, keys named like
// the flags); flags given on the command line win.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nkcloud/experiment.hpp"

namespace {

struct Flag {
  const char* key;
  const char* help;
  std::string value;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fitness-cloud analysis of NK landscapes"};
  app.require_subcommand(1);

  std::vector<Flag> flags = {
      {"n", "number of loci (1..32)", {}},
      {"k", "epistasis degree (0..n-1)", {}},
      {"seed", "landscape seed", {}},
      {"links", "epistasis link model: random|adjacent", {}},
      {"mode", "genotype source: exhaustive|sample", {}},
      {"samples", "number of sampled genotypes", {}},
      {"sample-seed", "seed of the genotype sample", {}},
      {"bin-width", "width of the fitness-equality intervals", {}},
      {"rule", "bordering rule for `cloud`: whole|ghc", {}},
      {"generations", "GHC generations per run", {}},
      {"runs", "number of GHC runs", {}},
      {"run-seed", "seed of the GHC start genotypes", {}},
      {"out", "output directory", {}},
      {"barrier-tol", "tolerance on |terminal mean f - beta|", {}},
      {"barrier-band", "band around the GHC mean line for the trajectory report", {}},
      {"threads", "worker threads (0 = all cores)", {}},
  };
  std::string config_file;
  bool allow_large = false;
  bool dump_points = false;
  bool dump_runs = false;

  auto* cloud = app.add_subcommand("cloud", "shape, thresholds and mean-line fit of a fitness cloud");
  auto* ghc = app.add_subcommand("ghc", "GHC cloud, average hill-climbing trajectory and barrier report");
  auto* optima = app.add_subcommand("optima", "local-optima census and below-diagonal check");
  for (auto* sub : {cloud, ghc, optima}) {
    for (Flag& f : flags) sub->add_option(std::string("--") + f.key, f.value, f.help);
    sub->add_option("--config", config_file, "flat key=value settings file");
    sub->add_flag("--allow-large", allow_large, "permit exhaustive enumeration beyond 25 loci");
  }
  cloud->add_flag("--dump-points", dump_points, "also write every raw (f, f_border) point (n <= 16)");
  ghc->add_flag("--dump-runs", dump_runs, "also write every individual run");

  CLI11_PARSE(app, argc, argv);

  try {
    nkcloud::Settings settings;
    if (!config_file.empty()) settings = nkcloud::load_settings_file(config_file);
    const CLI::App* active = app.get_subcommands().front();
    for (const Flag& f : flags) {
      if (active->count(std::string("--") + f.key) > 0) settings[f.key] = f.value;
    }
    if (allow_large) settings["allow-large"] = "true";
    if (dump_points) settings["dump-points"] = "true";
    if (dump_runs) settings["dump-runs"] = "true";
    if (ghc->parsed()) {
      settings.try_emplace("generations", "100");
      settings.try_emplace("runs", "70");
    }

    const auto cfg = nkcloud::ExperimentConfig::from_settings(settings);
    std::vector<std::filesystem::path> files;
    if (cloud->parsed()) {
      files = nkcloud::cmd_cloud(cfg, &std::cerr).files;
    } else if (ghc->parsed()) {
      files = nkcloud::cmd_ghc(cfg, &std::cerr).files;
    } else {
      files = nkcloud::cmd_optima(cfg, &std::cerr).files;
    }
    for (const auto& p : files) std::cerr << "wrote " << p.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
