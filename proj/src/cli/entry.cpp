#include <iostream>

#include <CLI11.hpp>

#include "cg/cli.hpp"

#ifndef CG_VERSION
#define CG_VERSION "0.0.0"
#endif

namespace cg::cli {

int main_entry(int argc, char** argv) {
  CLI::App app{"Bilinear game dynamics, spectra and small GAN experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CG_VERSION);

  Options opts;
  std::uint64_t seed = 0;
  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"bilinear-run", "Run one optimizer on a bilinear game and record the trajectory"},
      {"sweep", "Grid over (alpha, beta) for GradSCA or GradACA on a bilinear game"},
      {"spectra", "Iteration-matrix spectra, rate bounds and convergence-region checks"},
      {"gan-train", "Train a GAN on a 2-D Gaussian mixture"},
      {"bench", "Compare per-step wall time of several GAN optimizers"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("config", opts.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--set", opts.overrides, "Override a config value: dotted.key=json");
    sub->add_option("--jobs", opts.jobs, "Worker threads for sweeps (0 = all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", opts.out, "Output directory");
    sub->callback([&opts, sub] { opts.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }
  for (CLI::App* sub : app.get_subcommands())
    if (sub->count("--seed") > 0) opts.seed = seed;
  return run_command(opts);
}

}  // namespace cg::cli
