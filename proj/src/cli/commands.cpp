#include <cmath>
#include <iostream>

#include "cg/cli.hpp"

namespace cg::cli {
namespace {

constexpr std::uint64_t kGroundTruthStream = 7;
// A bilinear run whose final distance grew past this multiple of the initial one
// is reported as diverged even if no coordinate hit the guard.
constexpr double kGrowthFactor = 10.0;

void check_top_keys(const json& c, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : c.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError("unknown key '" + key + "'");
}

const json& require_key(const json& c, const char* key) {
  const auto it = c.find(key);
  if (it == c.end()) throw ConfigError("missing key '" + std::string(key) + "'");
  return *it;
}

std::size_t size_field(const json& c, const char* key, std::size_t fallback) {
  const auto it = c.find(key);
  if (it == c.end()) return fallback;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0)
    throw ConfigError(std::string(key) + ": expected a nonnegative integer");
  return it->get<std::size_t>();
}

std::uint64_t seed_field(const json& c, std::uint64_t fallback) {
  const auto it = c.find("seed");
  if (it == c.end()) return fallback;
  if (!it->is_number_integer()) throw ConfigError("seed: expected an integer");
  return it->get<std::uint64_t>();
}

bool alternating(Method m) { return m == Method::AltGD || m == Method::GradACA; }

bool has_iteration_matrix(const StepConfig& cfg) {
  if (cfg.base != Base::Identity) return false;
  switch (cfg.method) {
    case Method::SimGD:
    case Method::AltGD:
    case Method::GradSCA:
    case Method::GradACA:
    case Method::OMD:
      return true;
    default:
      return false;
  }
}

SpectralReport analyze(const Matrix& a, const StepConfig& cfg) {
  return alternating(cfg.method) ? aca_spectrum(a, cfg) : sca_spectrum(a, cfg);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json point_json(const JointPoint& x) { return {{"theta", x.theta}, {"phi", x.phi}}; }

// Limit of a convergent run: the stationary point plus the start's component in
// the null spaces, which no update can change.
JointPoint projected_reference(const BilinearGame& g, const JointPoint& stationary, const JointPoint& start) {
  const JointPoint offset{subtract(start.theta, stationary.theta), subtract(start.phi, stationary.phi)};
  auto [pt, pp] = null_projections(g, offset);
  for (std::size_t i = 0; i < pt.size(); ++i) pt[i] += stationary.theta[i];
  for (std::size_t j = 0; j < pp.size(); ++j) pp[j] += stationary.phi[j];
  return {std::move(pt), std::move(pp)};
}

JointPoint start_point(const json& c, std::size_t d, std::size_t p, std::uint64_t seed) {
  const auto it = c.find("start");
  if (it == c.end() || *it == "random") return random_point(d, p, seed);
  return parse_point(*it, d, p);
}

}  // namespace

int cmd_bilinear_run(const Options& opts, RunManifest& manifest) {
  const json c = load_config(opts);
  manifest.set_config(c);
  check_top_keys(c, {"game", "optimizer", "steps", "start", "reference", "seed", "name"});
  const BilinearGame game = parse_game(require_key(c, "game"));
  const StepConfig cfg = parse_step_config(require_key(c, "optimizer"));
  const std::size_t steps = size_field(c, "steps", 500);
  const std::uint64_t seed = seed_field(c, 0);
  const JointPoint start = start_point(c, game.d(), game.p(), seed);
  const std::string reference_mode = c.value("reference", std::string("projected"));
  if (reference_mode != "projected" && reference_mode != "stationary")
    throw ConfigError("reference: expected 'projected' or 'stationary'");

  const Stationarity st = stationarity(game);
  if (!st.exists) throw UnsupportedGameError("game has no stationary point; b or c lies outside the range of A");
  const JointPoint reference =
      reference_mode == "projected" ? projected_reference(game, *st.point, start) : *st.point;

  json resolved = {{"game", to_json(game)},   {"optimizer", to_json(cfg)}, {"steps", steps},
                   {"start", point_json(start)}, {"reference", reference_mode}, {"seed", seed}};
  if (c.contains("name")) resolved["name"] = c["name"];
  manifest.set_config(resolved);
  manifest.set_seed(seed);

  const BilinearGameModel model(game);
  const Trajectory traj = run_trajectory(model, cfg, start, steps, reference);
  write_trajectory_csv(manifest.path("trajectory.csv"), traj);
  manifest.add_output("trajectory.csv");

  const bool grew = traj.deltas.back() > kGrowthFactor * traj.deltas.front();
  const bool diverged = traj.diverged || grew || !std::isfinite(traj.deltas.back());
  json outcome = {{"steps_run", traj.size() - 1},
                  {"final_delta", traj.deltas.back()},
                  {"initial_delta", traj.deltas.front()},
                  {"diverged", diverged},
                  {"guard_hit", traj.diverged},
                  {"reference", point_json(reference)}};
  if (has_iteration_matrix(cfg)) {
    const SpectralReport rep = analyze(game.a, cfg);
    write_json_file(manifest.path("spectral_report.json"), to_json(rep));
    manifest.add_output("spectral_report.json");
    outcome["rho"] = rep.rho;
  }
  std::optional<double> rate;
  if (!traj.diverged && traj.size() >= 25) {
    try {
      rate = empirical_rate(traj);
    } catch (const PreconditionError&) {
    }
  }
  outcome["empirical_rate"] = optional_json(rate);
  manifest.set_outcome(outcome);
  return diverged ? kExitDiverged : kExitOk;
}

int cmd_sweep(const Options& opts, RunManifest& manifest) {
  const json c = load_config(opts);
  manifest.set_config(c);
  check_top_keys(c, {"game", "method", "grid", "steps", "start", "seed", "name"});
  const BilinearGame game = c.contains("game") ? parse_game(c["game"]) : scalar_game();
  if (!game.centered()) throw ConfigError("sweep runs on the centered game; drop game.b and game.c");
  const Method method = parse_method(c.value("method", std::string("GradACA")));
  const std::size_t steps = size_field(c, "steps", 500);
  const std::uint64_t seed = seed_field(c, 0);
  const JointPoint start = start_point(c, game.d(), game.p(), seed);

  Vector alphas, betas;
  const json grid = c.value("grid", json::object());
  if (grid.is_number_integer()) {
    alphas = betas = sweep_axis(grid.get<std::size_t>());
  } else if (grid.is_object()) {
    const std::size_t n = size_field(grid, "n", 50);
    const double upper = grid.value("upper", 0.5);
    alphas = grid.contains("alphas") ? grid["alphas"].get<Vector>() : sweep_axis(n, upper);
    betas = grid.contains("betas") ? grid["betas"].get<Vector>() : sweep_axis(n, upper);
  } else {
    throw ConfigError("grid: expected an integer or an object");
  }

  manifest.set_config({{"game", to_json(game)},
                       {"method", std::string(to_string(method))},
                       {"grid", {{"alphas", alphas}, {"betas", betas}}},
                       {"steps", steps},
                       {"start", point_json(start)},
                       {"seed", seed},
                       {"jobs", opts.jobs}});
  manifest.set_seed(seed);

  const SweepGrid result = sweep(game.a, method, alphas, betas, steps, start, opts.jobs);
  write_sweep_csv(manifest.path("sweep.csv"), result);
  manifest.add_output("sweep.csv");

  auto [pt, pp] = null_projections(game, start);
  const double initial = squared_distance(start, {pt, pp});
  std::size_t diverged = 0, improved = 0;
  for (const SweepCell& cell : result.cells) {
    diverged += cell.diverged ? 1 : 0;
    improved += (!cell.diverged && cell.log10_final_dist < std::log10(initial)) ? 1 : 0;
  }
  manifest.set_outcome({{"cells", result.cells.size()},
                        {"diverged_cells", diverged},
                        {"cells_below_initial", improved},
                        {"initial_delta", initial}});
  return kExitOk;
}

int cmd_spectra(const Options& opts, RunManifest& manifest) {
  const json c = load_config(opts);
  manifest.set_config(c);
  check_top_keys(c, {"entries", "seed", "name"});
  const json& entries = require_key(c, "entries");
  if (!entries.is_array() || entries.empty()) throw ConfigError("entries: expected a nonempty array");
  manifest.set_seed(seed_field(c, 0));

  json records = json::array();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const json& e = entries[k];
    const std::string where = "entries[" + std::to_string(k) + "]";
    if (!e.is_object()) throw ConfigError(where + ": expected an object");
    const Matrix a = parse_matrix(require_key(e, "A"), where + ".A");
    const StepConfig cfg = parse_step_config(require_key(e, "optimizer"));
    if (cfg.base != Base::Identity) throw ConfigError(where + ": spectra need the identity base");
    const std::string analysis = e.value("analysis", std::string(alternating(cfg.method) ? "aca" : "sca"));
    SpectralReport rep;
    if (analysis == "sca")
      rep = sca_spectrum(a, cfg);
    else if (analysis == "aca")
      rep = aca_spectrum(a, cfg);
    else
      throw ConfigError(where + ".analysis: expected 'sca' or 'aca'");
    json rec = to_json(rep);
    rec["name"] = e.value("name", where);
    records.push_back(rec);
  }
  write_json_file(manifest.path("spectra.json"), records);
  manifest.add_output("spectra.json");
  manifest.set_outcome({{"entries", records.size()}});
  return kExitOk;
}

int cmd_gan_train(const Options& opts, RunManifest& manifest) {
  const json c = load_config(opts);
  manifest.set_config(c);
  const TrainConfig base = parse_train_config(c);

  std::vector<TrainConfig> runs;
  std::vector<std::string> labels;
  if (const auto it = c.find("lr_grid"); it != c.end()) {
    if (!it->is_array() || it->empty()) throw ConfigError("lr_grid: expected a nonempty array of numbers");
    for (std::size_t k = 0; k < it->size(); ++k) {
      TrainConfig r = base;
      const double lr = (*it)[k].get<double>();
      r.optimizer.alpha1 = r.optimizer.alpha2 = lr;
      if (r.optimizer.method == Method::OMD) r.optimizer.beta1 = r.optimizer.beta2 = lr;
      r.optimizer.validate();
      runs.push_back(r);
      labels.push_back(method_label(r.optimizer) + "_lr" + std::to_string(k));
    }
  } else {
    runs.push_back(base);
    labels.push_back(method_label(base.optimizer));
  }

  json resolved = to_json(base);
  if (c.contains("lr_grid")) resolved["lr_grid"] = c["lr_grid"];
  if (c.contains("name")) resolved["name"] = c["name"];
  manifest.set_config(resolved);
  manifest.set_seed(base.seed);

  std::mt19937_64 truth_rng(derive_seed(base.seed, kGroundTruthStream));
  write_samples_csv(manifest.path("ground_truth.csv"), sample_real(base.mixture, base.eval_samples, truth_rng));
  manifest.add_output("ground_truth.csv");

  json metrics = json::array();
  json timing = json::object();
  bool any_failed = false;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const TrainConfig& cfg = runs[k];
    const std::string& label = labels[k];
    std::cerr << "training " << label << " for " << cfg.iterations << " iterations\n";
    const TrainResult r = train(cfg);

    json checkpoints = json::array();
    for (const SampleDump& d : r.checkpoints) {
      const std::string name = "samples_" + label + "_" + std::to_string(d.step) + ".csv";
      write_samples_csv(manifest.path(name), d.samples);
      manifest.add_output(name);
      checkpoints.push_back({{"step", d.step}, {"metrics", to_json(d.metrics)}});
    }

    const std::string loss_name = "losses_" + label + ".csv";
    CsvWriter csv(manifest.path(loss_name), {"step", "loss"});
    for (std::size_t t = 0; t < r.losses.size(); ++t) {
      csv << (t + 1) << r.losses[t];
      csv.end_row();
    }
    csv.close();
    manifest.add_output(loss_name);

    const std::size_t steps_done = r.failed ? r.failed_step - 1 : cfg.iterations;
    write_checkpoint(manifest.path("generator_" + label + ".ckpt"),
                     {cfg.nets.gen, cfg.seed, steps_done, r.final_params.theta});
    write_checkpoint(manifest.path("discriminator_" + label + ".ckpt"),
                     {cfg.nets.disc, cfg.seed, steps_done, r.final_params.phi});
    manifest.add_output("generator_" + label + ".ckpt");
    manifest.add_output("discriminator_" + label + ".ckpt");

    metrics.push_back({{"label", label},
                       {"optimizer", to_json(cfg.optimizer)},
                       {"checkpoints", checkpoints},
                       {"final_loss", r.losses.empty() ? json(nullptr) : json(r.losses.back())},
                       {"failed", r.failed},
                       {"failed_step", r.failed ? json(r.failed_step) : json(nullptr)},
                       {"failure", r.failed ? json(r.failure) : json(nullptr)}});
    timing[label] = to_json(r.timing);
    any_failed = any_failed || r.failed;
  }
  write_json_file(manifest.path("metrics.json"), {{"runs", metrics}});
  manifest.add_output("metrics.json");
  manifest.set_outcome({{"runs", metrics.size()}, {"any_failed", any_failed}, {"timing", timing}});
  return any_failed ? kExitDiverged : kExitOk;
}

int cmd_bench(const Options& opts, RunManifest& manifest) {
  const json c = load_config(opts);
  manifest.set_config(c);
  check_top_keys(c, {"base", "methods", "iterations", "seed", "name"});
  json base_json = c.value("base", json::object());
  if (c.contains("seed")) base_json["seed"] = c["seed"];
  const TrainConfig base = parse_train_config(base_json);
  const json& methods = require_key(c, "methods");
  if (!methods.is_array() || methods.empty()) throw ConfigError("methods: expected a nonempty array");
  const std::size_t iterations = size_field(c, "iterations", 300);
  if (iterations == 0) throw ConfigError("iterations must be at least 1");

  std::vector<TrainConfig> cfgs;
  json resolved_methods = json::array();
  for (const json& m : methods) {
    TrainConfig t = base;
    t.optimizer = parse_step_config(m);
    t.iterations = iterations;
    t.checkpoint_steps.clear();
    t.validate();
    cfgs.push_back(t);
    resolved_methods.push_back(to_json(t.optimizer));
  }
  manifest.set_config({{"base", to_json(base)}, {"methods", resolved_methods}, {"iterations", iterations}});
  manifest.set_seed(base.seed);

  const std::vector<TimingRow> rows = timing_compare(cfgs, iterations);
  CsvWriter csv(manifest.path("timing.csv"), {"method", "mean_s", "stddev_s", "measured"});
  json table = json::array();
  for (const TimingRow& r : rows) {
    csv << r.label << r.summary.mean_s << r.summary.stddev_s << r.summary.measured;
    csv.end_row();
    table.push_back({{"method", r.label},
                     {"mean_s", r.summary.mean_s},
                     {"ratio_to_first", r.summary.mean_s / rows.front().summary.mean_s}});
  }
  csv.close();
  manifest.add_output("timing.csv");
  manifest.set_outcome({{"rows", table}});
  return kExitOk;
}

int run_command(const Options& opts) {
  std::filesystem::path dir;
  try {
    dir = resolve_output_dir(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: cannot create output directory: " << e.what() << '\n';
    return kExitError;
  }
  RunManifest manifest(opts.command, dir);
  int code = kExitError;
  try {
    if (opts.command == "bilinear-run")
      code = cmd_bilinear_run(opts, manifest);
    else if (opts.command == "sweep")
      code = cmd_sweep(opts, manifest);
    else if (opts.command == "spectra")
      code = cmd_spectra(opts, manifest);
    else if (opts.command == "gan-train")
      code = cmd_gan_train(opts, manifest);
    else if (opts.command == "bench")
      code = cmd_bench(opts, manifest);
    else
      throw ConfigError("unknown command '" + opts.command + "'");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    manifest.set_error(e.what());
    code = kExitError;
  }
  try {
    manifest.write();
  } catch (const std::exception& e) {
    std::cerr << "error: writing manifest: " << e.what() << '\n';
    return kExitError;
  }
  if (code == kExitDiverged) std::cerr << "run diverged; see " << (dir / "manifest.json").string() << '\n';
  return code;
}

}  // namespace cg::cli
