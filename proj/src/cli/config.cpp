#include <algorithm>
#include <cmath>
#include <random>

#include "cg/cli.hpp"

namespace cg::cli {
namespace {

std::string join(const std::string& ctx, const std::string& key) { return ctx.empty() ? key : ctx + "." + key; }

void require_object(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw ConfigError((ctx.empty() ? "config" : ctx) + ": expected an object");
}

const json& require(const json& obj, const std::string& key, const std::string& ctx) {
  require_object(obj, ctx);
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing key '" + join(ctx, key) + "'");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& ctx) {
  require_object(obj, ctx);
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      std::string list;
      for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      throw ConfigError("unknown key '" + join(ctx, key) + "' (allowed: " + list + ")");
    }
  }
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  return v.get<double>();
}

std::size_t count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ConfigError(path + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

bool flag(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path + ": expected true or false");
  return v.get<bool>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path + ": expected a string");
  return v.get<std::string>();
}

Vector numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path + ": expected an array of numbers");
  Vector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::size_t> counts(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path + ": expected an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(count(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T, class F>
T optional_field(const json& obj, const char* key, const std::string& ctx, T fallback, F convert) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return convert(*it, join(ctx, key));
}

}  // namespace

void apply_override(json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set expects key=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }

  json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("--set: empty path segment in '" + path + "'");
    json* next = nullptr;
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        throw ConfigError("--set: '" + key + "' indexes an array but is not a number");
      }
      if (idx >= node->size()) throw ConfigError("--set: index " + key + " out of range in '" + path + "'");
      next = &(*node)[idx];
    } else {
      if (!node->is_object()) *node = json::object();
      next = &(*node)[key];
    }
    if (dot == std::string::npos) {
      *next = std::move(value);
      return;
    }
    node = next;
    start = dot + 1;
  }
}

json load_config(const Options& opts) {
  json config = read_json_file(opts.config);
  require_object(config, "");
  for (const auto& o : opts.overrides) apply_override(config, o);
  if (opts.seed) config["seed"] = *opts.seed;
  return config;
}

StepConfig parse_step_config(const json& j) {
  const std::string ctx = "optimizer";
  check_keys(j, {"method", "alpha", "alpha1", "alpha2", "beta", "beta1", "beta2", "base", "conopt_gamma",
                 "sga_lambda", "sga_align"},
             ctx);
  StepConfig cfg;
  cfg.method = parse_method(text(require(j, "method", ctx), ctx + ".method"));

  const double alpha = optional_field(j, "alpha", ctx, cfg.alpha1, number);
  cfg.alpha1 = optional_field(j, "alpha1", ctx, alpha, number);
  cfg.alpha2 = optional_field(j, "alpha2", ctx, alpha, number);
  // OMD ties the acceleration coefficient to the step size unless told otherwise.
  const double beta_default = cfg.method == Method::OMD ? alpha : 0.0;
  const double beta = optional_field(j, "beta", ctx, beta_default, number);
  cfg.beta1 = optional_field(j, "beta1", ctx, beta, number);
  cfg.beta2 = optional_field(j, "beta2", ctx, beta, number);

  if (const auto it = j.find("base"); it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      cfg.base = parse_base(it->get<std::string>());
    } else {
      const std::string bctx = ctx + ".base";
      check_keys(*it, {"type", "decay", "epsilon"}, bctx);
      cfg.base = parse_base(text(require(*it, "type", bctx), bctx + ".type"));
      cfg.rms_decay = optional_field(*it, "decay", bctx, cfg.rms_decay, number);
      cfg.rms_epsilon = optional_field(*it, "epsilon", bctx, cfg.rms_epsilon, number);
    }
  }
  cfg.conopt_gamma = optional_field(j, "conopt_gamma", ctx, cfg.conopt_gamma, number);
  cfg.sga_lambda = optional_field(j, "sga_lambda", ctx, cfg.sga_lambda, number);
  cfg.sga_align = optional_field(j, "sga_align", ctx, cfg.sga_align, flag);
  cfg.validate();
  return cfg;
}

json to_json(const StepConfig& cfg) {
  json base = {{"type", std::string(to_string(cfg.base))}};
  if (cfg.base == Base::RMSProp) {
    base["decay"] = cfg.rms_decay;
    base["epsilon"] = cfg.rms_epsilon;
  }
  return {{"method", std::string(to_string(cfg.method))},
          {"alpha1", cfg.alpha1},
          {"alpha2", cfg.alpha2},
          {"beta1", cfg.beta1},
          {"beta2", cfg.beta2},
          {"base", base},
          {"conopt_gamma", cfg.conopt_gamma},
          {"sga_lambda", cfg.sga_lambda},
          {"sga_align", cfg.sga_align}};
}

Matrix parse_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field + ": expected a nonempty array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(numbers(j[i], field + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size() || rows.back().empty())
      throw ConfigError(field + ": rows must be nonempty and of equal length");
  }
  return Matrix::from_rows(rows);
}

BilinearGame parse_game(const json& j) {
  const std::string ctx = "game";
  check_keys(j, {"A", "b", "c"}, ctx);
  Matrix a = parse_matrix(require(j, "A", ctx), "game.A");
  Vector b = optional_field(j, "b", ctx, Vector(a.rows(), 0.0), numbers);
  Vector c = optional_field(j, "c", ctx, Vector(a.cols(), 0.0), numbers);
  try {
    return BilinearGame(std::move(a), std::move(b), std::move(c));
  } catch (const Error& e) {
    throw ConfigError(std::string("game: ") + e.what());
  }
}

json to_json(const BilinearGame& g) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < g.a.rows(); ++i) rows.emplace_back(g.a.row_span(i).begin(), g.a.row_span(i).end());
  return {{"A", rows}, {"b", g.b}, {"c", g.c}};
}

JointPoint parse_point(const json& j, std::size_t d, std::size_t p) {
  const std::string ctx = "start";
  check_keys(j, {"theta", "phi"}, ctx);
  JointPoint x{numbers(require(j, "theta", ctx), "start.theta"), numbers(require(j, "phi", ctx), "start.phi")};
  if (x.theta.size() != d || x.phi.size() != p)
    throw ConfigError("start: expected theta of length " + std::to_string(d) + " and phi of length " +
                      std::to_string(p));
  return x;
}

JointPoint random_point(std::size_t d, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  JointPoint x{Vector(d), Vector(p)};
  for (double& v : x.theta) v = dist(rng);
  for (double& v : x.phi) v = dist(rng);
  return x;
}

MlpSpec parse_mlp(const json& j, std::size_t input_dim, std::size_t output_dim) {
  check_keys(j, {"hidden"}, "net");
  MlpSpec spec;
  spec.input_dim = input_dim;
  spec.layer_widths = counts(require(j, "hidden", "net"), "net.hidden");
  spec.layer_widths.push_back(output_dim);
  spec.validate();
  return spec;
}

json to_json(const MlpSpec& spec) {
  std::vector<std::size_t> hidden(spec.layer_widths.begin(), spec.layer_widths.end() - 1);
  return {{"hidden", hidden}, {"input_dim", spec.input_dim}, {"output_dim", spec.output_dim()}};
}

TrainConfig parse_train_config(const json& j) {
  check_keys(j,
             {"optimizer", "generator", "discriminator", "noise_dim", "batch_size", "iterations", "checkpoints",
              "seed", "eval_samples", "mixture", "coverage_threshold", "lr_grid", "name", "init"},
             "");
  if (const auto it = j.find("init"); it != j.end() && *it != "he_normal")
    throw ConfigError("init: only he_normal is supported");
  TrainConfig cfg = TrainConfig::desk();
  cfg.noise_dim = optional_field(j, "noise_dim", "", cfg.noise_dim, count);

  auto hidden_of = [](const MlpSpec& s) {
    return json{{"hidden", std::vector<std::size_t>(s.layer_widths.begin(), s.layer_widths.end() - 1)}};
  };
  auto strip = [](json net) {
    net.erase("input_dim");
    net.erase("output_dim");
    return net;
  };
  cfg.nets.gen = parse_mlp(strip(j.value("generator", hidden_of(cfg.nets.gen))), cfg.noise_dim, 2);
  cfg.nets.disc = parse_mlp(strip(j.value("discriminator", hidden_of(cfg.nets.disc))), 2, 1);

  if (const auto it = j.find("optimizer"); it != j.end()) cfg.optimizer = parse_step_config(*it);
  cfg.batch_size = optional_field(j, "batch_size", "", cfg.batch_size, count);
  cfg.iterations = optional_field(j, "iterations", "", cfg.iterations, count);
  cfg.checkpoint_steps = optional_field(j, "checkpoints", "", cfg.checkpoint_steps, counts);
  cfg.seed = optional_field(j, "seed", "", cfg.seed, [](const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return v.get<std::uint64_t>();
  });
  cfg.eval_samples = optional_field(j, "eval_samples", "", cfg.eval_samples, count);
  if (const auto it = j.find("coverage_threshold"); it != j.end() && !it->is_null())
    cfg.coverage_threshold = count(*it, "coverage_threshold");

  if (const auto it = j.find("mixture"); it != j.end()) {
    check_keys(*it, {"modes", "radius", "std"}, "mixture");
    cfg.mixture = MixtureSpec::ring(optional_field(*it, "modes", "mixture", std::size_t{8}, count),
                                    optional_field(*it, "radius", "mixture", 2.0, number),
                                    optional_field(*it, "std", "mixture", 0.04, number));
  }
  cfg.validate();
  return cfg;
}

json to_json(const TrainConfig& cfg) {
  return {{"optimizer", to_json(cfg.optimizer)},
          {"generator", to_json(cfg.nets.gen)},
          {"discriminator", to_json(cfg.nets.disc)},
          {"noise_dim", cfg.noise_dim},
          {"batch_size", cfg.batch_size},
          {"iterations", cfg.iterations},
          {"checkpoints", cfg.checkpoint_steps},
          {"seed", cfg.seed},
          {"eval_samples", cfg.eval_samples},
          {"coverage_threshold", cfg.threshold()},
          {"mixture", {{"modes", cfg.mixture.centers.size()}, {"radius", cfg.mixture.radius}, {"std", cfg.mixture.std}}},
          {"init", "he_normal"}};
}

json to_json(const SpectralReport& rep) {
  json eigs = json::array();
  for (const Complex& z : rep.eigenvalues) eigs.push_back({z.real(), z.imag()});
  return {{"method", std::string(to_string(rep.method))},
          {"eigenvalues", eigs},
          {"rho", rep.rho},
          {"rho_reduced", rep.rho_reduced},
          {"bound", rep.bound ? json(*rep.bound) : json(nullptr)},
          {"region_ok", rep.region_ok ? json(*rep.region_ok) : json(nullptr)},
          {"params", to_json(rep.params)},
          {"singular_values", rep.singular_values},
          {"cross_check", rep.cross_check ? json(*rep.cross_check) : json(nullptr)}};
}

json to_json(const GanMetrics& m) {
  return {{"mode_coverage", m.mode_coverage},
          {"high_quality_fraction", m.high_quality_fraction},
          {"per_mode_counts", m.per_mode_counts},
          {"mean_min_center_distance", m.mean_min_center_distance}};
}

json to_json(const TimingSummary& t) {
  return {{"mean_s", t.mean_s}, {"stddev_s", t.stddev_s}, {"measured", t.measured}};
}

}  // namespace cg::cli
