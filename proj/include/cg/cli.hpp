#pragma once

// Command implementations behind the `cg` executable.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cg/ganlab.hpp"
#include "cg/spectra.hpp"

namespace cg::cli {

using nlohmann::json;

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitDiverged = 2 };

struct Options {
  std::string command;
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;  ///< "dotted.key=value"
  int jobs = 1;
  std::optional<std::filesystem::path> out;
};

// ---- io ----

/// Parses a JSON file; syntax errors report line and column.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);
/// %.17g
std::string format_double(double v);

/// RFC-4180 CSV writer.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;
  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(std::size_t v);
  CsvWriter& operator<<(const std::string& v);
  void end_row();
  void close();

 private:
  void field(const std::string& text);

  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
};

std::string csv_escape(const std::string& field);

/// --out, then CG_OUTPUT_DIR, then ./runs/<timestamp>-<command>.
std::filesystem::path resolve_output_dir(const Options& opts);
std::string utc_timestamp(bool compact = false);

// ---- config ----

/// Sets the value at a dotted path; the value is parsed as JSON, falling back to a string.
void apply_override(json& config, const std::string& assignment);
json load_config(const Options& opts);

StepConfig parse_step_config(const json& j);
json to_json(const StepConfig& cfg);
BilinearGame parse_game(const json& j);
json to_json(const BilinearGame& g);
JointPoint parse_point(const json& j, std::size_t d, std::size_t p);
JointPoint random_point(std::size_t d, std::size_t p, std::uint64_t seed);
Matrix parse_matrix(const json& j, const std::string& field);
MlpSpec parse_mlp(const json& j, std::size_t input_dim, std::size_t output_dim);
json to_json(const MlpSpec& spec);
TrainConfig parse_train_config(const json& j);
json to_json(const TrainConfig& cfg);
json to_json(const SpectralReport& rep);
json to_json(const GanMetrics& m);
json to_json(const TimingSummary& t);

// ---- manifest ----

class RunManifest {
 public:
  RunManifest(std::string command, std::filesystem::path dir);

  void set_config(json resolved);
  void set_seed(std::optional<std::uint64_t> seed);
  /// Records a file written into the run directory (relative name).
  void add_output(const std::filesystem::path& file);
  void set_outcome(json outcome);
  void set_error(const std::string& message);
  /// Drops listed outputs that do not exist, stamps the end time and writes manifest.json.
  void write();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(const std::string& name) const { return dir_ / name; }

 private:
  std::string command_;
  std::filesystem::path dir_;
  std::string started_;
  json config_;
  json seed_;
  std::vector<std::string> outputs_;
  json outcome_;
  json error_;
};

// ---- commands ----

/// Each command loads opts.config, writes its outputs into manifest.dir() and returns an exit code.
int cmd_bilinear_run(const Options& opts, RunManifest& manifest);
int cmd_sweep(const Options& opts, RunManifest& manifest);
int cmd_spectra(const Options& opts, RunManifest& manifest);
int cmd_gan_train(const Options& opts, RunManifest& manifest);
int cmd_bench(const Options& opts, RunManifest& manifest);

/// Dispatches opts.command, converting errors to exit code 1; the manifest is always written.
int run_command(const Options& opts);

/// Full command-line entry point.
int main_entry(int argc, char** argv);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
void write_sweep_csv(const std::filesystem::path& path, const SweepGrid& grid);
void write_samples_csv(const std::filesystem::path& path, const Matrix& samples);

}  // namespace cg::cli
