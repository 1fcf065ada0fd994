#include "cg/cli.hpp"

#ifndef CG_VERSION
#define CG_VERSION "0.0.0"
#endif

namespace cg::cli {

RunManifest::RunManifest(std::string command, std::filesystem::path dir)
    : command_(std::move(command)), dir_(std::move(dir)), started_(utc_timestamp()) {}

void RunManifest::set_config(json resolved) { config_ = std::move(resolved); }

void RunManifest::set_seed(std::optional<std::uint64_t> seed) { seed_ = seed ? json(*seed) : json(nullptr); }

void RunManifest::add_output(const std::filesystem::path& file) { outputs_.push_back(file.generic_string()); }

void RunManifest::set_outcome(json outcome) { outcome_ = std::move(outcome); }

void RunManifest::set_error(const std::string& message) { error_ = message; }

void RunManifest::write() {
  std::vector<std::string> present;
  for (const auto& f : outputs_)
    if (std::filesystem::exists(dir_ / f)) present.push_back(f);
  const json j = {{"command", command_},
                  {"config", config_},
                  {"seed", seed_},
                  {"version", CG_VERSION},
                  {"started", started_},
                  {"finished", utc_timestamp()},
                  {"outputs", present},
                  {"outcome", outcome_},
                  {"error", error_}};
  write_json_file(dir_ / "manifest.json", j);
}

}  // namespace cg::cli
