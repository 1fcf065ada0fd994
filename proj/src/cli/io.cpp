#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "cg/cli.hpp"

namespace cg::cli {

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": invalid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  file_ = std::fopen(path.string().c_str(), "wb");
  if (!file_) throw Error("cannot write " + path.string());
  for (const auto& h : header) field(h);
  end_row();
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(file_);
}

void CsvWriter::field(const std::string& text) {
  if (in_row_ > 0) std::fputc(',', file_);
  const std::string escaped = csv_escape(text);
  std::fwrite(escaped.data(), 1, escaped.size(), file_);
  ++in_row_;
}

CsvWriter& CsvWriter::operator<<(double v) {
  field(format_double(v));
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::size_t v) {
  field(std::to_string(v));
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  field(v);
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_)
    throw Error(path_.string() + ": row has " + std::to_string(in_row_) + " fields, header has " +
                std::to_string(columns_));
  std::fputs("\r\n", file_);
  in_row_ = 0;
}

void CsvWriter::close() {
  if (file_ && std::fclose(file_) != 0) {
    file_ = nullptr;
    throw Error("failed writing " + path_.string());
  }
  file_ = nullptr;
}

std::string utc_timestamp(bool compact) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, compact ? "%Y%m%d-%H%M%S" : "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path resolve_output_dir(const Options& opts) {
  std::filesystem::path dir;
  if (opts.out) {
    dir = *opts.out;
  } else if (const char* env = std::getenv("CG_OUTPUT_DIR"); env && *env) {
    dir = env;
  } else {
    dir = std::filesystem::path("runs") / (utc_timestamp(true) + "-" + opts.command);
  }
  std::filesystem::create_directories(dir);
  return dir;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::vector<std::string> header{"step"};
  const std::size_t d = traj.points.empty() ? 0 : traj.points[0].theta.size();
  const std::size_t p = traj.points.empty() ? 0 : traj.points[0].phi.size();
  for (std::size_t i = 0; i < d; ++i) header.push_back("theta_" + std::to_string(i));
  for (std::size_t j = 0; j < p; ++j) header.push_back("phi_" + std::to_string(j));
  for (const char* h : {"delta", "grad_norm", "step_time_s"}) header.emplace_back(h);
  CsvWriter csv(path, header);
  for (std::size_t t = 0; t < traj.size(); ++t) {
    csv << t;
    for (double v : traj.points[t].theta) csv << v;
    for (double v : traj.points[t].phi) csv << v;
    csv << traj.deltas[t] << traj.grad_norms[t] << traj.step_times[t];
    csv.end_row();
  }
  csv.close();
}

void write_sweep_csv(const std::filesystem::path& path, const SweepGrid& grid) {
  CsvWriter csv(path, {"alpha", "beta", "log10_final_dist", "rho", "diverged"});
  for (std::size_t i = 0; i < grid.alphas.size(); ++i)
    for (std::size_t j = 0; j < grid.betas.size(); ++j) {
      const SweepCell& c = grid.cell(i, j);
      csv << grid.alphas[i] << grid.betas[j] << c.log10_final_dist << c.rho
          << static_cast<std::size_t>(c.diverged ? 1 : 0);
      csv.end_row();
    }
  csv.close();
}

void write_samples_csv(const std::filesystem::path& path, const Matrix& samples) {
  CsvWriter csv(path, {"x", "y"});
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    csv << samples(i, 0) << samples(i, 1);
    csv.end_row();
  }
  csv.close();
}

}  // namespace cg::cli
