#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "cg/autograd.hpp"

namespace cg {
namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  if (ckpt.params.size() != ckpt.spec.param_count())
    throw DimensionError("checkpoint: parameter count does not match spec");
  nlohmann::json header = {
      {"spec", {{"input_dim", ckpt.spec.input_dim}, {"layer_widths", ckpt.spec.layer_widths}}},
      {"seed", ckpt.seed},
      {"step", ckpt.step},
      {"count", ckpt.params.size()},
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << header.dump() << '\n';
  for (double v : ckpt.params) {
    const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(v));
    char buf[8];
    std::memcpy(buf, &bits, 8);
    out.write(buf, 8);
  }
  if (!out) throw Error("failed writing " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + ": missing checkpoint header");

  Checkpoint ckpt;
  std::size_t count = 0;
  try {
    const auto header = nlohmann::json::parse(line);
    ckpt.spec.input_dim = header.at("spec").at("input_dim").get<std::size_t>();
    ckpt.spec.layer_widths = header.at("spec").at("layer_widths").get<std::vector<std::size_t>>();
    ckpt.seed = header.at("seed").get<std::uint64_t>();
    ckpt.step = header.at("step").get<std::size_t>();
    count = header.at("count").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": bad checkpoint header: " + e.what());
  }
  if (count != ckpt.spec.param_count()) throw DimensionError(path.string() + ": count does not match spec");

  ckpt.params.resize(count);
  for (double& v : ckpt.params) {
    char buf[8];
    if (!in.read(buf, 8)) throw Error(path.string() + ": truncated checkpoint");
    std::uint64_t bits;
    std::memcpy(&bits, buf, 8);
    v = std::bit_cast<double>(to_little_endian(bits));
  }
  return ckpt;
}

}  // namespace cg
