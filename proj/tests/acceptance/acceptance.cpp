#include <chrono>
#include <cstdio>
#include <iostream>
#include <unistd.h>

#include <CLI11.hpp>

#include "criteria.hpp"

namespace fs = std::filesystem;
using cg::acceptance::Criterion;
using cg::acceptance::Outcome;

namespace {

bool run_one(const Criterion& c, const fs::path& scratch_root) {
  const fs::path scratch = scratch_root / ("criterion_" + std::to_string(c.number));
  fs::create_directories(scratch);
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = c.run(scratch);
  } catch (const std::exception& e) {
    out.check(false, std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.budget_s > 0)
    out.check(elapsed < c.budget_s, "runtime " + std::to_string(elapsed) + " s, budget " +
                                        std::to_string(c.budget_s) + " s");
  for (const auto& line : out.lines) std::cout << "    " << line << '\n';
  std::printf("criterion %2d %s  %-52s %8.2f s\n", c.number, out.pass ? "PASS" : "FAIL", c.title.c_str(), elapsed);
  std::fflush(stdout);
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  int only = 0;
  bool keep = false;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_flag("--keep", keep, "Keep the scratch directory");
  CLI11_PARSE(app, argc, argv);

  const fs::path scratch = fs::temp_directory_path() / ("cg_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(scratch);

  int failed = 0, ran = 0;
  for (const Criterion& c : cg::acceptance::criteria()) {
    if (only != 0 && c.number != only) continue;
    ++ran;
    if (!run_one(c, scratch)) ++failed;
  }
  if (!keep) fs::remove_all(scratch);
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
