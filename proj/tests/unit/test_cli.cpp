#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cg/cli.hpp"

using namespace cg;
using namespace cg::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  Options options(const std::string& command, const fs::path& config, const std::string& out = "out") {
    Options o;
    o.command = command;
    o.config = config;
    o.out = dir_ / out;
    return o;
  }

  json manifest(const std::string& out = "out") { return read_json_file(dir_ / out / "manifest.json"); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

const char* kScalarAca = R"({"game": {"A": [[1]]}, "optimizer": {"method": "GradACA", "alpha": 0.1, "beta": 0.3},
  "steps": 500, "start": {"theta": [1], "phi": [1]}, "reference": "stationary"})";

}  // namespace

TEST(Override, DottedPaths) {
  json c = {{"optimizer", {{"alpha", 0.1}}}};
  apply_override(c, "optimizer.alpha=0.2");
  apply_override(c, "grid.n=4");
  apply_override(c, "name=plain text");
  EXPECT_EQ(c["optimizer"]["alpha"], 0.2);
  EXPECT_EQ(c["grid"]["n"], 4);
  EXPECT_EQ(c["name"], "plain text");
  EXPECT_THROW(apply_override(c, "novalue"), ConfigError);
}

TEST(Csv, Escaping) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(StepConfigJson, RoundTrip) {
  StepConfig c = StepConfig::symmetric(Method::GradACA, 5e-4, 0.5);
  c.base = Base::RMSProp;
  EXPECT_EQ(parse_step_config(to_json(c)), c);
  EXPECT_THROW(parse_step_config(json{{"method", "GradACA"}, {"alpah", 0.1}}), ConfigError);
}

TEST(TrainConfigJson, RoundTrip) {
  const TrainConfig c = TrainConfig::desk();
  const TrainConfig r = parse_train_config(to_json(c));
  EXPECT_EQ(r.nets, c.nets);
  EXPECT_EQ(r.optimizer, c.optimizer);
  EXPECT_EQ(r.checkpoint_steps, c.checkpoint_steps);
  EXPECT_EQ(r.seed, c.seed);
}

TEST_F(CliTest, BilinearRunConverges) {
  EXPECT_EQ(run_command(options("bilinear-run", write("c.json", kScalarAca))), kExitOk);
  const json m = manifest();
  EXPECT_LT(m["outcome"]["final_delta"].get<double>(), 1e-6);
  EXPECT_TRUE(m["error"].is_null());
  const std::string csv = slurp(dir_ / "out" / "trajectory.csv");
  EXPECT_EQ(csv.rfind("step,theta_0,phi_0,delta,grad_norm,step_time_s\r\n", 0), 0u);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "spectral_report.json"));
}

TEST_F(CliTest, BilinearRunSimGdDiverges) {
  std::string cfg = kScalarAca;
  cfg.replace(cfg.find("GradACA"), 7, "SimGD");
  EXPECT_EQ(run_command(options("bilinear-run", write("c.json", cfg))), kExitDiverged);
  EXPECT_TRUE(manifest()["outcome"]["diverged"].get<bool>());
}

TEST_F(CliTest, MissingOptimizerNamesKey) {
  const auto p = write("c.json", R"({"game": {"A": [[1]]}})");
  EXPECT_EQ(run_command(options("bilinear-run", p)), kExitError);
  const json m = manifest();
  EXPECT_NE(m["error"].get<std::string>().find("optimizer"), std::string::npos);
}

TEST_F(CliTest, MalformedJsonReportsPosition) {
  const auto p = write("c.json", "{\n  \"game\": [1,\n}");
  try {
    read_json_file(p);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("c.json:3:"), std::string::npos) << e.what();
  }
  EXPECT_EQ(run_command(options("sweep", p)), kExitError);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "manifest.json"));
}

TEST_F(CliTest, SweepSmoke) {
  const auto p = write("c.json", R"({"method": "GradACA", "grid": {"n": 2}, "steps": 50,
                                    "start": {"theta": [1], "phi": [1]}})");
  EXPECT_EQ(run_command(options("sweep", p)), kExitOk);
  const std::string csv = slurp(dir_ / "out" / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(CliTest, SeedOverrideIsRecordedAndDeterministic) {
  const auto p = write("c.json", R"({"game": {"A": [[1, 0.5], [0, 1]]}, "optimizer": {"method": "GradSCA",
                                    "alpha": 0.1, "beta": 0.3}, "steps": 40})");
  Options a = options("bilinear-run", p, "a"), b = options("bilinear-run", p, "b"), c = options("bilinear-run", p, "c");
  a.seed = b.seed = 5;
  c.seed = 6;
  ASSERT_EQ(run_command(a), kExitOk);
  ASSERT_EQ(run_command(b), kExitOk);
  ASSERT_EQ(run_command(c), kExitOk);
  EXPECT_EQ(manifest("a")["seed"], 5);
  EXPECT_EQ(manifest("a")["config"]["start"], manifest("b")["config"]["start"]);
  EXPECT_NE(manifest("a")["config"]["start"], manifest("c")["config"]["start"]);
}

TEST_F(CliTest, SpectraEntries) {
  const auto p = write("c.json", R"({"entries": [
      {"name": "omd", "A": [[1]], "optimizer": {"method": "OMD", "alpha": 0.1}},
      {"name": "outside", "A": [[1]], "optimizer": {"method": "GradSCA", "alpha": 0.5, "beta": 0.1}}]})");
  EXPECT_EQ(run_command(options("spectra", p)), kExitOk);
  const json s = read_json_file(dir_ / "out" / "spectra.json");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0]["rho"].get<double>(), 0.994936, 1e-6);
  EXPECT_NEAR(s[0]["bound"].get<double>(), 0.998746, 1e-6);
  EXPECT_EQ(s[0]["region_ok"], true);
  EXPECT_EQ(s[1]["region_ok"], false);
  EXPECT_GT(s[1]["rho"].get<double>(), 0.0);
}

TEST_F(CliTest, BenchRejectsEmptyMethodList) {
  EXPECT_EQ(run_command(options("bench", write("c.json", R"({"methods": []})"))), kExitError);
}

TEST_F(CliTest, GanTrainConOptIsCapabilityError) {
  const auto p = write("c.json", R"({"optimizer": {"method": "ConOpt", "alpha": 1e-4}})");
  EXPECT_EQ(run_command(options("gan-train", p)), kExitError);
  EXPECT_NE(manifest()["error"].get<std::string>().find("Jacobian"), std::string::npos);
}

TEST_F(CliTest, GanTrainSmallRunIsReproducible) {
  const auto p = write("c.json", R"({"optimizer": {"method": "GradACA", "alpha": 5e-4, "beta": 0.5,
      "base": "rmsprop"}, "generator": {"hidden": [8]}, "discriminator": {"hidden": [8]}, "noise_dim": 4,
      "batch_size": 16, "iterations": 20, "checkpoints": [10, 20], "eval_samples": 80})");
  ASSERT_EQ(run_command(options("gan-train", p, "a")), kExitOk);
  ASSERT_EQ(run_command(options("gan-train", p, "b")), kExitOk);
  for (const char* f : {"metrics.json", "losses_RMSProp-ACA.csv", "samples_RMSProp-ACA_20.csv", "ground_truth.csv",
                        "generator_RMSProp-ACA.ckpt"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  const Checkpoint ck = read_checkpoint(dir_ / "a" / "generator_RMSProp-ACA.ckpt");
  EXPECT_EQ(ck.step, 20u);
}

TEST_F(CliTest, UnknownCommand) { EXPECT_EQ(run_command(options("nope", dir_ / "x.json")), kExitError); }
