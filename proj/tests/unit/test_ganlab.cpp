#include <gtest/gtest.h>

#include <cmath>

#include "cg/errors.hpp"
#include "cg/ganlab.hpp"

using namespace cg;

namespace {

TrainConfig small_config(Method m, double beta = 0.5) {
  TrainConfig cfg = TrainConfig::desk(16, 1);
  cfg.noise_dim = 4;
  cfg.nets.gen.input_dim = 4;
  cfg.optimizer = StepConfig::symmetric(m, 5e-4, beta);
  cfg.optimizer.base = Base::RMSProp;
  cfg.batch_size = 32;
  cfg.iterations = 60;
  cfg.checkpoint_steps = {30, 60};
  cfg.eval_samples = 160;
  return cfg;
}

}  // namespace

TEST(Mixture, RingGeometry) {
  const MixtureSpec m = MixtureSpec::ring();
  ASSERT_EQ(m.centers.size(), 8u);
  EXPECT_DOUBLE_EQ(m.centers[0][0], 2.0);
  EXPECT_DOUBLE_EQ(m.centers[0][1], 0.0);
  for (const auto& c : m.centers) EXPECT_NEAR(std::hypot(c[0], c[1]), 2.0, 1e-15);
}

TEST(Mixture, TinyStdLandsOnCenters) {
  const MixtureSpec m = MixtureSpec::ring(8, 2.0, 1e-300);
  const Matrix x = sample_real(m, 100, std::uint64_t{3});
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double nearest = 1e9;
    for (const auto& c : m.centers) nearest = std::min(nearest, std::hypot(x(i, 0) - c[0], x(i, 1) - c[1]));
    EXPECT_LT(nearest, 1e-250);
  }
}

TEST(Mixture, ModeCountsBinomial) {
  const MixtureSpec m = MixtureSpec::ring();
  const Matrix x = sample_real(m, 8000, std::uint64_t{11});
  const GanMetrics e = evaluate(x, m, 1);
  const double sd = std::sqrt(8000 * 0.125 * 0.875);
  std::size_t total = 0;
  for (std::size_t c : e.per_mode_counts) {
    EXPECT_NEAR(static_cast<double>(c), 1000.0, 3 * sd + 15);
    total += c;
  }
  EXPECT_GT(total, 7800u);
}

TEST(Mixture, Deterministic) {
  const MixtureSpec m = MixtureSpec::ring();
  EXPECT_EQ(sample_real(m, 50, std::uint64_t{4}), sample_real(m, 50, std::uint64_t{4}));
  EXPECT_THROW(MixtureSpec::ring(8, 2.0, 0.0).validate(), ConfigError);
}

TEST(Evaluate, SingleCenter) {
  const MixtureSpec m = MixtureSpec::ring();
  Matrix x(100, 2);
  for (std::size_t i = 0; i < 100; ++i) x(i, 0) = 2.0;
  const GanMetrics e = evaluate(x, m, 10);
  EXPECT_EQ(e.mode_coverage, 1u);
  EXPECT_DOUBLE_EQ(e.high_quality_fraction, 1.0);
}

TEST(Evaluate, GroundTruthCovered) {
  const MixtureSpec m = MixtureSpec::ring();
  const GanMetrics e = evaluate(sample_real(m, 2560, std::uint64_t{9}), m, 32);
  EXPECT_EQ(e.mode_coverage, 8u);
  EXPECT_GE(e.high_quality_fraction, 0.98);
}

TEST(Evaluate, OriginCoversNothing) {
  const GanMetrics e = evaluate(Matrix(64, 2), MixtureSpec::ring(), 1);
  EXPECT_EQ(e.mode_coverage, 0u);
  EXPECT_EQ(e.high_quality_fraction, 0.0);
  EXPECT_DOUBLE_EQ(e.mean_min_center_distance, 2.0);
}

TEST(Evaluate, PermutationInvariant) {
  const MixtureSpec m = MixtureSpec::ring();
  const Matrix x = sample_real(m, 300, std::uint64_t{2});
  Matrix rev(300, 2);
  for (std::size_t i = 0; i < 300; ++i) {
    rev(i, 0) = x(299 - i, 0);
    rev(i, 1) = x(299 - i, 1);
  }
  const GanMetrics a = evaluate(x, m, 5), b = evaluate(rev, m, 5);
  EXPECT_EQ(a.mode_coverage, b.mode_coverage);
  EXPECT_EQ(a.per_mode_counts, b.per_mode_counts);
  EXPECT_NEAR(a.mean_min_center_distance, b.mean_min_center_distance, 1e-12);
}

TEST(GanGame, NeedsBatch) {
  const TrainConfig cfg = small_config(Method::GradACA);
  GanGame g(cfg.nets);
  const JointPoint x{init_params(cfg.nets.gen, 1), init_params(cfg.nets.disc, 2)};
  EXPECT_THROW(g.grad_theta(x), StateError);
  EXPECT_FALSE(g.has_jacobian());
}

TEST(Train, Deterministic) {
  const TrainConfig cfg = small_config(Method::GradACA);
  const TrainResult a = train(cfg), b = train(cfg);
  ASSERT_FALSE(a.failed);
  EXPECT_EQ(a.losses, b.losses);
  EXPECT_EQ(a.final_params, b.final_params);
  ASSERT_EQ(a.checkpoints.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(a.checkpoints[k].samples, b.checkpoints[k].samples);
    EXPECT_EQ(a.checkpoints[k].metrics, b.checkpoints[k].metrics);
  }
  for (double l : a.losses) EXPECT_TRUE(std::isfinite(l));
}

TEST(Train, ZeroBetaAcaIsAlternatingRmsProp) {
  const TrainResult aca = train(small_config(Method::GradACA, 0.0));
  const TrainResult alt = train(small_config(Method::AltGD, 0.0));
  ASSERT_EQ(aca.losses.size(), alt.losses.size());
  for (std::size_t t = 0; t < aca.losses.size(); ++t) EXPECT_NEAR(aca.losses[t], alt.losses[t], 1e-12);
  for (std::size_t i = 0; i < aca.final_params.theta.size(); ++i)
    EXPECT_NEAR(aca.final_params.theta[i], alt.final_params.theta[i], 1e-12);
}

TEST(Train, SeedsDifferAcrossRuns) {
  TrainConfig a = small_config(Method::GradACA), b = a;
  b.seed = a.seed + 1;
  EXPECT_NE(train(a).losses, train(b).losses);
}

TEST(Train, JacobianMethodsRejected) {
  TrainConfig cfg = small_config(Method::GradACA);
  cfg.optimizer = StepConfig::symmetric(Method::ConOpt, 1e-4);
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Train, GeneratedSamplesMatchCheckpoint) {
  const TrainConfig cfg = small_config(Method::GradSCA);
  const TrainResult r = train(cfg);
  EXPECT_EQ(generate_samples(cfg, r.final_params.theta, 60), r.checkpoints.back().samples);
}

TEST(Timing, SummaryExcludesWarmup) {
  Vector t(60, 1.0);
  for (std::size_t i = 50; i < 60; ++i) t[i] = 2.0;
  const TimingSummary s = summarize_times(t);
  EXPECT_EQ(s.measured, 10u);
  EXPECT_DOUBLE_EQ(s.mean_s, 2.0);
  EXPECT_DOUBLE_EQ(s.stddev_s, 0.0);
}

TEST(Timing, SingleConfigTable) {
  const auto rows = timing_compare({small_config(Method::GradACA)}, 60);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].label, "RMSProp-ACA");
  EXPECT_EQ(rows[0].summary.measured, 10u);
}

TEST(Timing, MismatchedWorkloadsRejected) {
  TrainConfig a = small_config(Method::GradACA), b = small_config(Method::SimGD);
  b.batch_size = 64;
  EXPECT_THROW(timing_compare({a, b}, 60), PreconditionError);
}

TEST(Labels, PaperNames) {
  StepConfig c = StepConfig::symmetric(Method::SimGD, 1e-3);
  c.base = Base::RMSProp;
  EXPECT_EQ(method_label(c), "RMSProp");
  c.method = Method::AltGD;
  EXPECT_EQ(method_label(c), "RMSProp-alt");
  c.method = Method::GradACA;
  EXPECT_EQ(method_label(c), "RMSProp-ACA");
  c.base = Base::Identity;
  EXPECT_EQ(method_label(c), "GradACA");
}

// Desk-scale reference: RMSProp-ACA, 2x64 nets, batch 256, 4000 iterations, seed 17.
TEST(DeskScale, AcaCompletesAndCoversAMode) {
  const TrainConfig cfg = TrainConfig::desk();
  const TrainResult r = train(cfg);
  ASSERT_FALSE(r.failed) << r.failure;
  for (double l : r.losses) ASSERT_TRUE(std::isfinite(l));
  EXPECT_GE(r.checkpoints.back().metrics.mode_coverage, 1u);
}
