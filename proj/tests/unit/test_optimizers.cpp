#include <gtest/gtest.h>

#include <cmath>

#include "cg/errors.hpp"
#include "cg/optimizers.hpp"
#include "gen.hpp"

using namespace cg;
using cg::testing::Gen;

namespace {

const BilinearGameModel kScalar{scalar_game()};

OptimizerState run(const Game& g, const StepConfig& cfg, JointPoint start, int steps) {
  OptimizerState s = init_state(g, std::move(start));
  for (int t = 0; t < steps; ++t) s = step(g, s, cfg);
  return s;
}

double max_gap(const JointPoint& a, const JointPoint& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.theta.size(); ++i) m = std::max(m, std::abs(a.theta[i] - b.theta[i]));
  for (std::size_t j = 0; j < a.phi.size(); ++j) m = std::max(m, std::abs(a.phi[j] - b.phi[j]));
  return m;
}

// Zero gradient everywhere.
class FlatGame final : public Game {
 public:
  std::size_t theta_dim() const override { return 2; }
  std::size_t phi_dim() const override { return 1; }
  Vector grad_theta(const JointPoint&) const override { return {0, 0}; }
  Vector grad_phi(const JointPoint&) const override { return {0}; }
};

}  // namespace

TEST(GradSca, WorkedSteps) {
  const StepConfig cfg = StepConfig::symmetric(Method::GradSCA, 0.1, 0.3);
  const OptimizerState s1 = run(kScalar, cfg, {{1}, {1}}, 1);
  EXPECT_NEAR(s1.current.theta[0], 0.9, 1e-15);
  EXPECT_NEAR(s1.current.phi[0], 1.1, 1e-15);
  const OptimizerState s2 = grad_sca_step(kScalar, s1, cfg);
  EXPECT_NEAR(s2.current.theta[0], 0.76, 1e-14);
  EXPECT_NEAR(s2.current.phi[0], 1.16, 1e-14);
}

TEST(GradAca, WorkedSteps) {
  const StepConfig cfg = StepConfig::symmetric(Method::GradACA, 0.1, 0.3);
  const OptimizerState s1 = run(kScalar, cfg, {{1}, {1}}, 1);
  EXPECT_NEAR(s1.current.theta[0], 0.9, 1e-15);
  EXPECT_NEAR(s1.current.phi[0], 1.09, 1e-15);
  const OptimizerState s2 = grad_aca_step(kScalar, s1, cfg);
  EXPECT_NEAR(s2.current.theta[0], 0.764, 1e-14);
  EXPECT_NEAR(s2.current.phi[0], 1.1256, 1e-14);
}

TEST(Omd, WorkedSteps) {
  const StepConfig cfg = StepConfig::omd(0.1);
  const OptimizerState s2 = run(kScalar, cfg, {{1}, {1}}, 2);
  EXPECT_NEAR(s2.current.theta[0], 0.78, 1e-14);
  EXPECT_NEAR(s2.current.phi[0], 1.18, 1e-14);
}

TEST(ConOpt, WorkedStep) {
  StepConfig cfg = StepConfig::symmetric(Method::ConOpt, 0.1);
  cfg.conopt_gamma = 1.0;
  const OptimizerState s1 = run(kScalar, cfg, {{1}, {1}}, 1);
  EXPECT_NEAR(s1.current.theta[0], 0.8, 1e-15);
  EXPECT_NEAR(s1.current.phi[0], 1.0, 1e-15);
}

TEST(ConOpt, ZeroGammaIsSimGd) {
  StepConfig cfg = StepConfig::symmetric(Method::ConOpt, 0.1);
  cfg.conopt_gamma = 0.0;
  const auto a = run(kScalar, cfg, {{1}, {1}}, 30);
  const auto b = run(kScalar, StepConfig::symmetric(Method::SimGD, 0.1), {{1}, {1}}, 30);
  EXPECT_LE(max_gap(a.current, b.current), 1e-15);
}

TEST(Sga, ZeroLambdaIsSimGd) {
  StepConfig cfg = StepConfig::symmetric(Method::SGA, 0.1);
  cfg.sga_lambda = 0.0;
  const auto a = run(kScalar, cfg, {{1}, {1}}, 30);
  const auto b = run(kScalar, StepConfig::symmetric(Method::SimGD, 0.1), {{1}, {1}}, 30);
  EXPECT_LE(max_gap(a.current, b.current), 1e-15);
}

TEST(JacobianMethods, NeedCapability) {
  FlatGame flat;
  EXPECT_THROW(step(flat, init_state(flat, {{0, 0}, {0}}), StepConfig::symmetric(Method::ConOpt, 0.1)),
               CapabilityError);
  EXPECT_THROW(step(flat, init_state(flat, {{0, 0}, {0}}), StepConfig::symmetric(Method::SGA, 0.1)),
               CapabilityError);
}

TEST(FixedPoints, StationaryAndFlat) {
  FlatGame flat;
  const JointPoint x{{0.3, -2}, {5}};
  for (Method m : {Method::SimGD, Method::AltGD, Method::GradSCA, Method::GradACA, Method::OMD,
                   Method::PastExtrapolation}) {
    const StepConfig cfg = m == Method::OMD ? StepConfig::omd(0.1) : StepConfig::symmetric(m, 0.1, 0.2);
    EXPECT_EQ(run(flat, cfg, x, 10).current, x) << to_string(m);
  }
  for (Method m : {Method::ConOpt, Method::SGA}) {
    const StepConfig cfg = StepConfig::symmetric(m, 0.1);
    EXPECT_EQ(run(kScalar, cfg, {{0}, {0}}, 10).current, (JointPoint{{0}, {0}})) << to_string(m);
  }
}

TEST(Divergence, CarriesLastFiniteState) {
  class Blowup final : public Game {
   public:
    std::size_t theta_dim() const override { return 1; }
    std::size_t phi_dim() const override { return 1; }
    Vector grad_theta(const JointPoint& x) const override {
      return {x.theta[0] < 0.5 ? std::nan("") : 1.0};
    }
    Vector grad_phi(const JointPoint&) const override { return {0.0}; }
  } g;
  OptimizerState s = init_state(g, {{1}, {0}});
  const StepConfig cfg = StepConfig::symmetric(Method::SimGD, 0.3);
  s = step(g, s, cfg);
  s = step(g, s, cfg);
  try {
    step(g, s, cfg);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.last_finite().current, s.current);
  }
}

TEST(PastExtrapolation, FirstStepIsPlainGd) {
  const auto a = run(kScalar, StepConfig::symmetric(Method::PastExtrapolation, 0.1), {{1}, {1}}, 1);
  const auto b = run(kScalar, StepConfig::symmetric(Method::SimGD, 0.1), {{1}, {1}}, 1);
  EXPECT_LE(max_gap(a.half_point, b.current), 1e-15);
}

class Reductions : public ::testing::TestWithParam<int> {};

TEST_P(Reductions, HoldOnRandomGames) {
  Gen gen(100 + GetParam());
  const std::size_t d = gen.index(1, 4), p = gen.index(1, 4);
  const BilinearGameModel g(BilinearGame(gen.matrix(d, p), gen.vector(d), gen.vector(p)));
  const JointPoint x0 = gen.point(d, p);
  const double alpha = gen.uniform(0.01, 0.2);

  OptimizerState sca = init_state(g, x0), sim = sca, aca = sca, alt = sca, omd = sca, sca_eq = sca, pe = sca;
  const StepConfig sca0 = StepConfig::symmetric(Method::GradSCA, alpha, 0.0);
  const StepConfig aca0 = StepConfig::symmetric(Method::GradACA, alpha, 0.0);
  const StepConfig scaeq = StepConfig::symmetric(Method::GradSCA, alpha, alpha);
  for (int t = 0; t < 100; ++t) {
    sca = step(g, sca, sca0);
    sim = step(g, sim, StepConfig::symmetric(Method::SimGD, alpha));
    aca = step(g, aca, aca0);
    alt = step(g, alt, StepConfig::symmetric(Method::AltGD, alpha));
    sca_eq = step(g, sca_eq, scaeq);
    omd = step(g, omd, StepConfig::omd(alpha));
    pe = step(g, pe, StepConfig::symmetric(Method::PastExtrapolation, alpha));
    ASSERT_LE(max_gap(sca.current, sim.current), 1e-12);
    ASSERT_LE(max_gap(aca.current, alt.current), 1e-12);
    ASSERT_LE(max_gap(sca_eq.current, omd.current), 1e-12);
    ASSERT_LE(max_gap(pe.half_point, omd.current), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, Reductions, ::testing::Range(0, 10));

TEST(RmsProp, WorkedTransform) {
  const Vector g{1.0}, cache{0.0};
  const RmsPropStep r = rmsprop_transform(g, cache, 0.9, 0.001, 0.0);
  EXPECT_NEAR(r.cache[0], 0.1, 1e-16);
  EXPECT_NEAR(r.step[0], 0.001 / std::sqrt(0.1), 1e-15);
  EXPECT_NEAR(r.step[0], 0.0031623, 1e-7);
}

TEST(RmsProp, ZeroGradientDecaysCache) {
  const Vector g{0.0}, cache{0.5};
  const RmsPropStep r = rmsprop_transform(g, cache, 0.9, 0.001, 1e-8);
  EXPECT_EQ(r.step[0], 0.0);
  EXPECT_NEAR(r.cache[0], 0.45, 1e-16);
}

TEST(RmsProp, ConstantGradientApproachesSignStep) {
  Vector cache{0.0, 0.0};
  const Vector g{3.0, -0.2};
  RmsPropStep r;
  for (int t = 0; t < 400; ++t) {
    r = rmsprop_transform(g, cache, 0.9, 0.01, 1e-8);
    cache = r.cache;
  }
  EXPECT_NEAR(r.step[0], 0.01, 1e-8);
  EXPECT_NEAR(r.step[1], -0.01, 1e-8);
}

TEST(Composed, IdentityBaseMatchesUnwrapped) {
  const StepConfig cfg = StepConfig::symmetric(Method::GradSCA, 0.1, 0.3);
  const OptimizerState s = init_state(kScalar, {{1}, {1}});
  EXPECT_EQ(composed_step(kScalar, s, cfg).current, grad_sca_step(kScalar, s, cfg).current);
}

TEST(Composed, ZeroBetaIsPlainRmsProp) {
  Gen gen(31);
  const BilinearGameModel g(BilinearGame(gen.matrix(3, 2)));
  for (auto [acc, plain] : {std::pair{Method::GradSCA, Method::SimGD}, std::pair{Method::GradACA, Method::AltGD}}) {
    StepConfig a = StepConfig::symmetric(acc, 0.01, 0.0), b = StepConfig::symmetric(plain, 0.01);
    a.base = b.base = Base::RMSProp;
    const JointPoint x0 = gen.point(3, 2);
    EXPECT_LE(max_gap(run(g, a, x0, 50).current, run(g, b, x0, 50).current), 1e-12);
  }
}

TEST(Composed, WorkedScaRmsPropStep) {
  StepConfig cfg = StepConfig::symmetric(Method::GradSCA, 0.001, 0.3);
  cfg.base = Base::RMSProp;
  const OptimizerState s1 = run(kScalar, cfg, {{1}, {1}}, 1);
  const Vector one{1.0}, zero{0.0};
  const double expected = rmsprop_transform(one, zero, 0.9, 0.001, 1e-8).step[0];
  EXPECT_NEAR(s1.current.theta[0], 1 - expected, 1e-15);
  EXPECT_NEAR(1 - s1.current.theta[0], 0.0031623, 1e-7);
}

TEST(Composed, UnsupportedCombination) {
  StepConfig cfg = StepConfig::symmetric(Method::ConOpt, 0.1);
  cfg.base = Base::RMSProp;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(step(kScalar, init_state(kScalar, {{1}, {1}}), cfg), ConfigError);
}

TEST(StepConfig, Validation) {
  EXPECT_THROW(StepConfig::symmetric(Method::SimGD, 0.0).validate(), ConfigError);
  StepConfig omd = StepConfig::omd(0.1);
  omd.beta1 = 0.2;
  EXPECT_THROW(omd.validate(), ConfigError);
  EXPECT_THROW(parse_method("Adam"), ConfigError);
  EXPECT_EQ(parse_method("GradACA"), Method::GradACA);
}

TEST(Trajectory, DeterministicBitwise) {
  Gen gen(44);
  const BilinearGameModel g(BilinearGame(gen.matrix(3, 3)));
  const JointPoint x0 = gen.point(3, 3), ref{{0, 0, 0}, {0, 0, 0}};
  StepConfig cfg = StepConfig::symmetric(Method::GradACA, 0.05, 0.2);
  for (Base b : {Base::Identity, Base::RMSProp}) {
    cfg.base = b;
    const Trajectory t1 = run_trajectory(g, cfg, x0, 200, ref), t2 = run_trajectory(g, cfg, x0, 200, ref);
    EXPECT_EQ(t1.points, t2.points);
    EXPECT_EQ(t1.deltas, t2.deltas);
    EXPECT_EQ(t1.grad_norms, t2.grad_norms);
  }
}

TEST(Trajectory, RecordsStartAndDistances) {
  const Trajectory t = run_trajectory(kScalar, StepConfig::symmetric(Method::AltGD, 0.1), {{1}, {1}}, 5,
                                      {{0}, {0}});
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(t.points[0], (JointPoint{{1}, {1}}));
  EXPECT_EQ(t.deltas[0], 2.0);
  EXPECT_EQ(t.step_times[0], 0.0);
  EXPECT_NEAR(t.grad_norms[0], std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(t.diverged);
}

TEST(Trajectory, GuardStopsRunaway) {
  const Trajectory t =
      run_trajectory(kScalar, StepConfig::symmetric(Method::SimGD, 1.0), {{1}, {1}}, 1000, {{0}, {0}});
  EXPECT_TRUE(t.diverged);
  EXPECT_LT(t.size(), 1001u);
}

TEST(Trajectory, FixedOriginStaysPut) {
  for (Method m : {Method::SimGD, Method::AltGD, Method::GradSCA, Method::GradACA}) {
    const Trajectory t =
        run_trajectory(kScalar, StepConfig::symmetric(m, 0.1, 0.3), {{0}, {0}}, 50, {{0}, {0}});
    for (double d : t.deltas) EXPECT_EQ(d, 0.0);
  }
}
