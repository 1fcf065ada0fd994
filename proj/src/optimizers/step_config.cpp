#include <array>
#include <cmath>
#include <utility>

#include "cg/optimizers.hpp"

namespace cg {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 8> kMethodNames{{
    {Method::SimGD, "SimGD"},
    {Method::AltGD, "AltGD"},
    {Method::GradSCA, "GradSCA"},
    {Method::GradACA, "GradACA"},
    {Method::OMD, "OMD"},
    {Method::PastExtrapolation, "PastExtrapolation"},
    {Method::ConOpt, "ConOpt"},
    {Method::SGA, "SGA"},
}};

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [method, name] : kMethodNames)
    if (method == m) return name;
  return "unknown";
}

std::string_view to_string(Base b) { return b == Base::Identity ? "identity" : "rmsprop"; }

Method parse_method(std::string_view name) {
  for (const auto& [method, n] : kMethodNames)
    if (n == name) return method;
  std::string known;
  for (const auto& entry : kMethodNames) known += (known.empty() ? "" : ", ") + std::string(entry.second);
  throw ConfigError("unknown method '" + std::string(name) + "' (expected one of " + known + ")");
}

Base parse_base(std::string_view name) {
  if (name == "identity" || name == "Identity") return Base::Identity;
  if (name == "rmsprop" || name == "RMSProp") return Base::RMSProp;
  throw ConfigError("unknown base transform '" + std::string(name) + "' (expected identity or rmsprop)");
}

StepConfig StepConfig::symmetric(Method m, double alpha, double beta) {
  StepConfig cfg;
  cfg.method = m;
  cfg.alpha1 = cfg.alpha2 = alpha;
  cfg.beta1 = cfg.beta2 = beta;
  return cfg;
}

StepConfig StepConfig::omd(double alpha) { return symmetric(Method::OMD, alpha, alpha); }

void StepConfig::validate() const {
  if (!positive_finite(alpha1) || !positive_finite(alpha2))
    throw ConfigError("step sizes alpha1/alpha2 must be positive and finite");
  if (!std::isfinite(beta1) || !std::isfinite(beta2))
    throw ConfigError("acceleration coefficients beta1/beta2 must be finite");
  if (method == Method::OMD && !(alpha1 == alpha2 && beta1 == alpha1 && beta2 == alpha1))
    throw ConfigError("OMD requires alpha1 = alpha2 = beta1 = beta2");
  if (base == Base::RMSProp) {
    if (!(rms_decay > 0.0 && rms_decay < 1.0)) throw ConfigError("rmsprop decay must lie in (0, 1)");
    if (!(rms_epsilon >= 0.0) || !std::isfinite(rms_epsilon))
      throw ConfigError("rmsprop epsilon must be finite and nonnegative");
    switch (method) {
      case Method::SimGD:
      case Method::AltGD:
      case Method::GradSCA:
      case Method::GradACA:
      case Method::OMD:
        break;
      default:
        throw ConfigError("base transform rmsprop is not supported with method " +
                          std::string(to_string(method)));
    }
  }
  if (!(conopt_gamma >= 0.0) || !std::isfinite(conopt_gamma))
    throw ConfigError("conopt_gamma must be finite and nonnegative");
  if (!std::isfinite(sga_lambda)) throw ConfigError("sga_lambda must be finite");
}

}  // namespace cg
