#include "cg/spectra.hpp"

namespace cg {

Matrix build_f1(const Matrix& a, const StepConfig& cfg) {
  const std::size_t d = a.rows(), p = a.cols(), n = d + p;
  const Matrix at = a.transpose();
  const Matrix id = Matrix::identity(d), ip = Matrix::identity(p);
  Matrix f(2 * n, 2 * n);
  f.set_block(0, 0, id);
  f.set_block(0, d, a, -(cfg.alpha1 + cfg.beta1));
  f.set_block(0, n + d, a, cfg.beta1);
  f.set_block(d, 0, at, cfg.alpha2 + cfg.beta2);
  f.set_block(d, d, ip);
  f.set_block(d, n, at, -cfg.beta2);
  f.set_block(n, 0, id);
  f.set_block(n + d, d, ip);
  return f;
}

Matrix build_f2(const Matrix& a, const StepConfig& cfg) {
  const std::size_t d = a.rows(), p = a.cols(), n = d + p;
  const Matrix at = a.transpose();
  const Matrix ata = at * a;
  const double s1 = cfg.alpha1 + cfg.beta1, s2 = cfg.alpha2 + cfg.beta2;
  Matrix f(2 * n, 2 * n);
  f.set_block(0, 0, Matrix::identity(d));
  f.set_block(0, d, a, -s1);
  f.set_block(0, n + d, a, cfg.beta1);
  f.set_block(d, 0, at, cfg.alpha2);
  f.set_block(d, d, Matrix::identity(p) - (s1 * s2) * ata);
  f.set_block(d, n + d, ata, s2 * cfg.beta1);
  f.set_block(n, 0, Matrix::identity(d));
  f.set_block(n + d, d, Matrix::identity(p));
  return f;
}

Matrix build_f2_reduced(const Matrix& a, double alpha) {
  const std::size_t d = a.rows(), p = a.cols();
  const Matrix at = a.transpose();
  Matrix f(d + p, d + p);
  f.set_block(0, 0, Matrix::identity(d));
  f.set_block(0, d, a, -alpha);
  f.set_block(d, 0, at, alpha);
  f.set_block(d, d, Matrix::identity(p) - (2.0 * alpha * alpha) * (at * a));
  return f;
}

bool aca_special_case(const StepConfig& cfg) {
  return cfg.beta1 == 0.0 && cfg.alpha1 == cfg.alpha2 && cfg.beta2 == cfg.alpha1;
}

}  // namespace cg
