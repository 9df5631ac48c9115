#include "kbsim/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace kbsim {

KernelSpec KernelSpec::squared_exponential(double lengthscale) {
  if (!(lengthscale > 0.0))
    throw std::invalid_argument("kernel: lengthscale must be positive");
  KernelSpec k;
  k.family = Family::SquaredExponential;
  k.lengthscale = lengthscale;
  return k;
}

KernelSpec KernelSpec::matern(double smoothness, double lengthscale) {
  if (!(lengthscale > 0.0))
    throw std::invalid_argument("kernel: lengthscale must be positive");
  if (smoothness != 0.5 && smoothness != 1.5 && smoothness != 2.5)
    throw std::invalid_argument("kernel: Matern smoothness must be 0.5, 1.5 or 2.5");
  KernelSpec k;
  k.family = Family::Matern;
  k.lengthscale = lengthscale;
  k.smoothness = smoothness;
  return k;
}

KernelSpec KernelSpec::delta() {
  KernelSpec k;
  k.family = Family::Delta;
  return k;
}

double squared_distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("point dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double kernel_eval(const KernelSpec& k, const Point& x, const Point& y) {
  if (x.dim() != y.dim())
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  switch (k.family) {
    case KernelSpec::Family::SquaredExponential: {
      const double r2 = squared_distance(x, y);
      return std::exp(-r2 / (2.0 * k.lengthscale * k.lengthscale));
    }
    case KernelSpec::Family::Matern: {
      const double r = std::sqrt(squared_distance(x, y));
      const double s = r / k.lengthscale;
      if (k.smoothness == 0.5) return std::exp(-s);
      if (k.smoothness == 1.5) {
        const double a = std::sqrt(3.0) * s;
        return (1.0 + a) * std::exp(-a);
      }
      const double a = std::sqrt(5.0) * s;
      return (1.0 + a + a * a / 3.0) * std::exp(-a);
    }
    case KernelSpec::Family::Delta:
      return bitwise_equal(x, y) ? 1.0 : 0.0;
  }
  throw std::logic_error("kernel_eval: unknown family");
}

Eigen::MatrixXd gram_matrix(const KernelSpec& k, const std::vector<Point>& points) {
  const int m = static_cast<int>(points.size());
  if (m == 0) throw std::invalid_argument("gram_matrix: empty point list");
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    g(i, i) = 1.0;
    for (int j = 0; j < i; ++j) {
      const double v = kernel_eval(k, points[static_cast<std::size_t>(i)],
                                   points[static_cast<std::size_t>(j)]);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

bool psd_check(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("psd_check: matrix must be square");
  if (m.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace kbsim
