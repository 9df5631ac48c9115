#include "kbsim/rkhs.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kbsim/errors.hpp"

namespace kbsim {

namespace {

void check_finite(const Point& p, const char* what) {
  if (p.dim() < 1) {
    std::ostringstream os;
    os << what << ": point dimension must be >= 1";
    throw std::invalid_argument(os.str());
  }
  for (int i = 0; i < p.dim(); ++i) {
    if (!std::isfinite(p[i])) {
      std::ostringstream os;
      os << what << ": coordinate " << i << " is not finite";
      throw std::invalid_argument(os.str());
    }
  }
}

}  // namespace

DecisionSet::DecisionSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2)
    throw std::invalid_argument("decision set: need at least two arms");
  const int d = points_.front().dim();
  for (const auto& p : points_) {
    check_finite(p, "decision set");
    if (p.dim() != d)
      throw std::invalid_argument("decision set: mixed point dimensions");
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (bitwise_equal(points_[i], points_[j]))
        throw std::invalid_argument("decision set: duplicate points");
}

std::optional<int> DecisionSet::index_of(const Point& x) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (bitwise_equal(points_[i], x)) return static_cast<int>(i);
  return std::nullopt;
}

RkhsFunction::RkhsFunction(KernelSpec kernel, std::vector<Point> centers,
                           Eigen::VectorXd weights, double norm_bound)
    : kernel_(kernel),
      centers_(std::move(centers)),
      weights_(std::move(weights)),
      norm_bound_(norm_bound) {
  if (centers_.empty())
    throw std::invalid_argument("rkhs function: need at least one center");
  if (static_cast<Eigen::Index>(centers_.size()) != weights_.size())
    throw std::invalid_argument("rkhs function: centers/weights length mismatch");
  if (!(norm_bound_ > 0.0))
    throw std::invalid_argument("rkhs function: norm bound must be positive");
  const int d = centers_.front().dim();
  for (const auto& c : centers_) {
    check_finite(c, "rkhs function");
    if (c.dim() != d)
      throw std::invalid_argument("rkhs function: mixed center dimensions");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i)
    if (!std::isfinite(weights_[i]))
      throw std::invalid_argument("rkhs function: weight is not finite");
}

double RkhsFunction::value(const Point& x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < centers_.size(); ++i)
    s += weights_[static_cast<Eigen::Index>(i)] * kernel_eval(kernel_, centers_[i], x);
  return s;
}

double RkhsFunction::rkhs_norm() const {
  const Eigen::MatrixXd K = gram_matrix(kernel_, centers_);
  const double q = weights_.dot(K * weights_);
  if (q < -1e-10)
    throw NumericError("rkhs_norm: quadratic form is negative beyond tolerance");
  return std::sqrt(q < 0.0 ? 0.0 : q);
}

RkhsFunction make_bounded_function(const KernelSpec& kernel,
                                   std::vector<Point> centers,
                                   const std::vector<double>& raw_weights,
                                   double B, const DecisionSet& domain) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(raw_weights.size()));
  for (std::size_t i = 0; i < raw_weights.size(); ++i)
    w[static_cast<Eigen::Index>(i)] = raw_weights[i];

  RkhsFunction raw(kernel, std::move(centers), w, B);
  const double norm = raw.rkhs_norm();
  const double scale = (norm > B) ? B / norm : 1.0;
  RkhsFunction f(kernel, raw.centers(), scale * w, B);

  for (int i = 0; i < domain.size(); ++i) {
    const double v = f.value(domain[i]);
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream os;
      os << "make_bounded_function: f out of [0,1] at decision point " << i << " (";
      for (int j = 0; j < domain[i].dim(); ++j)
        os << (j ? "," : "") << domain[i][j];
      os << "), value " << v;
      throw std::invalid_argument(os.str());
    }
  }
  return f;
}

BanditEnvironment::BanditEnvironment(RkhsFunction f, DecisionSet domain,
                                     std::uint64_t rng_seed)
    : f_(std::move(f)), domain_(std::move(domain)), seed_(rng_seed), rng_(rng_seed) {
  values_.reserve(static_cast<std::size_t>(domain_.size()));
  for (int i = 0; i < domain_.size(); ++i) values_.push_back(f_.value(domain_[i]));
  optimum_arm_ = 0;
  for (int i = 1; i < domain_.size(); ++i)
    if (values_[static_cast<std::size_t>(i)] > values_[static_cast<std::size_t>(optimum_arm_)])
      optimum_arm_ = i;
}

int BanditEnvironment::sample_reward(int arm) {
  if (arm < 0 || arm >= domain_.size())
    throw std::invalid_argument("sample_reward: arm index out of range");
  return rng_.next_double() < values_[static_cast<std::size_t>(arm)] ? 1 : 0;
}

int BanditEnvironment::sample_reward(const Point& x, Xoshiro256pp& rng) const {
  const auto idx = domain_.index_of(x);
  if (!idx)
    throw std::invalid_argument("sample_reward: point is not in the decision set");
  return rng.next_double() < values_[static_cast<std::size_t>(*idx)] ? 1 : 0;
}

double BanditEnvironment::cumulative_regret(std::span<const int> arms) const {
  const double best = optimum_value();
  double r = 0.0;
  for (int a : arms) {
    if (a < 0 || a >= domain_.size())
      throw std::invalid_argument("cumulative_regret: arm index out of range");
    r += best - values_[static_cast<std::size_t>(a)];
  }
  return r;
}

}  // namespace kbsim
