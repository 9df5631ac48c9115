#pragma once

#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <optional>
#include <vector>

namespace kbsim {

// A point of the decision domain. Coordinates are finite doubles; dimension
// is at least 1. Validation happens where points enter the system
// (DecisionSet, RkhsFunction, config parsing).
struct Point {
  std::vector<double> coords;

  Point() = default;
  Point(std::initializer_list<double> c) : coords(c) {}
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
};

// Bitwise coordinate equality. Decision-set points are canonical values that
// are never recomputed, so representation equality is the right notion; it
// also keeps the point-mass kernel's same-point test exact.
inline bool bitwise_equal(const Point& a, const Point& b) {
  if (a.coords.size() != b.coords.size()) return false;
  return a.coords.empty() ||
         std::memcmp(a.coords.data(), b.coords.data(),
                     a.coords.size() * sizeof(double)) == 0;
}

double squared_distance(const Point& a, const Point& b);

// Finite set of candidate arms: at least two pairwise-distinct points of one
// common dimension.
class DecisionSet {
public:
  explicit DecisionSet(std::vector<Point> points);

  int size() const { return static_cast<int>(points_.size()); }
  int dim() const { return points_.front().dim(); }
  const Point& operator[](int i) const { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<Point>& points() const { return points_; }

  // Index of the bitwise-identical member, if any.
  std::optional<int> index_of(const Point& x) const;

private:
  std::vector<Point> points_;
};

}  // namespace kbsim
