#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "sectionlab/errors.hpp"

namespace sectionlab {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline Vec operator*(double s, const Vec& a) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

inline Vec operator-(const Vec& a) { return -1.0 * a; }

inline Vec normalized(const Vec& a) {
  double n = norm(a);
  if (n == 0.0) throw RangeError("cannot normalize the zero vector");
  return (1.0 / n) * a;
}

inline Vec unit_axis(int dim, int axis) {
  Vec e(static_cast<std::size_t>(dim), 0.0);
  e[static_cast<std::size_t>(axis)] = 1.0;
  return e;
}

// Unit vector on S^{n-1}.  Norm is checked to 1e-12 at construction.
class Direction {
 public:
  explicit Direction(Vec coords) : coords_(std::move(coords)) {
    double n = norm(coords_);
    if (std::abs(n - 1.0) > 1e-12) {
      if (n == 0.0) throw RangeError("direction must be nonzero");
      for (auto& c : coords_) c /= n;
    }
  }

  static Direction axis(int dim, int k) { return Direction(unit_axis(dim, k)); }

  // n=2 convenience: angle measured from the positive x-axis.
  static Direction angle2d(double theta) {
    return Direction(Vec{std::cos(theta), std::sin(theta)});
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  const Vec& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  Direction operator-() const { return Direction(-coords_); }

 private:
  Vec coords_;
};

inline double dot(const Direction& a, const Direction& b) {
  return dot(a.coords(), b.coords());
}
inline double dot(const Direction& a, const Vec& b) { return dot(a.coords(), b); }
inline double dot(const Vec& a, const Direction& b) { return dot(a, b.coords()); }

}  // namespace sectionlab
