#pragma once

#include <vector>

#include "tat/point.hpp"

namespace tat {

struct Ball {
  Point center{};
  double radius = 0.0;
  double value = 0.0;
};

/// Additive union of constant-value balls (disks in 2D). The value at a point
/// is the sum of the values of all balls containing it.
class Phantom {
 public:
  explicit Phantom(int dim = 2);

  int dim() const { return dim_; }
  const std::vector<Ball>& balls() const { return balls_; }
  bool empty() const { return balls_.empty(); }

  /// Throws ValidationError for radius <= 0 or a nonzero z in 2D.
  Phantom& add_ball(const Ball& ball);

  /// Approximates amplitude * cos^2(pi r / (2 radius)) by `shells` concentric
  /// balls. Each shell carries the profile value at its mid-radius, so the
  /// staircase error is at most amplitude * pi / (4 shells).
  Phantom& add_smooth_bump(const Point& center, double radius, double amplitude, int shells);

  double operator()(const Point& x) const;

  /// Radius of the smallest origin-centered ball holding the support.
  double support_radius() const;

  /// Copy with every value multiplied by c.
  Phantom scaled_values(double c) const;

  /// Copy with all coordinates and radii multiplied by s.
  Phantom scaled_geometry(double s) const;

 private:
  int dim_;
  std::vector<Ball> balls_;
};

}  // namespace tat
