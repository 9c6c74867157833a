#include "tat/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tat/error.hpp"

namespace tat {

Phantom::Phantom(int dim) : dim_(dim) {
  if (dim != 2 && dim != 3) throw ValidationError("dim", "must be 2 or 3, got " + std::to_string(dim));
}

Phantom& Phantom::add_ball(const Ball& ball) {
  if (!(ball.radius > 0.0)) throw ValidationError("radius", "ball radius must be positive");
  if (dim_ == 2 && ball.center[2] != 0.0) throw ValidationError("center", "2D phantom balls must have z = 0");
  if (!std::isfinite(ball.value)) throw ValidationError("value", "ball value must be finite");
  balls_.push_back(ball);
  return *this;
}

Phantom& Phantom::add_smooth_bump(const Point& center, double radius, double amplitude, int shells) {
  if (shells < 1) throw ValidationError("shells", "need at least one shell");
  if (!(radius > 0.0)) throw ValidationError("radius", "bump radius must be positive");
  auto profile = [&](double r) {
    const double c = std::cos(0.5 * kPi * r / radius);
    return amplitude * c * c;
  };
  // Shell j covers [(j-1), j] * radius / shells; the nested sum of values
  // outward from shell j must equal the profile at that shell's mid-radius.
  for (int j = 1; j <= shells; ++j) {
    const double here = profile((j - 0.5) * radius / shells);
    const double next = j < shells ? profile((j + 0.5) * radius / shells) : 0.0;
    const double v = here - next;
    if (v != 0.0) add_ball({center, radius * j / shells, v});
  }
  return *this;
}

double Phantom::operator()(const Point& x) const {
  double sum = 0.0;
  for (const auto& b : balls_) {
    const Point d = x - b.center;
    if (dot(d, d) < b.radius * b.radius) sum += b.value;
  }
  return sum;
}

double Phantom::support_radius() const {
  double r = 0.0;
  for (const auto& b : balls_) r = std::max(r, norm(b.center) + b.radius);
  return r;
}

Phantom Phantom::scaled_values(double c) const {
  Phantom out(dim_);
  for (auto b : balls_) {
    b.value *= c;
    out.balls_.push_back(b);
  }
  return out;
}

Phantom Phantom::scaled_geometry(double s) const {
  if (!(s > 0.0)) throw ValidationError("scale", "geometry scale must be positive");
  Phantom out(dim_);
  for (auto b : balls_) {
    b.center = s * b.center;
    b.radius *= s;
    out.balls_.push_back(b);
  }
  return out;
}

}  // namespace tat
