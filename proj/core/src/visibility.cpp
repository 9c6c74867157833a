#include "tat/visibility.hpp"

#include <algorithm>
#include <cmath>

#include "tat/error.hpp"

namespace tat {

std::size_t VisibilityMap::visible_count() const {
  return std::size_t(std::count(visible.begin(), visible.end(), true));
}

std::vector<InterfacePoint> disk_interface(const Phantom& phantom, int samples_per_disk) {
  if (phantom.dim() != 2) throw ValidationError("phantom.dim", "interfaces are sampled in 2D only");
  std::vector<InterfacePoint> out;
  for (const auto& b : phantom.balls()) {
    for (int i = 0; i < samples_per_disk; ++i) {
      const double th = 2.0 * kPi * (i + 0.5) / samples_per_disk;
      const Point n{std::cos(th), std::sin(th), 0.0};
      out.push_back({b.center + b.radius * n, n});
    }
  }
  return out;
}

std::vector<InterfacePoint> square_interface(const Point& center, double half_side, int samples_per_side) {
  std::vector<InterfacePoint> out;
  const double a = half_side;
  for (int i = 0; i < samples_per_side; ++i) {
    const double s = -a + 2.0 * a * (i + 0.5) / samples_per_side;
    out.push_back({center + Point{-a, s, 0}, {-1, 0, 0}});
  }
  for (int i = 0; i < samples_per_side; ++i) {
    const double s = -a + 2.0 * a * (i + 0.5) / samples_per_side;
    out.push_back({center + Point{a, s, 0}, {1, 0, 0}});
  }
  for (int i = 0; i < samples_per_side; ++i) {
    const double s = -a + 2.0 * a * (i + 0.5) / samples_per_side;
    out.push_back({center + Point{s, -a, 0}, {0, -1, 0}});
  }
  for (int i = 0; i < samples_per_side; ++i) {
    const double s = -a + 2.0 * a * (i + 0.5) / samples_per_side;
    out.push_back({center + Point{s, a, 0}, {0, 1, 0}});
  }
  return out;
}

namespace {

bool angle_on_arc(double theta, const DetectorSet& d) {
  if (d.geometry == Geometry::Circle || d.arc_span >= 2.0 * kPi) return true;
  double rel = std::fmod(theta - d.arc_start, 2.0 * kPi);
  if (rel < 0) rel += 2.0 * kPi;
  return rel <= d.arc_span;
}

}  // namespace

VisibilityMap visibility_map(std::span<const InterfacePoint> interface, const DetectorSet& detectors) {
  if (detectors.geometry != Geometry::Circle && detectors.geometry != Geometry::Arc)
    throw ValidationError("detectors.geometry", "visibility needs a circle or arc");
  VisibilityMap map;
  map.points.assign(interface.begin(), interface.end());
  map.visible.resize(map.points.size());
  const double r = detectors.radius;
  for (std::size_t i = 0; i < map.points.size(); ++i) {
    const Point& x = map.points[i].position;
    const Point n = (1.0 / norm(map.points[i].normal)) * map.points[i].normal;
    // |x + s n|^2 = R^2
    const double b = dot(x, n);
    const double disc = b * b - (dot(x, x) - r * r);
    bool vis = false;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      for (double s : {-b - sq, -b + sq}) {
        const Point y = x + s * n;
        if (angle_on_arc(std::atan2(y[1], y[0]), detectors)) vis = true;
      }
    }
    map.visible[i] = vis;
  }
  return map;
}

VisibilityMap visibility_map(const Phantom& phantom, const DetectorSet& detectors, int samples_per_disk) {
  const auto pts = disk_interface(phantom, samples_per_disk);
  return visibility_map(pts, detectors);
}

}  // namespace tat
