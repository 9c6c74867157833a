#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tat/detectors.hpp"
#include "tat/phantom.hpp"

namespace tat {

/// Sample of a tissue interface: a boundary point and its unit normal.
struct InterfacePoint {
  Point position{};
  Point normal{};
};

/// Boundary samples of every disk in a 2D phantom.
std::vector<InterfacePoint> disk_interface(const Phantom& phantom, int samples_per_disk);

/// Boundary samples of an axis-aligned square, `samples_per_side` per side
/// (corners excluded). Sides are ordered left, right, bottom, top.
std::vector<InterfacePoint> square_interface(const Point& center, double half_side, int samples_per_side);

struct VisibilityMap {
  std::vector<InterfacePoint> points;
  std::vector<bool> visible;

  std::size_t visible_count() const;
  std::size_t invisible_count() const { return points.size() - visible_count(); }
};

/// An interface point is visible iff the line through it along its normal
/// meets the detector circle or arc, i.e. some circle centered on S is tangent
/// to the interface there. 2D circle/arc detector sets only.
VisibilityMap visibility_map(std::span<const InterfacePoint> interface, const DetectorSet& detectors);
VisibilityMap visibility_map(const Phantom& phantom, const DetectorSet& detectors, int samples_per_disk = 64);

}  // namespace tat
