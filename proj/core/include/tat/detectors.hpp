#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tat/point.hpp"

namespace tat {

enum class Geometry { Circle, Sphere, Arc, Square, Box };

std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& name);
int geometry_dim(Geometry g);

/// Point detectors on an observation surface S with outward unit normals and
/// surface-measure quadrature weights.
///
/// `radius` is the circle/sphere radius, or the half side length for the
/// square and box surfaces (both centered at the origin).
struct DetectorSet {
  Geometry geometry = Geometry::Circle;
  int dim = 2;
  double radius = 1.0;
  double arc_start = 0.0;
  double arc_span = 2.0 * kPi;
  std::vector<Point> positions;
  std::vector<Point> normals;
  std::vector<double> weights;
  /// Polar angle of each detector for circle and arc geometries.
  std::vector<double> angles;

  std::size_t size() const { return positions.size(); }
  /// Exact measure of the covered part of S (arc length, area, perimeter).
  double covered_measure() const;
  bool round() const { return geometry == Geometry::Circle || geometry == Geometry::Sphere || geometry == Geometry::Arc; }
  /// Largest distance between two points of S (2R for round surfaces).
  double diameter() const;
  /// Copy with positions and weights rescaled to a unit surface.
  DetectorSet normalized() const;
};

/// Builds a detector set. `count` means:
///   circle, arc  total number of detectors, equispaced in angle;
///   sphere       number of Gauss-Legendre rings in cos(theta), each with
///                2*count longitudes (2*count^2 detectors, area weights);
///   square       nodes per side (4*count detectors, trapezoid weights);
///   box          cells per face edge (6*count^2 detectors, midpoint weights).
/// For arcs the detectors sit at the midpoints of `count` equal sub-arcs of
/// [arc_start, arc_start + arc_span].
DetectorSet make_detectors(Geometry geometry, double radius, int count, double arc_span = 2.0 * kPi,
                           double arc_start = 0.0);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace tat
