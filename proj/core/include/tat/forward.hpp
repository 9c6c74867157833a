#pragma once

#include <cstdint>

#include "tat/image_grid.hpp"
#include "tat/phantom.hpp"
#include "tat/projection.hpp"

namespace tat {

/// Fraction of the sphere (circle) of radius r centered at distance d from
/// the center of a ball of radius rho that lies inside the ball.
double mean_ball(double d, double r, double rho, int dim);

/// Closed-form projections of a ball phantom.
ProjectionData forward_analytic(const Phantom& phantom, const DetectorSet& detectors, const TimeGrid& time,
                                DataKind kind);

/// Trapezoid (2D) or Gauss-Legendre x trapezoid (3D) quadrature over the
/// integration circles/spheres of an interpolated image, 0 outside it.
/// The angular sample count along a great circle is
/// max(64, ceil(oversample * 2 pi t / h)).
ProjectionData forward_quadrature(const ImageGrid& image, const DetectorSet& detectors, const TimeGrid& time,
                                  DataKind kind, double oversample = 4.0);

/// Adds Gaussian noise with standard deviation level * RMS(values).
/// Deterministic in `seed`.
ProjectionData add_noise(const ProjectionData& p, double level, std::uint64_t seed);

}  // namespace tat
