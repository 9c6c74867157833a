#pragma once

#include <span>
#include <vector>

#include "tat/fbp_options.hpp"
#include "tat/image_grid.hpp"
#include "tat/projection.hpp"

namespace tat {

// Exact inversions for circular detector sets. Input handling and validity
// flags follow the 3D functions in fbp3d.hpp. Arc data is accepted as a
// limited view: the formulas run over the detectors present, which equals a
// full circle whose missing data is zero.

/// f = (1/4 pi^2 R) Lap_y int_S F(z, |y-z|^2) dl(z) with
/// F(z, s) = int_0^{2R} g(z, t) log|t^2 - s| dt, 5-point Laplacian.
ImageGrid recon_finch_log(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt = {});

/// Same kernel applied to d/dt (t d/dt (g/t)); no outer Laplacian.
ImageGrid recon_finch_log_filtered(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt = {});

/// f = (1/2 pi^2) div_y int_S n(z) h0(z, |y-z|) dl(z) with the principal value
/// h0(z, t) = p.v. int_0^{2R} g(z, t') / (t'^2 - t^2) dt'.
ImageGrid recon_kun2d(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt = {});

/// Product-integration weights: row k gives int_0^{t_max} g(t) log|t^2 - s_k| dt
/// for g piecewise linear on `samples` uniform nodes, s_k = k * s_max / (rows - 1).
/// Row-major rows x samples.
std::vector<double> log_kernel_weights(int samples, double t_max, int rows, double s_max);

/// Principal value p.v. int_0^{t_max} g(t') / (t'^2 - tau^2) dt' on the
/// half-step lattice tau_j = j dt / 2, j = 0..2n-2. Half-step points use the
/// trapezoid rule over all nodes; node points use the nodes of opposite
/// parity. Neither rule ever evaluates the kernel at its pole.
std::vector<double> pv_filter(std::span<const double> g, double t_max);

}  // namespace tat
