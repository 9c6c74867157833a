#pragma once

#include "tat/fbp_options.hpp"
#include "tat/image_grid.hpp"
#include "tat/projection.hpp"

namespace tat {

// Exact inversions for spherical detector surfaces. Data of either kind on a
// sphere of any radius is accepted; it is converted to spherical integrals on
// the unit sphere first. Samples whose difference stencil leaves the open
// detector ball are flagged invalid and hold 0; a grid with no valid sample
// is rejected.

/// f = -(1/8 pi^2) Lap_y int_S g(z, |z-y|) / |z-y| dA(z), 7-point Laplacian.
ImageGrid recon_fpr_laplacian(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt = {});

/// f = -(1/8 pi^2) int_S (1/t) g''(z, t) |_{t=|z-y|} dA(z).
ImageGrid recon_fpr_filtered(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt = {});

/// f = div_y (1/8 pi^2) int_S n(z) h(z, |z-y|) dA(z), h = (1/t) d/dt (g/t).
ImageGrid recon_kun3d(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt = {});

}  // namespace tat
