#include "tat/fbp3d.hpp"

#include <cmath>

#include "recon_common.hpp"
#include "tat/parallel.hpp"

namespace tat {

namespace {

using detail::Prepared;

constexpr double kScale = 1.0 / (8.0 * kPi * kPi);

template <class Kernel>
std::vector<double> backproject(const ProjectionData& q, const GridSpec& spec, const std::vector<std::uint8_t>& at,
                                TInterp mode, Kernel kernel) {
  const auto set = detail::make_set<1>(q.detectors, q.values.data(), q.time.samples, q.time.step());
  std::vector<double> out[1];
  detail::backproject<1>(set, spec, at, mode, kernel, out);
  return std::move(out[0]);
}

}  // namespace

ImageGrid recon_fpr_laplacian(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt) {
  const Prepared p = detail::prepare_round(g, grid, 3, "fpr-lap");
  const auto valid = detail::stencil_inside(p.unit_spec, 1);
  const GridSpec outer = p.unit_spec.padded(1);
  const auto need = detail::stencil_support(p.unit_spec, valid, 1);
  const auto u = backproject(p.g, outer, need, opt.interp, [](double d) { return 1.0 / d; });
  const double h2 = outer.spacing * outer.spacing;
  std::vector<double> f(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!valid[k]) continue;
    const auto ix = grid.index(k);
    const std::size_t c = outer.flat(ix[0] + 1, ix[1] + 1, ix[2] + 1);
    double lap = -6.0 * u[c];
    for (int a = 0; a < 3; ++a) lap += u[c + outer.stride(a)] + u[c - outer.stride(a)];
    f[k] = -kScale * lap / h2;
  }
  return detail::finish(grid, std::move(f), valid);
}

ImageGrid recon_fpr_filtered(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt) {
  Prepared p = detail::prepare_round(g, grid, 3, "fpr-filt");
  const auto valid = detail::stencil_inside(p.unit_spec, 0);
  ProjectionData q = p.g;
  const int n = q.time.samples;
  const double dt = q.time.step();
  for (std::size_t i = 0; i < q.detectors.size(); ++i) {
    auto row = q.row(i);
    second_derivative_uniform(p.g.row(i), dt, row);
    row[0] = 0.0;
    for (int j = 1; j < n; ++j) row[j] /= q.time.at(j);
  }
  auto f = backproject(q, p.unit_spec, valid, opt.interp, [](double) { return 1.0; });
  for (double& v : f) v *= -kScale;
  return detail::finish(grid, std::move(f), valid);
}

ImageGrid recon_kun3d(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt) {
  Prepared p = detail::prepare_round(g, grid, 3, "kun3d");
  const auto valid = detail::stencil_inside(p.unit_spec, 1);
  const GridSpec outer = p.unit_spec.padded(1);
  const auto need = detail::stencil_support(p.unit_spec, valid, 1);
  ProjectionData q = p.g;
  const int n = q.time.samples;
  const double dt = q.time.step();
  std::vector<double> a(n);
  for (std::size_t i = 0; i < q.detectors.size(); ++i) {
    const auto src = p.g.row(i);
    a[0] = 0.0;
    for (int j = 1; j < n; ++j) a[j] = src[j] / q.time.at(j);
    auto row = q.row(i);
    derivative_uniform(a, dt, row);
    row[0] = 0.0;
    for (int j = 1; j < n; ++j) row[j] /= q.time.at(j);
  }
  const auto set = detail::make_set<3>(q.detectors, q.values.data(), n, dt);
  std::vector<double> field[3];
  detail::backproject<3>(set, outer, need, opt.interp, [](double) { return 1.0; }, field);
  std::vector<double> div(grid.size(), 0.0);
  const double h = outer.spacing;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!valid[k]) continue;
    const auto ix = grid.index(k);
    const std::size_t c = outer.flat(ix[0] + 1, ix[1] + 1, ix[2] + 1);
    for (int a = 0; a < 3; ++a)
      div[k] += (field[a][c + outer.stride(a)] - field[a][c - outer.stride(a)]) / (2.0 * h);
  }
  for (double& v : div) v *= kScale;
  return detail::finish(grid, std::move(div), valid);
}

}  // namespace tat
