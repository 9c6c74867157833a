#include "tat/fbp2d.hpp"

#include <algorithm>
#include <cmath>

#include "recon_common.hpp"
#include "tat/parallel.hpp"

namespace tat {

namespace {

// u log|u| with the removable zero.
double ulogu(double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)); }
double u2logu(double u) { return u == 0.0 ? 0.0 : u * u * std::log(std::abs(u)); }

// Antiderivatives in t of log|t - c| and t log|t - c| (sigma = -1), or of
// log(t + c) and t log(t + c) (sigma = +1).
void antiderivatives(double t, double c, int sigma, double& a0, double& a1) {
  const double u = t + sigma * c;
  a0 = ulogu(u) - u;
  a1 = 0.5 * u2logu(u) - 0.25 * u * u - sigma * c * (ulogu(u) - u);
}

// Truncates rows to t <= 2 (twice the unit radius).
int kernel_samples(const TimeGrid& time) {
  const int last = int(std::floor(2.0 / time.step() + 1e-9));
  return std::clamp(last + 1, 2, time.samples);
}

// u(y) = sum_i w_i F_i(|y - z_i|^2) on flagged points, F_i sampled on [0, 4].
std::vector<double> log_backproject(const ProjectionData& filtered, const GridSpec& spec,
                                    const std::vector<std::uint8_t>& at, TInterp mode) {
  const int nt = kernel_samples(filtered.time);
  const int ns = 4 * filtered.time.samples;
  const double s_max = 4.0;
  const auto w = log_kernel_weights(nt, (nt - 1) * filtered.time.step(), ns, s_max);
  const auto& det = filtered.detectors;
  const std::size_t nd = det.size();
  // F(k, i) = sum_j W(k, j) g_i(j); stored detector-major for the backprojection.
  std::vector<double> table(nd * ns, 0.0);
  parallel_for(nd, [&](std::size_t i) {
    const auto row = filtered.row(i);
    for (int k = 0; k < ns; ++k) {
      const double* wk = w.data() + std::size_t(k) * nt;
      double acc = 0.0;
      for (int j = 0; j < nt; ++j) acc += wk[j] * row[j];
      table[i * ns + k] = acc;
    }
  });
  const double ds = s_max / (ns - 1);
  std::vector<double> out(spec.size(), 0.0);
  parallel_for(spec.size(), [&](std::size_t f) {
    if (!at[f]) return;
    const Point y = spec.point(f);
    double sum = 0.0;
    for (std::size_t i = 0; i < nd; ++i) {
      const Point d = y - det.positions[i];
      const std::span<const double> fi(table.data() + i * ns, ns);
      sum += det.weights[i] * interp_uniform(fi, ds, dot(d, d), mode);
    }
    out[f] = sum;
  });
  return out;
}

}  // namespace

std::vector<double> log_kernel_weights(int samples, double t_max, int rows, double s_max) {
  std::vector<double> w(std::size_t(rows) * samples, 0.0);
  const double dt = t_max / (samples - 1);
  const double ds = s_max / (rows - 1);
  parallel_for(std::size_t(rows), [&](std::size_t k) {
    const double c = std::sqrt(k * ds);
    double* wk = w.data() + k * samples;
    for (int j = 0; j + 1 < samples; ++j) {
      const double ta = j * dt, tb = (j + 1) * dt;
      double i0 = 0.0, i1 = 0.0;
      for (int sigma = -1; sigma <= 1; sigma += 2) {
        double a0, a1, b0, b1;
        antiderivatives(ta, c, sigma, a0, a1);
        antiderivatives(tb, c, sigma, b0, b1);
        i0 += b0 - a0;
        i1 += b1 - a1;
      }
      wk[j] += (tb * i0 - i1) / dt;
      wk[j + 1] += (i1 - ta * i0) / dt;
    }
  });
  return w;
}

std::vector<double> pv_filter(std::span<const double> g, double t_max) {
  const int n = int(g.size());
  const double dt = t_max / (n - 1);
  std::vector<double> h(2 * n - 1, 0.0);
  for (int j = 0; j < 2 * n - 1; ++j) {
    const double tau2 = 0.25 * j * j * dt * dt;
    double acc = 0.0;
    if (j % 2 == 1) {
      // Half-step point: trapezoid over every node.
      for (int k = 0; k < n; ++k) {
        const double c = (k == 0 || k == n - 1) ? 0.5 : 1.0;
        acc += c * g[k] / (k * k * dt * dt - tau2);
      }
    } else {
      // Node j/2: nodes of the opposite parity, each standing for a 2 dt cell.
      const int jj = j / 2;
      for (int k = (jj + 1) % 2; k < n; k += 2) {
        const double c = (k == 0 || k == n - 1) ? 1.0 : 2.0;
        acc += c * g[k] / (k * k * dt * dt - tau2);
      }
    }
    h[j] = acc * dt;
  }
  return h;
}

ImageGrid recon_finch_log(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt) {
  const auto p = detail::prepare_round(g, grid, 2, "finch-log");
  const auto valid = detail::stencil_inside(p.unit_spec, 1);
  const GridSpec outer = p.unit_spec.padded(1);
  const auto need = detail::stencil_support(p.unit_spec, valid, 1);
  const auto u = log_backproject(p.g, outer, need, opt.interp);
  const double scale = 1.0 / (4.0 * kPi * kPi * outer.spacing * outer.spacing);
  std::vector<double> f(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!valid[k]) continue;
    const auto ix = grid.index(k);
    const std::size_t c = outer.flat(ix[0] + 1, ix[1] + 1);
    f[k] = scale * (u[c + 1] + u[c - 1] + u[c + outer.stride(1)] + u[c - outer.stride(1)] - 4.0 * u[c]);
  }
  return detail::finish(grid, std::move(f), valid);
}

ImageGrid recon_finch_log_filtered(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt) {
  auto p = detail::prepare_round(g, grid, 2, "finch-filt");
  const auto valid = detail::stencil_inside(p.unit_spec, 0);
  const int n = p.g.time.samples;
  const double dt = p.g.time.step();
  std::vector<double> a(n);
  for (std::size_t i = 0; i < p.g.detectors.size(); ++i) {
    auto row = p.g.row(i);
    for (int j = 1; j < n; ++j) a[j] = row[j] / p.g.time.at(j);
    // g/t is even in t at 0: quadratic extrapolation.
    a[0] = (4.0 * a[1] - a[2]) / 3.0;
    // Conservative three-point form of (t a')'; vanishes at t = 0 by evenness.
    row[0] = 0.0;
    for (int j = 1; j + 1 < n; ++j)
      row[j] = ((j + 0.5) * (a[j + 1] - a[j]) - (j - 0.5) * (a[j] - a[j - 1])) / dt;
    row[n - 1] = 2.0 * row[n - 2] - row[n - 3];
  }
  auto f = log_backproject(p.g, p.unit_spec, valid, opt.interp);
  for (double& v : f) v /= 4.0 * kPi * kPi;
  return detail::finish(grid, std::move(f), valid);
}

ImageGrid recon_kun2d(const ProjectionData& g, const GridSpec& grid, const FbpOptions& opt) {
  const auto p = detail::prepare_round(g, grid, 2, "kun2d");
  const auto valid = detail::stencil_inside(p.unit_spec, 1);
  const GridSpec outer = p.unit_spec.padded(1);
  const auto need = detail::stencil_support(p.unit_spec, valid, 1);
  const int nt = kernel_samples(p.g.time);
  const double dt = p.g.time.step();
  const auto& det = p.g.detectors;
  std::vector<std::vector<double>> h(det.size());
  parallel_for(det.size(), [&](std::size_t i) { h[i] = pv_filter(p.g.row(i).first(nt), (nt - 1) * dt); });
  auto eval = [&](const std::vector<double>& hi, double t) { return interp_uniform(hi, 0.5 * dt, t, opt.interp); };
  std::vector<Point> field(outer.size(), Point{});
  parallel_for(outer.size(), [&](std::size_t f) {
    if (!need[f]) return;
    const Point y = outer.point(f);
    Point sum{};
    for (std::size_t i = 0; i < det.size(); ++i)
      sum = sum + (det.weights[i] * eval(h[i], distance(y, det.positions[i]))) * det.normals[i];
    field[f] = sum;
  });
  const double scale = 1.0 / (2.0 * kPi * kPi * 2.0 * outer.spacing);
  std::vector<double> f(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!valid[k]) continue;
    const auto ix = grid.index(k);
    const std::size_t c = outer.flat(ix[0] + 1, ix[1] + 1);
    f[k] = scale * (field[c + 1][0] - field[c - 1][0] + field[c + outer.stride(1)][1] - field[c - outer.stride(1)][1]);
  }
  return detail::finish(grid, std::move(f), valid);
}

}  // namespace tat
