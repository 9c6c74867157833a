#include "tat/interp.hpp"

#include <cmath>
#include <cstddef>

namespace tat {

double interp_uniform(std::span<const double> y, double dt, double t, TInterp mode) {
  const std::size_t n = y.size();
  const double u = t / dt;
  if (!(u >= 0.0) || u > double(n - 1)) return 0.0;
  std::size_t j = std::size_t(u);
  if (j >= n - 1) j = n - 2;
  const double a = u - double(j);
  if (mode == TInterp::Linear || n < 4) return (1.0 - a) * y[j] + a * y[j + 1];
  // Catmull-Rom with mirrored ghost values at the ends.
  const double y0 = j > 0 ? y[j - 1] : 2.0 * y[0] - y[1];
  const double y1 = y[j], y2 = y[j + 1];
  const double y3 = j + 2 < n ? y[j + 2] : 2.0 * y[n - 1] - y[n - 2];
  return y1 + 0.5 * a * (y2 - y0 + a * (2.0 * y0 - 5.0 * y1 + 4.0 * y2 - y3 + a * (3.0 * (y1 - y2) + y3 - y0)));
}

void derivative_uniform(std::span<const double> y, double dt, std::span<double> out) {
  const std::size_t n = y.size();
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (y[j + 1] - y[j - 1]) / (2.0 * dt);
  out[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dt);
  out[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * dt);
}

void second_derivative_uniform(std::span<const double> y, double dt, std::span<double> out) {
  const std::size_t n = y.size();
  const double s = 1.0 / (dt * dt);
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (y[j + 1] - 2.0 * y[j] + y[j - 1]) * s;
  out[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) * s;
  out[n - 1] = (2.0 * y[n - 1] - 5.0 * y[n - 2] + 4.0 * y[n - 3] - y[n - 4]) * s;
}

}  // namespace tat
