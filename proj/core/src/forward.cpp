#include "tat/forward.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tat/error.hpp"
#include "tat/parallel.hpp"

namespace tat {

double mean_ball(double d, double r, double rho, int dim) {
  if (d + r <= rho) return 1.0;
  if (d >= r + rho || r >= d + rho) return 0.0;
  const double c = std::clamp((d * d + r * r - rho * rho) / (2.0 * d * r), -1.0, 1.0);
  return dim == 3 ? 0.5 * (1.0 - c) : std::acos(c) / kPi;
}

ProjectionData forward_analytic(const Phantom& phantom, const DetectorSet& detectors, const TimeGrid& time,
                                DataKind kind) {
  if (phantom.dim() != detectors.dim) throw ValidationError("phantom.dim", "does not match the detector dimension");
  ProjectionData out(detectors, time, kind);
  const int dim = detectors.dim;
  parallel_for(detectors.size(), [&](std::size_t i) {
    const Point& z = detectors.positions[i];
    for (int j = 0; j < time.samples; ++j) {
      const double t = time.at(j);
      double mean = 0.0;
      for (const auto& b : phantom.balls()) {
        const double d = distance(z, b.center);
        mean += b.value * (t == 0.0 ? (d < b.radius ? 1.0 : 0.0) : mean_ball(d, t, b.radius, dim));
      }
      out.at(i, j) = kind == DataKind::Mean ? mean : mean * sphere_measure(dim, t);
    }
  });
  return out;
}

ProjectionData forward_quadrature(const ImageGrid& image, const DetectorSet& detectors, const TimeGrid& time,
                                  DataKind kind, double oversample) {
  if (image.spec.dim != detectors.dim) throw ValidationError("image.dim", "does not match the detector dimension");
  ProjectionData out(detectors, time, kind);
  const int dim = detectors.dim;
  const double h = image.spec.spacing;
  parallel_for(detectors.size(), [&](std::size_t i) {
    const Point& z = detectors.positions[i];
    std::vector<double> gx, gw;
    for (int j = 0; j < time.samples; ++j) {
      const double t = time.at(j);
      double mean = 0.0;
      if (t == 0.0) {
        mean = image.sample(z);
      } else {
        const int n = std::max(64, int(std::ceil(oversample * 2.0 * kPi * t / h)));
        if (dim == 2) {
          for (int k = 0; k < n; ++k) {
            const double a = 2.0 * kPi * k / n;
            mean += image.sample(z + t * Point{std::cos(a), std::sin(a), 0.0});
          }
          mean /= n;
        } else {
          const int nt = n / 2;
          gauss_legendre(nt, gx, gw);
          for (int a = 0; a < nt; ++a) {
            const double st = std::sqrt(1.0 - gx[a] * gx[a]);
            double ring = 0.0;
            for (int k = 0; k < n; ++k) {
              const double ph = 2.0 * kPi * k / n;
              ring += image.sample(z + t * Point{st * std::cos(ph), st * std::sin(ph), gx[a]});
            }
            mean += 0.5 * gw[a] * ring / n;
          }
        }
      }
      out.at(i, j) = kind == DataKind::Mean ? mean : mean * sphere_measure(dim, t);
    }
  });
  return out;
}

ProjectionData add_noise(const ProjectionData& p, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw ValidationError("noise.level", "must be nonnegative");
  ProjectionData out = p;
  if (level == 0.0 || p.values.empty()) return out;
  double ss = 0.0;
  for (double v : p.values) ss += v * v;
  const double sigma = level * std::sqrt(ss / double(p.values.size()));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : out.values) v += sigma * normal(rng);
  return out;
}

}  // namespace tat
