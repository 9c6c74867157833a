#include "tat/projection.hpp"

#include <cmath>

#include "tat/error.hpp"

namespace tat {

std::string to_string(DataKind k) { return k == DataKind::Integral ? "integral" : "mean"; }

DataKind kind_from_string(const std::string& name) {
  if (name == "integral" || name == "INTEGRAL") return DataKind::Integral;
  if (name == "mean" || name == "MEAN") return DataKind::Mean;
  throw ValidationError("kind", "unknown data kind '" + name + "'");
}

void TimeGrid::validate() const {
  if (samples < 2) throw ValidationError("time.samples", "need at least 2 samples");
  if (!(t_max > 0.0)) throw ValidationError("time.t_max", "must be positive");
}

ProjectionData::ProjectionData(DetectorSet d, TimeGrid t, DataKind k)
    : detectors(std::move(d)), time(t), kind(k), values(detectors.size() * std::size_t(t.samples), 0.0) {
  time.validate();
}

double sphere_measure(int dim, double t) { return dim == 2 ? 2.0 * kPi * t : 4.0 * kPi * t * t; }

ProjectionData convert_kind(const ProjectionData& p, DataKind target) {
  ProjectionData out = p;
  out.kind = target;
  if (target == p.kind) return out;
  const int n = p.time.samples;
  for (std::size_t i = 0; i < p.detectors.size(); ++i) {
    for (int j = 1; j < n; ++j) {
      const double m = sphere_measure(p.dim(), p.time.at(j));
      out.at(i, j) = target == DataKind::Mean ? p.at(i, j) / m : p.at(i, j) * m;
    }
    // Degenerate sphere at t = 0: the integral vanishes, the mean is the
    // nearest-sample limit.
    out.at(i, 0) = target == DataKind::Mean ? out.at(i, 1) : 0.0;
  }
  return out;
}

ProjectionData normalize_to_unit(const ProjectionData& p) {
  const double r = p.detectors.radius;
  if (r == 1.0) return p;
  ProjectionData out = p;
  out.detectors = p.detectors.normalized();
  out.time.t_max = p.time.t_max / r;
  if (p.kind == DataKind::Integral) {
    const double s = std::pow(r, -(p.dim() - 1));
    for (auto& v : out.values) v *= s;
  }
  return out;
}

}  // namespace tat
