#include "tat/detectors.hpp"

#include <cmath>
#include <string>

#include "tat/error.hpp"

namespace tat {

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::Circle: return "circle";
    case Geometry::Sphere: return "sphere";
    case Geometry::Arc: return "arc";
    case Geometry::Square: return "square";
    case Geometry::Box: return "box";
  }
  return "unknown";
}

Geometry geometry_from_string(const std::string& name) {
  if (name == "circle") return Geometry::Circle;
  if (name == "sphere") return Geometry::Sphere;
  if (name == "arc") return Geometry::Arc;
  if (name == "square") return Geometry::Square;
  if (name == "box") return Geometry::Box;
  throw ValidationError("geometry", "unknown geometry '" + name + "'");
}

int geometry_dim(Geometry g) {
  return (g == Geometry::Sphere || g == Geometry::Box) ? 3 : 2;
}

double DetectorSet::covered_measure() const {
  switch (geometry) {
    case Geometry::Circle: return 2.0 * kPi * radius;
    case Geometry::Arc: return arc_span * radius;
    case Geometry::Sphere: return 4.0 * kPi * radius * radius;
    case Geometry::Square: return 8.0 * radius;
    case Geometry::Box: return 24.0 * radius * radius;
  }
  return 0.0;
}

double DetectorSet::diameter() const {
  switch (geometry) {
    case Geometry::Square: return 2.0 * std::sqrt(2.0) * radius;
    case Geometry::Box: return 2.0 * std::sqrt(3.0) * radius;
    default: return 2.0 * radius;
  }
}

DetectorSet DetectorSet::normalized() const {
  DetectorSet out = *this;
  const double s = 1.0 / radius;
  const double ws = std::pow(s, dim - 1);
  for (auto& p : out.positions) p = s * p;
  for (auto& w : out.weights) w *= ws;
  out.radius = 1.0;
  return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

namespace {

void push(DetectorSet& d, const Point& p, const Point& n, double w) {
  d.positions.push_back(p);
  d.normals.push_back(n);
  d.weights.push_back(w);
}

}  // namespace

DetectorSet make_detectors(Geometry geometry, double radius, int count, double arc_span, double arc_start) {
  if (count < 4) throw ValidationError("count", "need at least 4 detectors");
  if (!(radius > 0.0)) throw ValidationError("radius", "must be positive");
  DetectorSet d;
  d.geometry = geometry;
  d.dim = geometry_dim(geometry);
  d.radius = radius;
  switch (geometry) {
    case Geometry::Circle: {
      for (int i = 0; i < count; ++i) {
        const double th = 2.0 * kPi * i / count;
        const Point n{std::cos(th), std::sin(th), 0.0};
        push(d, radius * n, n, 2.0 * kPi * radius / count);
        d.angles.push_back(th);
      }
      break;
    }
    case Geometry::Arc: {
      if (!(arc_span > 0.0) || arc_span > 2.0 * kPi + 1e-12)
        throw ValidationError("arc_span", "must lie in (0, 2*pi]");
      d.arc_start = arc_start;
      d.arc_span = arc_span;
      for (int i = 0; i < count; ++i) {
        const double th = arc_start + (i + 0.5) * arc_span / count;
        const Point n{std::cos(th), std::sin(th), 0.0};
        push(d, radius * n, n, radius * arc_span / count);
        d.angles.push_back(th);
      }
      break;
    }
    case Geometry::Sphere: {
      std::vector<double> x, a;
      gauss_legendre(count, x, a);
      const int nphi = 2 * count;
      for (int i = 0; i < count; ++i) {
        const double ct = x[i], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < nphi; ++j) {
          const double ph = 2.0 * kPi * (j + 0.5) / nphi;
          const Point n{st * std::cos(ph), st * std::sin(ph), ct};
          push(d, radius * n, n, radius * radius * a[i] * 2.0 * kPi / nphi);
        }
      }
      break;
    }
    case Geometry::Square: {
      const double s = 2.0 * radius / count;
      const double r = radius;
      const double c = 1.0 / std::sqrt(2.0);
      // Counterclockwise from the lower-left corner; corners get the diagonal normal.
      for (int i = 0; i < count; ++i)
        push(d, {-r + i * s, -r, 0}, i == 0 ? Point{-c, -c, 0} : Point{0, -1, 0}, s);
      for (int i = 0; i < count; ++i)
        push(d, {r, -r + i * s, 0}, i == 0 ? Point{c, -c, 0} : Point{1, 0, 0}, s);
      for (int i = 0; i < count; ++i)
        push(d, {r - i * s, r, 0}, i == 0 ? Point{c, c, 0} : Point{0, 1, 0}, s);
      for (int i = 0; i < count; ++i)
        push(d, {-r, r - i * s, 0}, i == 0 ? Point{-c, c, 0} : Point{-1, 0, 0}, s);
      break;
    }
    case Geometry::Box: {
      const double s = 2.0 * radius / count;
      for (int axis = 0; axis < 3; ++axis) {
        for (int side = -1; side <= 1; side += 2) {
          const int u = (axis + 1) % 3, v = (axis + 2) % 3;
          for (int i = 0; i < count; ++i)
            for (int j = 0; j < count; ++j) {
              Point p{}, n{};
              p[axis] = side * radius;
              p[u] = -radius + (i + 0.5) * s;
              p[v] = -radius + (j + 0.5) * s;
              n[axis] = side;
              push(d, p, n, s * s);
            }
        }
      }
      break;
    }
  }
  return d;
}

}  // namespace tat
