#include "tat/wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tat/error.hpp"
#include "tat/parallel.hpp"

namespace tat {

double SpeedField::min() const { return *std::min_element(grid.values.begin(), grid.values.end()); }
double SpeedField::max() const { return *std::max_element(grid.values.begin(), grid.values.end()); }

bool SpeedField::constant_one() const {
  return std::all_of(grid.values.begin(), grid.values.end(), [](double v) { return v == 1.0; });
}

void SpeedField::validate() const {
  grid.spec.validate();
  if (!(min() > 0.0)) throw ValidationError("speed", "must be positive everywhere");
  const auto& s = grid.spec;
  for (std::size_t f = 0; f < s.size(); ++f) {
    const auto ix = s.index(f);
    bool ring = false;
    for (int a = 0; a < s.dim; ++a) ring = ring || ix[a] == 0 || ix[a] == s.shape[a] - 1;
    if (ring && std::abs(grid.values[f] - 1.0) > 1e-12)
      throw ValidationError("speed", "must equal 1 on the outermost ring of the grid");
  }
}

SpeedField constant_speed(const GridSpec& spec) { return {ImageGrid(spec, 1.0)}; }

SpeedField bump_speed(const GridSpec& spec, const Point& center, double radius, double amplitude) {
  SpeedField v{ImageGrid(spec, 1.0)};
  for (std::size_t f = 0; f < spec.size(); ++f) {
    const Point d = spec.point(f) - center;
    const double q = dot(d, d) / (radius * radius);
    if (q < 1.0) v.grid.values[f] = 1.0 + amplitude * std::exp(1.0 - 1.0 / (1.0 - q));
  }
  return v;
}

WaveSolver::WaveSolver(const ImageGrid& initial, const SpeedField* speed, const Point& cover_lo,
                       const Point& cover_hi, double pad, double dt)
    : dt_(dt) {
  const GridSpec& in = initial.spec;
  in.validate();
  const int dim = in.dim;
  const double h = in.spacing;
  if (speed && (speed->grid.spec.spacing != h || speed->grid.spec.shape != in.shape ||
                speed->grid.spec.origin != in.origin))
    throw ValidationError("speed.grid", "must share the initial pressure lattice");
  // Lattice index range [lo, hi] relative to the initial origin.
  std::array<int, 3> lo{0, 0, 0}, shape{1, 1, 1};
  for (int a = 0; a < dim; ++a) {
    const double a_lo = std::min(cover_lo[a], in.origin[a]) - pad;
    const double a_hi = std::max(cover_hi[a], in.origin[a] + (in.shape[a] - 1) * h) + pad;
    lo[a] = int(std::floor((a_lo - in.origin[a]) / h)) - 1;
    const int hi = int(std::ceil((a_hi - in.origin[a]) / h)) + 1;
    shape[a] = hi - lo[a] + 1;
  }
  spec_.dim = dim;
  spec_.spacing = h;
  spec_.shape = shape;
  for (int a = 0; a < dim; ++a) spec_.origin[a] = in.origin[a] + lo[a] * h;

  const std::size_t n = spec_.size();
  cur_.assign(n, 0.0);
  c2_.assign(n, dt * dt / (h * h));
  inv_v2_.assign(n, 1.0);
  double vmax = 1.0;
  for (std::size_t f = 0; f < in.size(); ++f) {
    const auto ix = in.index(f);
    const std::size_t g = spec_.flat(ix[0] - lo[0], ix[1] - lo[1], ix[2] - lo[2]);
    cur_[g] = initial.values[f];
    if (speed) {
      const double v = speed->grid.values[f];
      c2_[g] *= v * v;
      inv_v2_[g] = 1.0 / (v * v);
      vmax = std::max(vmax, v);
    }
  }
  if (vmax * dt > h / std::sqrt(double(dim)) * (1.0 + 1e-12))
    throw ValidationError("dt", "violates the CFL bound v_max dt <= h / sqrt(dim)");
  // Walls hold zero.
  for (std::size_t f = 0; f < n; ++f) {
    const auto ix = spec_.index(f);
    for (int a = 0; a < dim; ++a)
      if (ix[a] == 0 || ix[a] == shape[a] - 1) cur_[f] = 0.0;
  }
  prev_ = cur_;
  work_.assign(n, 0.0);
}

void WaveSolver::laplacian(const std::vector<double>& p, std::vector<double>& out) const {
  const int dim = spec_.dim;
  const int nx = spec_.shape[0], ny = spec_.shape[1], nz = spec_.shape[2];
  const std::size_t sy = std::size_t(nx), sz = std::size_t(nx) * ny;
  const int slabs = dim == 3 ? nz : ny;
  parallel_for(std::size_t(slabs), [&](std::size_t s) {
    if (dim == 2) {
      const int j = int(s);
      for (int i = 0; i < nx; ++i) {
        const std::size_t f = j * sy + i;
        if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) {
          out[f] = 0.0;
          continue;
        }
        out[f] = p[f - 1] + p[f + 1] + p[f - sy] + p[f + sy] - 4.0 * p[f];
      }
    } else {
      const int k = int(s);
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t f = k * sz + j * sy + i;
          if (i == 0 || j == 0 || k == 0 || i == nx - 1 || j == ny - 1 || k == nz - 1) {
            out[f] = 0.0;
            continue;
          }
          out[f] = p[f - 1] + p[f + 1] + p[f - sy] + p[f + sy] + p[f - sz] + p[f + sz] - 6.0 * p[f];
        }
    }
  });
}

void WaveSolver::step() {
  laplacian(cur_, work_);
  const std::size_t n = cur_.size();
  if (steps_ == 0) {
    for (std::size_t f = 0; f < n; ++f) prev_[f] = cur_[f] + 0.5 * c2_[f] * work_[f];
  } else {
    for (std::size_t f = 0; f < n; ++f) prev_[f] = 2.0 * cur_[f] - prev_[f] + c2_[f] * work_[f];
  }
  std::swap(prev_, cur_);
  ++steps_;
}

double WaveSolver::sample(const Point& x) const {
  ImageGrid view;
  view.spec = spec_;
  view.values = cur_;
  return view.sample(x);
}

double WaveSolver::energy() const {
  std::vector<double> lap(cur_.size());
  laplacian(cur_, lap);
  const double h = spec_.spacing;
  double e = 0.0;
  for (std::size_t f = 0; f < cur_.size(); ++f) {
    const double pt = (cur_[f] - prev_[f]) / dt_;
    e += inv_v2_[f] * pt * pt - prev_[f] * lap[f] / (h * h);
  }
  return e * std::pow(h, spec_.dim);
}

namespace {

// Linear interpolation weights of a point on a lattice.
struct Stencil {
  std::size_t idx[8];
  double w[8];
  int count = 0;
};

Stencil make_stencil(const GridSpec& s, const Point& x) {
  Stencil st;
  int base[3] = {0, 0, 0};
  double frac[3] = {0, 0, 0};
  for (int a = 0; a < s.dim; ++a) {
    const double u = (x[a] - s.origin[a]) / s.spacing;
    base[a] = std::clamp(int(std::floor(u)), 0, s.shape[a] - 2);
    frac[a] = u - base[a];
  }
  const int corners = s.dim == 3 ? 8 : 4;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    int ix[3] = {base[0], base[1], base[2]};
    for (int a = 0; a < s.dim; ++a) {
      const int bit = (c >> a) & 1;
      ix[a] += bit;
      w *= bit ? frac[a] : 1.0 - frac[a];
    }
    st.idx[st.count] = s.flat(ix[0], ix[1], ix[2]);
    st.w[st.count++] = w;
  }
  return st;
}

}  // namespace

WaveRecording wave_forward(const ImageGrid& initial, const SpeedField* speed, const DetectorSet& detectors, double T,
                           double dt) {
  if (detectors.dim != initial.spec.dim) throw ValidationError("detectors.dim", "does not match the image dimension");
  if (!(T > 0.0)) throw ValidationError("T", "must be positive");
  const int dim = initial.spec.dim;
  const double h = initial.spec.spacing;
  double vmax = 1.0;
  bool unit = true;
  if (speed) {
    speed->validate();
    vmax = std::max(1.0, speed->max());
    unit = speed->constant_one();
  }
  const double bound = h / (vmax * std::sqrt(double(dim)));
  if (dt > 0.0 && dt > bound * (1.0 + 1e-12)) throw ValidationError("dt", "violates the CFL bound v_max dt <= h / sqrt(dim)");
  const double want = dt > 0.0 ? dt : 0.5 * bound;
  const int steps = std::max(1, int(std::ceil(T / want - 1e-9)));
  const double step = T / steps;

  Point lo{}, hi{};
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::numeric_limits<double>::infinity();
    hi[a] = -lo[a];
  }
  for (const auto& z : detectors.positions)
    for (int a = 0; a < dim; ++a) {
      lo[a] = std::min(lo[a], z[a]);
      hi[a] = std::max(hi[a], z[a]);
    }
  const double pad = 0.5 * vmax * T + 4.0 * h;
  WaveSolver solver(initial, speed, lo, hi, pad, step);

  std::vector<Stencil> stencils;
  for (const auto& z : detectors.positions) stencils.push_back(make_stencil(solver.spec(), z));

  WaveRecording rec;
  rec.detectors = detectors;
  rec.dt = step;
  rec.steps = steps;
  rec.constant_unit_speed = unit;
  rec.values.assign(detectors.size() * std::size_t(steps + 1), 0.0);
  auto record = [&](int n) {
    const auto& p = solver.field();
    for (std::size_t i = 0; i < stencils.size(); ++i) {
      double v = 0.0;
      for (int c = 0; c < stencils[i].count; ++c) v += stencils[i].w[c] * p[stencils[i].idx[c]];
      rec.at(i, n) = v;
    }
  };
  record(0);
  for (int n = 1; n <= steps; ++n) {
    solver.step();
    record(n);
  }
  return rec;
}

ProjectionData means_from_pressure(const WaveRecording& rec) {
  if (rec.detectors.dim != 3) throw ValidationError("recording.dim", "the pressure-to-means bridge is 3D only");
  if (!rec.constant_unit_speed) throw ValidationError("recording.speed", "requires constant unit speed");
  ProjectionData out(rec.detectors, TimeGrid{rec.t_max(), rec.samples()}, DataKind::Mean);
  for (std::size_t i = 0; i < rec.detectors.size(); ++i) {
    double acc = 0.0;
    out.at(i, 0) = rec.at(i, 0);
    for (int n = 1; n <= rec.steps; ++n) {
      acc += 0.5 * rec.dt * (rec.at(i, n - 1) + rec.at(i, n));
      out.at(i, n) = acc / (n * rec.dt);
    }
  }
  return out;
}

WaveRecording pressure_from_means(const ProjectionData& means) {
  if (means.dim() != 3) throw ValidationError("projection.dim", "the pressure-to-means bridge is 3D only");
  if (means.kind != DataKind::Mean) throw ValidationError("projection.kind", "expects MEAN data");
  WaveRecording rec;
  rec.detectors = means.detectors;
  rec.dt = means.time.step();
  rec.steps = means.time.samples - 1;
  rec.values.assign(means.values.size(), 0.0);
  const int n = means.time.samples;
  std::vector<double> q(n);
  for (std::size_t i = 0; i < means.detectors.size(); ++i) {
    for (int j = 0; j < n; ++j) q[j] = means.time.at(j) * means.at(i, j);
    for (int j = 1; j + 1 < n; ++j) rec.at(i, j) = (q[j + 1] - q[j - 1]) / (2.0 * rec.dt);
    rec.at(i, 0) = means.at(i, 0);
    rec.at(i, n - 1) = (3.0 * q[n - 1] - 4.0 * q[n - 2] + q[n - 3]) / (2.0 * rec.dt);
  }
  return rec;
}

}  // namespace tat
