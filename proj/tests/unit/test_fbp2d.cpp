#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "tat/error.hpp"
#include "tat/fbp2d.hpp"
#include "tat/forward.hpp"

using namespace tat;

namespace {

using Recon = std::function<ImageGrid(const ProjectionData&, const GridSpec&, const FbpOptions&)>;

const Recon kMethods[] = {recon_finch_log, recon_finch_log_filtered, recon_kun2d};
const char* kNames[] = {"finch-log", "finch-filt", "kun2d"};

ProjectionData data_for(const Phantom& p, int m, double R = 1.0, DataKind kind = DataKind::Integral) {
  return forward_analytic(p, make_detectors(Geometry::Circle, R, 2 * m), TimeGrid{2.0 * R, m}, kind);
}

double max_abs(const ImageGrid& g) {
  double v = 0;
  for (double x : g.values) v = std::max(v, std::abs(x));
  return v;
}

// Composite Simpson on [a, b] refined geometrically toward a possible
// integrable singularity at either end.
double graded_integral(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  auto simpson = [&](double lo, double hi) {
    const int n = 64;
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
    return s * h / 3.0;
  };
  const double mid = 0.5 * (a + b);
  double total = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double w = (mid - a) * std::pow(0.5, k);
    total += simpson(a + 0.5 * w, a + w) + simpson(b - w, b - 0.5 * w);
  }
  return total;
}

}  // namespace

TEST(LogKernel, MatchesIndependentQuadrature) {
  const int n = 9;
  const double T = 2.0, dt = T / (n - 1);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-1, 1);
  std::vector<double> g(n);
  for (auto& v : g) v = uni(rng);
  auto lin = [&](double t) {
    const int j = std::min(int(t / dt), n - 2);
    return g[j] + (t / dt - j) * (g[j + 1] - g[j]);
  };
  const int rows = 7;
  const double s_max = 4.0;
  const auto w = log_kernel_weights(n, T, rows, s_max);
  for (int k = 0; k < rows; ++k) {
    const double s = k * s_max / (rows - 1), c = std::sqrt(s);
    auto f = [&](double t) { return lin(t) * std::log(std::abs(t * t - s)); };
    // Split at the nodes and at the singular point.
    std::vector<double> cuts;
    for (int j = 0; j < n; ++j) cuts.push_back(j * dt);
    if (c > 0 && c < T) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    double oracle = 0;
    for (std::size_t q = 0; q + 1 < cuts.size(); ++q) oracle += graded_integral(f, cuts[q], cuts[q + 1]);
    double value = 0;
    for (int j = 0; j < n; ++j) value += w[k * n + j] * g[j];
    EXPECT_NEAR(value, oracle, 1e-9) << "s = " << s;
  }
}

// g(t) = t^2 on [0, T]: p.v. int t'^2 / (t'^2 - tau^2) dt' = T + (tau/2) log|(T - tau)/(T + tau)|.
TEST(PvFilter, MatchesClosedFormAndConvergesAtSecondOrder) {
  const double T = 2.0;
  auto err = [&](int n) {
    const double dt = T / (n - 1);
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = std::pow(k * dt, 2);
    const auto h = pv_filter(g, T);
    EXPECT_EQ(h.size(), std::size_t(2 * n - 1));
    double e = 0;
    for (int j = 0; j < 2 * n - 1; ++j) {
      const double tau = 0.5 * j * dt;
      if (tau > 0.75 * T) break;
      const double exact = tau == 0 ? T : T + 0.5 * tau * std::log(std::abs((T - tau) / (T + tau)));
      e = std::max(e, std::abs(h[j] - exact));
    }
    return e;
  };
  const double e1 = err(201), e2 = err(401);
  EXPECT_LT(e2, 1e-3);
  EXPECT_GT(e1 / e2, 3.0);
}

TEST(Fbp2d, ZeroDataGivesZero) {
  const auto g = data_for(Phantom(2), 32);
  const auto spec = GridSpec::cell_centered(2, -1, 1, 32);
  for (const auto& f : kMethods) EXPECT_EQ(max_abs(f(g, spec, {})), 0.0);
}

class Fbp2dDisk : public ::testing::TestWithParam<Point> {};

TEST_P(Fbp2dDisk, WithinTenPercentAtM128AndCrossAgreement) {
  const int m = 128;
  Phantom p(2);
  p.add_ball({GetParam(), 0.5, 1.0});
  const auto g = data_for(p, m);
  const auto spec = GridSpec::cell_centered(2, -1, 1, m);
  const auto ref = rasterize(p, spec);
  const auto mask = ball_mask(spec, 1.0 - 2.0 * spec.spacing);
  ImageGrid r[3];
  for (int k = 0; k < 3; ++k) {
    r[k] = kMethods[k](g, spec, {});
    EXPECT_LE(relative_l2(r[k], ref, mask), 0.10) << kNames[k];
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) EXPECT_LE(relative_l2(r[b], r[a], mask), 0.03) << kNames[a] << " vs " << kNames[b];
}

INSTANTIATE_TEST_SUITE_P(Disks, Fbp2dDisk, ::testing::Values(Point{0.0, 0.0, 0.0}, Point{0.3, 0.1, 0.0}));

TEST(Fbp2d, SmoothPhantomConvergesAtSecondOrder) {
  Phantom p(2);
  p.add_smooth_bump({0.2, -0.1, 0.0}, 0.5, 1.0, 400);
  for (int k = 0; k < 3; ++k) {
    double e[2];
    for (int q = 0; q < 2; ++q) {
      const int m = 64 << q;
      const auto spec = GridSpec::cell_centered(2, -1, 1, m);
      e[q] = relative_l2(kMethods[k](data_for(p, m), spec, {}), rasterize(p, spec), ball_mask(spec, 1.0 - 2.0 * spec.spacing));
    }
    EXPECT_LT(e[1], 0.02) << kNames[k];
    EXPECT_GE(e[0] / e[1], 1.5) << kNames[k];
  }
}

TEST(Fbp2d, Linearity) {
  Phantom a(2), b(2), ab(2);
  a.add_ball({{0.2, 0, 0}, 0.3, 1.0});
  b.add_ball({{-0.1, 0.3, 0}, 0.2, -2.0});
  ab.add_ball(a.balls()[0]).add_ball(b.balls()[0]);
  const auto spec = GridSpec::cell_centered(2, -1, 1, 32);
  for (int k = 0; k < 3; ++k) {
    const auto ra = kMethods[k](data_for(a, 32), spec, {});
    const auto rb = kMethods[k](data_for(b, 32), spec, {});
    const auto rab = kMethods[k](data_for(ab, 32), spec, {});
    const double scale = max_abs(rab);
    for (std::size_t i = 0; i < spec.size(); ++i) EXPECT_NEAR(rab[i], ra[i] + rb[i], 1e-12 * scale) << kNames[k];
  }
}

TEST(Fbp2d, QuarterTurnEquivariance) {
  const int m = 48;
  Phantom p(2), q(2);
  p.add_ball({{0.3, 0.1, 0}, 0.25, 1.0}).add_ball({{-0.2, -0.3, 0}, 0.2, 0.5});
  for (const auto& b : p.balls()) q.add_ball({{-b.center[1], b.center[0], 0}, b.radius, b.value});
  const auto spec = GridSpec::cell_centered(2, -1, 1, m);
  for (int k = 0; k < 3; ++k) {
    const auto r = kMethods[k](data_for(p, m), spec, {});
    const auto rq = kMethods[k](data_for(q, m), spec, {});
    double diff = 0;
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) diff = std::max(diff, std::abs(rq[spec.flat(i, j)] - r[spec.flat(j, m - 1 - i)]));
    EXPECT_LT(diff, 1e-10) << kNames[k];
  }
}

TEST(Fbp2d, ScaleInvariance) {
  const int m = 32;
  Phantom p(2);
  p.add_ball({{0.2, -0.1, 0}, 0.4, 1.0});
  const auto unit = GridSpec::cell_centered(2, -1, 1, m);
  const auto big = GridSpec::cell_centered(2, -2, 2, m);
  for (auto kind : {DataKind::Integral, DataKind::Mean}) {
    const auto g1 = data_for(p, m, 1.0, kind);
    const auto g2 = data_for(p.scaled_geometry(2.0), m, 2.0, kind);
    for (int k = 0; k < 3; ++k) {
      const auto r1 = kMethods[k](g1, unit, {});
      const auto r2 = kMethods[k](g2, big, {});
      const double scale = max_abs(r1);
      for (std::size_t i = 0; i < unit.size(); ++i) ASSERT_NEAR(r2[i], r1[i], 1e-9 * scale) << kNames[k];
    }
  }
}

// Dropping the far half of every projection alters every interior value.
TEST(Fbp2d, NonLocality) {
  const int m = 48;
  Phantom p(2);
  p.add_ball({{0.1, 0.0, 0}, 0.4, 1.0});
  const auto g = data_for(p, m);
  auto cut = g;
  for (std::size_t i = 0; i < cut.detectors.size(); ++i)
    for (int j = 0; j < cut.time.samples; ++j)
      if (cut.time.at(j) > 1.0) cut.at(i, j) = 0.0;
  const auto spec = GridSpec::cell_centered(2, -1, 1, m);
  for (int k = 0; k < 3; ++k) {
    const auto a = kMethods[k](g, spec, {});
    const auto b = kMethods[k](cut, spec, {});
    int interior = 0, changed = 0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      if (!a.is_valid(i) || norm(spec.point(i)) > 0.5) continue;
      ++interior;
      changed += std::abs(a[i] - b[i]) > 1e-6;
    }
    EXPECT_GT(interior, 100);
    EXPECT_EQ(changed, interior) << kNames[k];
  }
}

TEST(Fbp2d, RejectsBadInput) {
  const auto spec = GridSpec::cell_centered(2, -1, 1, 8);
  const auto sphere = forward_analytic(Phantom(3), make_detectors(Geometry::Sphere, 1.0, 4), TimeGrid{2.0, 8},
                                       DataKind::Integral);
  GridSpec outside = spec;
  outside.origin = {5.0, 5.0, 0.0};
  for (const auto& f : kMethods) {
    EXPECT_THROW(f(sphere, spec, {}), ValidationError);
    EXPECT_THROW(f(data_for(Phantom(2), 8), outside, {}), ValidationError);
  }
}
