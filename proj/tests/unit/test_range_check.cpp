#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tat/error.hpp"
#include "tat/forward.hpp"
#include "tat/range_check.hpp"
#include "tat/specfun.hpp"

using namespace tat;

namespace {

ProjectionData centered_disk_data(int detectors = 256, int samples = 256) {
  Phantom p(2);
  p.add_ball({{}, 0.5, 1.0});
  return forward_analytic(p, make_detectors(Geometry::Circle, 1.0, detectors), TimeGrid{2.0, samples}, DataKind::Mean);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double max_of(const std::vector<std::vector<double>>& v) {
  double m = 0;
  for (const auto& row : v)
    for (double x : row) m = std::max(m, x);
  return m;
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = double(k);
  return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a), rb = ranks(b);
  const double n = double(a.size());
  double d2 = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d2 += (ra[k] - rb[k]) * (ra[k] - rb[k]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace

TEST(RangeCheck, CenteredDiskPassesAllThree) {
  const auto g = centered_disk_data();
  const auto mom = check_moments(g, 5);
  ASSERT_EQ(mom.size(), 6u);
  for (double r : mom) EXPECT_LT(r, 1e-3);
  // M_0 of a rotation-invariant phantom has no angular harmonics at all.
  EXPECT_LT(mom[0], 1e-20);
  const auto pairs = disk_eigenpairs(4, 3);
  ASSERT_GE(pairs.size(), 10u);
  for (std::size_t k = 1; k < pairs.size(); ++k) EXPECT_LE(pairs[k - 1].lambda, pairs[k].lambda);
  const auto orth = check_orthogonality(g, std::span(pairs).first(10));
  for (double r : orth) EXPECT_LT(r, 1e-3);
  for (const auto& row : check_bessel_zeros(g, 4, 3))
    for (double r : row) EXPECT_LT(r, 1e-2);
  EXPECT_TRUE(validate_range(g, 5, 4, 3).passed);
}

TEST(RangeCheck, ZeroDataHasZeroResiduals) {
  auto g = centered_disk_data(64, 64);
  std::fill(g.values.begin(), g.values.end(), 0.0);
  for (double r : check_moments(g, 3)) EXPECT_EQ(r, 0.0);
  for (double r : check_orthogonality(g, disk_eigenpairs(2, 2))) EXPECT_EQ(r, 0.0);
  EXPECT_EQ(max_of(check_bessel_zeros(g, 2, 2)), 0.0);
}

TEST(RangeCheck, NoiseRaisesEveryFamilyTenfold) {
  const auto clean = validate_range(centered_disk_data(), 5, 4, 3);
  const auto noisy = validate_range(add_noise(centered_disk_data(), 0.05, 11), 5, 4, 3);
  EXPECT_GE(noisy.max_moments, 10.0 * clean.max_moments);
  EXPECT_GE(noisy.max_orthogonality, 10.0 * clean.max_orthogonality);
  EXPECT_GE(noisy.max_bessel, 10.0 * clean.max_bessel);
  EXPECT_FALSE(noisy.passed);
}

TEST(RangeCheck, BesselWitnessFailsOrthogonality) {
  auto g = centered_disk_data(128, 256);
  const double l1 = disk_eigenpairs(0, 1)[0].lambda;
  EXPECT_NEAR(bessel_j(0, l1), 0.0, 1e-12);
  for (std::size_t i = 0; i < g.detectors.size(); ++i)
    for (int j = 0; j < g.time.samples; ++j) g.at(i, j) = bessel_j(0, l1 * g.time.at(j));
  const DiskEigen first{0, l1};
  EXPECT_GT(check_orthogonality(g, std::span(&first, 1))[0], 1e-2);
}

TEST(RangeCheck, ResidualsAreScaleInvariant) {
  const auto g = add_noise(centered_disk_data(128, 128), 0.02, 3);
  auto scaled = g;
  for (double& v : scaled.values) v *= 37.5;
  const auto a = validate_range(g, 3, 3, 2), b = validate_range(scaled, 3, 3, 2);
  EXPECT_NEAR(a.max_moments, b.max_moments, 1e-12);
  EXPECT_NEAR(a.max_orthogonality, b.max_orthogonality, 1e-12);
  EXPECT_NEAR(a.max_bessel, b.max_bessel, 1e-12);
}

// An asymmetric phantom keeps every angular order populated; for a centred
// disk the orders m > 0 of the Bessel check would hold noise only.
TEST(RangeCheck, OrthogonalityAndBesselResidualsRankTogether) {
  Phantom p(2);
  p.add_smooth_bump({0.3, 0.1, 0}, 0.4, 1.0, 100).add_smooth_bump({-0.2, -0.3, 0}, 0.3, 0.6, 100);
  const auto clean = forward_analytic(p, make_detectors(Geometry::Circle, 1.0, 128), TimeGrid{2.0, 128}, DataKind::Mean);
  std::vector<double> orth, bes;
  int seed = 1;
  for (double level : {1e-5, 3e-5, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 3e-1}) {
    const auto r = validate_range(add_noise(clean, level, std::uint64_t(seed++)), 3, 3, 3);
    orth.push_back(r.max_orthogonality);
    bes.push_back(r.max_bessel);
  }
  EXPECT_GT(spearman(orth, bes), 0.8);
}

TEST(RangeCheck, RefusesUnsupportedGeometry) {
  const auto sphere = forward_analytic(Phantom(3), make_detectors(Geometry::Sphere, 1.0, 4), TimeGrid{2.0, 16}, DataKind::Mean);
  EXPECT_THROW(check_moments(sphere, 2), ValidationError);
  const auto square = forward_analytic(Phantom(2), make_detectors(Geometry::Square, 1.0, 8), TimeGrid{2.0, 16}, DataKind::Mean);
  EXPECT_THROW(check_orthogonality(square, disk_eigenpairs(1, 1)), ValidationError);
  // 2 * (2 k_max) + 1 = 21 detectors are required for k_max = 5.
  EXPECT_THROW(check_moments(centered_disk_data(20, 32), 5), ValidationError);
  EXPECT_NO_THROW(check_moments(centered_disk_data(21, 32), 5));
}
