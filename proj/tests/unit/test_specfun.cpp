#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "tat/specfun.hpp"

using namespace tat;

namespace {

// Bessel's integral J_m(x) = (1/pi) int_0^pi cos(m tau - x sin tau) dtau. The
// integrand extends to a smooth periodic function, so the trapezoid rule
// converges geometrically.
double j_oracle(int m, double x) {
  const int n = 400 + 4 * int(x) + 4 * m;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double tau = M_PI * k / n;
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    s += w * std::cos(m * tau - x * std::sin(tau));
  }
  return s / n;
}

double simpson(auto f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

// Y_nu(x) = (1/pi) int_0^pi sin(x sin t - nu t) dt
//         - (1/pi) int_0^inf (e^{nu t} + e^{-nu t} cos(nu pi)) e^{-x sinh t} dt.
double y_oracle(int nu, double x) {
  const double a = simpson([&](double t) { return std::sin(x * std::sin(t) - nu * t); }, 0.0, M_PI, 4000) / M_PI;
  const double top = std::asinh(60.0 / x);
  const double b =
      simpson([&](double t) { return (std::exp(nu * t) + std::exp(-nu * t) * std::cos(nu * M_PI)) * std::exp(-x * std::sinh(t)); },
              0.0, top, 40000) /
      M_PI;
  return a - b;
}

}  // namespace

TEST(BesselJ, ValuesAtZero) {
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(1, 0.0), 0.0);
  EXPECT_EQ(bessel_j(5, 0.0), 0.0);
}

TEST(BesselJ, MatchesIntegralRepresentation) {
  double worst = 0.0;
  for (int m : {0, 1, 2, 3, 7, 15, 30})
    for (double x = 0.05; x < 60.0; x += 0.731) worst = std::max(worst, std::abs(bessel_j(m, x) - j_oracle(m, x)));
  EXPECT_LT(worst, 1e-10);
}

TEST(BesselJ, BranchesAgreeAcrossTheSeam) {
  for (int m : {0, 1, 4, 13, 20})
    for (double x : {11.999999, 12.0, 12.000001})
      EXPECT_NEAR(bessel_j(m, x), j_oracle(m, x), 1e-10) << m << " " << x;
}

TEST(BesselJ, ThreeTermRecurrence) {
  for (int m = 1; m < 25; ++m)
    for (double x = 0.3; x < 80.0; x += 1.37)
      EXPECT_NEAR(bessel_j(m - 1, x) + bessel_j(m + 1, x), 2.0 * m / x * bessel_j(m, x), 1e-9) << m << " " << x;
}

TEST(BesselJ, DerivativeIdentity) {
  for (double x : {0.5, 3.0, 17.0}) {
    const double h = 1e-5;
    EXPECT_NEAR(bessel_jp(0, x), (bessel_j(0, x + h) - bessel_j(0, x - h)) / (2 * h), 1e-8);
    EXPECT_NEAR(bessel_jp(3, x), (bessel_j(3, x + h) - bessel_j(3, x - h)) / (2 * h), 1e-8);
  }
}

TEST(BesselY, MatchesIntegralRepresentation) {
  for (double x : {0.1, 0.7, 1.0, 2.5, 6.0, 11.9, 12.1, 25.0, 40.0}) {
    EXPECT_NEAR(bessel_y0(x), y_oracle(0, x), 1e-9) << x;
    EXPECT_NEAR(bessel_y1(x), y_oracle(1, x), 1e-9) << x;
  }
}

TEST(BesselY, LogarithmicSingularity) { EXPECT_LT(bessel_y0(1e-6), -8.0); }

TEST(BesselY, ValueAtFirstZeroOfJ0) {
  const double j01 = 2.404825557695773;
  EXPECT_NEAR(bessel_y0(j01), y_oracle(0, j01), 1e-10);
  EXPECT_NEAR(bessel_y0(j01), 0.50992438344848, 1e-12);
}

TEST(BesselY, Wronskian) {
  // J0 Y0' - J0' Y0 with Y0' = -Y1 and J0' = -J1.
  for (double x : {1.0, 2.0, 5.0, 13.0, 30.0}) {
    const double w = -bessel_j(0, x) * bessel_y1(x) + bessel_j(1, x) * bessel_y0(x);
    EXPECT_NEAR(w, 2.0 / (M_PI * x), 1e-9) << x;
  }
}

TEST(BesselY, RejectsNonPositiveArguments) {
  EXPECT_THROW(bessel_y0(0.0), std::domain_error);
  EXPECT_THROW(bessel_y1(-1.0), std::domain_error);
}

TEST(BesselZeros, KnownFirstZeros) {
  EXPECT_NEAR(bessel_zeros(0, 1).zeros[0], 2.404825557695773, 1e-12);
  EXPECT_NEAR(bessel_zeros(1, 1).zeros[0], 3.8317059702075123, 1e-10);
}

TEST(BesselZeros, ResidualsAndOrdering) {
  for (int m = 0; m <= 12; ++m) {
    const auto t = bessel_zeros(m, 30);
    EXPECT_EQ(t.order, m);
    ASSERT_EQ(t.zeros.size(), 30u);
    for (std::size_t k = 0; k < t.zeros.size(); ++k) {
      EXPECT_LT(std::abs(bessel_j(m, t.zeros[k])), 1e-10) << m << " " << k;
      if (k) EXPECT_GT(t.zeros[k], t.zeros[k - 1]);
    }
  }
}

TEST(BesselZeros, SpacingTendsToPi) {
  const auto t = bessel_zeros(0, 40);
  for (int k = 20; k + 1 < 40; ++k) EXPECT_LT(std::abs(t.zeros[k + 1] - t.zeros[k] - M_PI), 0.01);
}

TEST(BesselZeros, ConsecutiveOrdersInterlace) {
  for (int m = 0; m < 8; ++m) {
    const auto a = bessel_zeros(m, 20).zeros;
    const auto b = bessel_zeros(m + 1, 20).zeros;
    for (int k = 0; k + 1 < 20; ++k) {
      int inside = 0;
      for (double z : b) inside += z > a[k] && z < a[k + 1];
      EXPECT_EQ(inside, 1) << m << " " << k;
    }
  }
}
