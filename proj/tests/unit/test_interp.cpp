#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tat/interp.hpp"

using namespace tat;

namespace {
std::vector<double> sample(auto f, int n, double dt) {
  std::vector<double> y(n);
  for (int j = 0; j < n; ++j) y[j] = f(j * dt);
  return y;
}
}  // namespace

TEST(Interp, LinearIsExactForLines) {
  const auto y = sample([](double t) { return 3 * t - 1; }, 11, 0.1);
  for (double t = 0.0; t <= 1.0; t += 0.0173) EXPECT_NEAR(interp_uniform(y, 0.1, t), 3 * t - 1, 1e-13);
}

TEST(Interp, ZeroOutsideTheSampledRange) {
  const std::vector<double> y(5, 1.0);
  EXPECT_EQ(interp_uniform(y, 0.5, -0.01), 0.0);
  EXPECT_EQ(interp_uniform(y, 0.5, 2.01), 0.0);
  EXPECT_EQ(interp_uniform(y, 0.5, 2.0), 1.0);
  EXPECT_EQ(interp_uniform(y, 0.5, 2.0, TInterp::Cubic), 1.0);
}

TEST(Interp, CubicIsExactForQuadraticsInside) {
  const auto f = [](double t) { return 2 * t * t - t + 0.5; };
  const auto y = sample(f, 21, 0.05);
  for (double t = 0.05; t <= 0.95; t += 0.0131) EXPECT_NEAR(interp_uniform(y, 0.05, t, TInterp::Cubic), f(t), 1e-12);
}

TEST(Interp, CubicConvergesFasterThanLinear) {
  const auto f = [](double t) { return std::sin(3 * t); };
  double el = 0, ec = 0;
  const double dt = 0.05;
  const auto y = sample(f, 41, dt);
  for (double t = 0.1; t < 1.9; t += 0.0117) {
    el = std::max(el, std::abs(interp_uniform(y, dt, t) - f(t)));
    ec = std::max(ec, std::abs(interp_uniform(y, dt, t, TInterp::Cubic) - f(t)));
  }
  EXPECT_LT(ec, 0.2 * el);
}

TEST(Differences, ExactForQuadratics) {
  const auto y = sample([](double t) { return t * t - 2 * t; }, 9, 0.25);
  std::vector<double> d1(9), d2(9);
  derivative_uniform(y, 0.25, d1);
  second_derivative_uniform(y, 0.25, d2);
  for (int j = 0; j < 9; ++j) {
    EXPECT_NEAR(d1[j], 2 * (j * 0.25) - 2, 1e-12) << j;
    EXPECT_NEAR(d2[j], 2.0, 1e-11) << j;
  }
}

TEST(Differences, SecondOrderConvergence) {
  auto err = [](int n) {
    const double dt = 1.0 / (n - 1);
    const auto y = sample([](double t) { return std::exp(t); }, n, dt);
    std::vector<double> d(n);
    derivative_uniform(y, dt, d);
    double e = 0;
    for (int j = 0; j < n; ++j) e = std::max(e, std::abs(d[j] - std::exp(j * dt)));
    return e;
  };
  EXPECT_GT(err(21) / err(41), 3.5);
}
