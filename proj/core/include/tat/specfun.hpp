#pragma once

#include <vector>

namespace tat {

/// Bessel function of the first kind J_m(x), m >= 0, x >= 0.
double bessel_j(int m, double x);

/// dJ_m/dx = (J_{m-1} - J_{m+1}) / 2, with J_{-1} = -J_1.
double bessel_jp(int m, double x);

/// Neumann functions of orders 0 and 1. Throw std::domain_error for x <= 0.
double bessel_y0(double x);
double bessel_y1(double x);

struct BesselZeroTable {
  int order = 0;
  std::vector<double> zeros;
};

/// First `count` positive zeros of J_m in ascending order.
BesselZeroTable bessel_zeros(int m, int count);

}  // namespace tat
