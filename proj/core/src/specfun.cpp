#include "tat/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "tat/error.hpp"
#include "tat/point.hpp"

namespace tat {

namespace {

constexpr double kSeam = 12.0;
constexpr double kEuler = 0.57721566490153286061;

double j_series(int m, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  for (int k = 1; k <= m; ++k) term *= 0.5 * x / k;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (double(k) * (k + m));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Large-argument expansion of J_nu and Y_nu for nu in {0, 1}.
void hankel(int nu, double x, double& j, double& y) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, a = 1.0, last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(a) > last) break;
    last = std::abs(a);
    // Terms alternate P, Q, P, Q with signs +, -, -, + ...
    const int r = k % 4;
    if (r == 1) q += a;
    else if (r == 2) p -= a;
    else if (r == 3) q -= a;
    else p += a;
    if (last < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double s = std::sqrt(2.0 / (kPi * x));
  j = s * (p * std::cos(chi) - q * std::sin(chi));
  y = s * (p * std::sin(chi) + q * std::cos(chi));
}

// Backward recurrence normalized by J_0 + 2 sum J_2k = 1.
double j_miller(int m, double x) {
  int n = 2 * ((std::max(m, int(x)) + 30 + int(std::sqrt(40.0 * std::max(m, int(x))))) / 2);
  double next = 0.0, cur = 1e-300, norm = 0.0, result = 0.0;
  for (int k = n; k > 0; --k) {
    const double prev = 2.0 * k / x * cur - next;
    next = cur;
    cur = prev;
    if (k - 1 == m) result = cur;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int m, double x) {
  if (m < 0) throw ValidationError("m", "order must be nonnegative");
  if (x < 0.0) throw ValidationError("x", "argument must be nonnegative");
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (x < kSeam) return j_series(m, x);
  if (m >= x) return j_miller(m, x);
  double j0, j1, y;
  hankel(0, x, j0, y);
  hankel(1, x, j1, y);
  if (m == 0) return j0;
  for (int k = 1; k < m; ++k) {
    const double j2 = 2.0 * k / x * j1 - j0;
    j0 = j1;
    j1 = j2;
  }
  return j1;
}

double bessel_jp(int m, double x) {
  if (m == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x));
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y0: x must be positive");
  if (x >= kSeam) {
    double j, y;
    hankel(0, x, j, y);
    return y;
  }
  const double q = 0.25 * x * x;
  double term = 1.0, harmonic = 0.0, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (double(k) * k);
    harmonic += 1.0 / k;
    const double add = -term * harmonic;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 / kPi * ((std::log(0.5 * x) + kEuler) * j_series(0, x) + sum);
}

double bessel_y1(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y1: x must be positive");
  if (x >= kSeam) {
    double j, y;
    hankel(1, x, j, y);
    return y;
  }
  // psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
  const double q = 0.25 * x * x;
  double term = 0.5 * x, hk = 0.0, sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      term *= -q / (double(k) * (k + 1));
      hk += 1.0 / k;
    }
    const double add = term * (hk + hk + 1.0 / (k + 1));
    sum += add;
    if (k > 0 && std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 / kPi * (std::log(0.5 * x) + kEuler) * j_series(1, x) - 2.0 / (kPi * x) - sum / kPi;
}

BesselZeroTable bessel_zeros(int m, int count) {
  if (count < 1) throw ValidationError("count", "need at least one zero");
  if (m < 0) throw ValidationError("m", "order must be nonnegative");
  BesselZeroTable table;
  table.order = m;
  const double step = 0.25;
  double a = std::max(double(m), step);
  double fa = bessel_j(m, a);
  int k = 0;
  while (int(table.zeros.size()) < count) {
    const double b = a + step;
    const double fb = bessel_j(m, b);
    if (fa == 0.0 || fa * fb < 0.0) {
      ++k;
      double lo = a, hi = b, flo = fa;
      // McMahon estimate of the k-th zero.
      const double beta = (k + 0.5 * m - 0.25) * kPi;
      double x = beta - (4.0 * m * m - 1.0) / (8.0 * beta);
      if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
      for (int it = 0; it < 100; ++it) {
        const double f = bessel_j(m, x);
        if (f == 0.0) break;
        if ((f < 0.0) == (flo < 0.0)) {
          lo = x;
          flo = f;
        } else {
          hi = x;
        }
        double nx = x - f / bessel_jp(m, x);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        const bool done = std::abs(nx - x) < 1e-15 * x;
        x = nx;
        if (done || hi - lo < 1e-15 * x) break;
      }
      table.zeros.push_back(x);
    }
    a = b;
    fa = fb;
  }
  return table;
}

}  // namespace tat
