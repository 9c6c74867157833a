#pragma once

#include <span>

namespace tat {

enum class TInterp { Linear, Cubic };

/// Value at t of samples y_j = y(j * dt), j = 0..n-1; 0 outside [0, (n-1) dt].
double interp_uniform(std::span<const double> y, double dt, double t, TInterp mode = TInterp::Linear);

/// Central differences inside, second-order one-sided at both ends.
void derivative_uniform(std::span<const double> y, double dt, std::span<double> out);
void second_derivative_uniform(std::span<const double> y, double dt, std::span<double> out);

}  // namespace tat
