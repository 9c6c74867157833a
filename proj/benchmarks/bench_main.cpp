#include <benchmark/benchmark.h>

#include <cmath>

#include "tat/fbp2d.hpp"
#include "tat/fbp3d.hpp"
#include "tat/forward.hpp"
#include "tat/range_check.hpp"
#include "tat/series.hpp"
#include "tat/specfun.hpp"
#include "tat/varspeed.hpp"
#include "tat/wave.hpp"

using namespace tat;

namespace {

Phantom disk(int dim) {
  Phantom p(dim);
  p.add_ball({{0.1, 0.0, 0.0}, 0.4, 1.0});
  return p;
}

ProjectionData circle_data(int m) {
  return forward_analytic(disk(2), make_detectors(Geometry::Circle, 1.0, 2 * m), TimeGrid{2.0, m}, DataKind::Integral);
}

ProjectionData sphere_data(int m) {
  return forward_analytic(disk(3), make_detectors(Geometry::Sphere, 1.0, m), TimeGrid{2.0, m}, DataKind::Integral);
}

void BM_BesselJ(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(int(state.range(0)), x));
    x = x < 40.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(5)->Arg(20);

void BM_ForwardAnalytic2d(benchmark::State& state) {
  const int m = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(circle_data(m));
}
BENCHMARK(BM_ForwardAnalytic2d)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ForwardQuadrature2d(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto img = rasterize(disk(2), GridSpec::cell_centered(2, -1, 1, m));
  const auto det = make_detectors(Geometry::Circle, 1.0, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(forward_quadrature(img, det, TimeGrid{2.0, m}, DataKind::Integral));
}
BENCHMARK(BM_ForwardQuadrature2d)->Arg(64)->Unit(benchmark::kMillisecond);

template <ImageGrid (*Fn)(const ProjectionData&, const GridSpec&, const FbpOptions&)>
void BM_Recon2d(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto g = circle_data(m);
  const auto spec = GridSpec::cell_centered(2, -1, 1, m);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(g, spec, {}));
  state.SetComplexityN(m);
}
BENCHMARK(BM_Recon2d<recon_finch_log>)->Name("BM_FinchLog")->RangeMultiplier(2)->Range(32, 128)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Recon2d<recon_finch_log_filtered>)->Name("BM_FinchLogFiltered")->RangeMultiplier(2)->Range(32, 128)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Recon2d<recon_kun2d>)->Name("BM_Kun2d")->RangeMultiplier(2)->Range(32, 128)->Complexity()->Unit(benchmark::kMillisecond);

template <ImageGrid (*Fn)(const ProjectionData&, const GridSpec&, const FbpOptions&)>
void BM_Recon3d(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto g = sphere_data(m);
  const auto spec = GridSpec::cell_centered(3, -1, 1, m);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(g, spec, {}));
  state.SetComplexityN(m);
}
BENCHMARK(BM_Recon3d<recon_fpr_filtered>)->Name("BM_FprFiltered")->Arg(16)->Arg(24)->Arg(32)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Recon3d<recon_fpr_laplacian>)->Name("BM_FprLaplacian")->Arg(16)->Arg(24)->Arg(32)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Recon3d<recon_kun3d>)->Name("BM_Kun3d")->Arg(16)->Arg(24)->Arg(32)->Complexity()->Unit(benchmark::kMillisecond);

void BM_SeriesCoefficients(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto g = forward_analytic(disk(2), make_detectors(Geometry::Square, 1.0, 2 * m), TimeGrid{2.0 * std::sqrt(2.0), 4 * m},
                                  DataKind::Integral);
  const auto basis = rect_eigenbasis_upto(Box::centered_cube(2, 1.0), kPi * m / 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(series_coefficients(g, basis));
}
BENCHMARK(BM_SeriesCoefficients)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BuildOperator(benchmark::State& state) {
  const int m = int(state.range(0));
  const Box sq = Box::centered_cube(2, 1.0);
  const auto v = bump_speed(operator_lattice(sq, m), {0.1, -0.1, 0}, 0.6, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(build_operator(sq, &v, m, (m - 1) * (m - 1) / 10));
}
BENCHMARK(BM_BuildOperator)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_WaveForward2d(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto img = rasterize(disk(2), GridSpec::cell_centered(2, -1, 1, m));
  const auto det = make_detectors(Geometry::Circle, 1.0, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(wave_forward(img, nullptr, det, 2.0));
}
BENCHMARK(BM_WaveForward2d)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ValidateRange(benchmark::State& state) {
  const auto g = forward_analytic(disk(2), make_detectors(Geometry::Circle, 1.0, 256), TimeGrid{2.0, 256}, DataKind::Mean);
  for (auto _ : state) benchmark::DoNotOptimize(validate_range(g, 5, 4, 3));
}
BENCHMARK(BM_ValidateRange)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
