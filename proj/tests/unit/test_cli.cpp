#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "io.hpp"
#include "tat/error.hpp"
#include "tat/forward.hpp"

using namespace tat;
using namespace tat::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("tat_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Run {
  int code;
  json report;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tatrecon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(int(argv.size()), argv.data(), out, err);
  json report;
  if (code == kExitOk || code == kExitWarning) report = json::parse(out.str());
  return {code, report, err.str()};
}

std::string bytes(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST(Config, SetKeyParsesJsonOrKeepsText) {
  json cfg = default_config();
  set_key(cfg, "/grid/m", "64");
  set_key(cfg, "/strict", "true");
  set_key(cfg, "/method", "kun2d");
  set_key(cfg, "/phantom/balls", "[{\"center\": [0.1, 0], \"radius\": 0.2, \"value\": 1}]");
  EXPECT_EQ(cfg["grid"]["m"], 64);
  EXPECT_EQ(cfg["strict"], true);
  EXPECT_EQ(cfg["method"], "kun2d");
  EXPECT_EQ(phantom_from(cfg).balls().size(), 1u);
  EXPECT_NEAR(phantom_from(cfg).balls()[0].center[0], 0.1, 0.0);
}

TEST(Config, DerivedDefaults) {
  json cfg = default_config();
  cfg["grid"]["m"] = 40;
  EXPECT_EQ(detectors_from(cfg, 2).size(), 80u);
  EXPECT_EQ(detectors_from(cfg, 3).geometry, Geometry::Sphere);
  const auto t = time_from(cfg, detectors_from(cfg, 2));
  EXPECT_EQ(t.samples, 40);
  EXPECT_DOUBLE_EQ(t.t_max, 2.0);
  const auto g = grid_from(cfg, 2, 1.0);
  EXPECT_EQ(g.shape[0], 40);
  EXPECT_DOUBLE_EQ(g.spacing, 2.0 / 40);
  cfg["phantom"]["preset"] = "nope";
  EXPECT_THROW(phantom_from(cfg), ValidationError);
}

TEST(Io, ImageRoundTripIsBitExact) {
  const auto dir = scratch("image");
  ImageGrid img(GridSpec::cell_centered(3, -1, 1, 6));
  for (std::size_t i = 0; i < img.values.size(); ++i) img[i] = std::sin(1e3 * double(i)) / 3.0;
  img.valid.assign(img.values.size(), 1);
  img.valid[5] = 0;
  img[5] = 0.0;
  write_image(img, dir / "img");
  const auto back = read_image(dir / "img.json");
  EXPECT_EQ(back.values, img.values);
  EXPECT_EQ(back.valid, img.valid);
  EXPECT_EQ(back.spec.shape, img.spec.shape);
  EXPECT_EQ(back.spec.origin, img.spec.origin);
  EXPECT_EQ(back.spec.spacing, img.spec.spacing);
  EXPECT_TRUE(fs::exists(dir / "img.pgm"));
}

TEST(Io, ProjectionRoundTripIsBitExact) {
  const auto dir = scratch("projection");
  Phantom p(2);
  p.add_ball({{0.1, 0.2, 0}, 0.3, 1.0});
  const auto g = forward_analytic(p, make_detectors(Geometry::Arc, 1.3, 17, 2.0, 0.4), TimeGrid{2.6, 33}, DataKind::Mean);
  write_projection(g, dir / "g");
  const auto back = read_data(dir / "g.f64");
  ASSERT_TRUE(back.projection.has_value());
  const auto& q = *back.projection;
  EXPECT_EQ(q.values, g.values);
  EXPECT_EQ(q.kind, g.kind);
  EXPECT_EQ(q.time.t_max, g.time.t_max);
  EXPECT_EQ(q.time.samples, g.time.samples);
  EXPECT_EQ(q.detectors.geometry, Geometry::Arc);
  EXPECT_EQ(q.detectors.positions, g.detectors.positions);
  EXPECT_EQ(q.detectors.normals, g.detectors.normals);
  EXPECT_EQ(q.detectors.weights, g.detectors.weights);
  EXPECT_EQ(q.detectors.arc_span, g.detectors.arc_span);
}

TEST(Compare, IdenticalImagesHaveZeroError) {
  ImageGrid a(GridSpec::cell_centered(2, -1, 1, 8), 2.0);
  const auto r = compare_images(a, a, 0.5);
  EXPECT_EQ(r["all"]["rel_l2"], 0.0);
  EXPECT_EQ(r["interior"]["linf"], 0.0);
  EXPECT_LT(r["interior"]["samples"].get<int>(), r["all"]["samples"].get<int>());
  EXPECT_THROW(compare_images(a, ImageGrid(GridSpec::cell_centered(2, -1, 1, 9)), 0.0), ValidationError);
}

TEST(Cli, ForwardReconCompareRoundTrip) {
  const auto dir = scratch("pipeline");
  const std::string m = "64";
  ASSERT_EQ(run_cli({"--m", m, "--preset", "offset-disk", "phantom", "--out", (dir / "truth").string()}).code, kExitOk);
  ASSERT_EQ(run_cli({"--m", m, "--preset", "offset-disk", "forward", "--out", (dir / "g").string()}).code, kExitOk);
  const auto rec = run_cli({"--m", m, "--method", "kun2d", "recon", "--in", (dir / "g").string(), "--out", (dir / "f").string()});
  ASSERT_EQ(rec.code, kExitOk) << rec.err;
  const auto cmp = run_cli({"--mask-radius", "0.9", "compare", "--a", (dir / "f").string(), "--b", (dir / "truth").string()});
  ASSERT_EQ(cmp.code, kExitOk) << cmp.err;
  EXPECT_LT(cmp.report["interior"]["rel_l2"].get<double>(), 0.2);
}

TEST(Cli, IdenticalConfigsGiveIdenticalBytes) {
  const fs::path dirs[2] = {scratch("determinism_a"), scratch("determinism_b")};
  for (const auto& dir : dirs) {
    ASSERT_EQ(run_cli({"--m", "48", "--preset", "two-disks", "--noise", "0.02", "forward", "--out", (dir / "g").string()}).code,
              kExitOk);
    ASSERT_EQ(
        run_cli({"--m", "48", "--method", "finch-filt", "recon", "--in", (dir / "g").string(), "--out", (dir / "f").string()}).code,
        kExitOk);
  }
  for (const char* name : {"g.json", "g.f64", "f.json", "f.f64", "f.mask", "f.pgm"}) {
    ASSERT_TRUE(fs::exists(dirs[0] / name)) << name;
    EXPECT_EQ(bytes(dirs[0] / name), bytes(dirs[1] / name)) << name;
  }
}

TEST(Cli, ValidationFailuresExitWithTwo) {
  const auto dir = scratch("errors");
  ASSERT_EQ(run_cli({"--m", "32", "forward", "--out", (dir / "g").string()}).code, kExitOk);
  EXPECT_EQ(run_cli({"--m", "32", "--method", "kun3d", "recon", "--in", (dir / "g").string(), "--out", (dir / "f").string()}).code,
            kExitValidation);
  EXPECT_EQ(run_cli({"--m", "32", "--method", "magic", "recon", "--in", (dir / "g").string(), "--out", (dir / "f").string()}).code,
            kExitValidation);
  EXPECT_EQ(run_cli({"--set", "grid/m=3", "phantom", "--out", (dir / "p").string()}).code, kExitValidation);
  EXPECT_EQ(run_cli({"recon", "--in", (dir / "missing").string(), "--out", (dir / "f").string()}).code, kExitValidation);
  EXPECT_EQ(run_cli({"--bogus-flag", "phantom", "--out", (dir / "p").string()}).code, kExitValidation);
}

TEST(Cli, StrictTurnsWarningsIntoExitThree) {
  const auto dir = scratch("strict");
  ASSERT_EQ(run_cli({"--m", "64", "--kind", "mean", "--noise", "0.05", "forward", "--out", (dir / "g").string()}).code, kExitOk);
  const auto lax = run_cli({"--m", "64", "validate", "--in", (dir / "g").string()});
  EXPECT_EQ(lax.code, kExitOk);
  EXPECT_FALSE(lax.report["passed"].get<bool>());
  EXPECT_FALSE(lax.report["warnings"].empty());
  EXPECT_EQ(run_cli({"--m", "64", "--strict", "validate", "--in", (dir / "g").string()}).code, kExitWarning);
}
