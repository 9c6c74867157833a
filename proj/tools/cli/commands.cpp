#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "config.hpp"
#include "experiments.hpp"
#include "tat/error.hpp"
#include "tat/fbp2d.hpp"
#include "tat/fbp3d.hpp"
#include "tat/forward.hpp"
#include "tat/parallel.hpp"
#include "tat/range_check.hpp"
#include "tat/series.hpp"
#include "tat/varspeed.hpp"

namespace tat::cli {

namespace {

FbpOptions fbp_options(const json& cfg) {
  const std::string mode = cfg.at("interp").get<std::string>();
  if (mode == "linear") return {TInterp::Linear};
  if (mode == "cubic") return {TInterp::Cubic};
  throw ValidationError("interp", "must be 'linear' or 'cubic'");
}

const ProjectionData& need_projection(const DataFile& d, const std::string& method) {
  if (!d.projection) throw ValidationError("input.kind", method + " needs integral or mean data, not pressure");
  return *d.projection;
}

const WaveRecording& need_recording(const DataFile& d, const std::string& method) {
  if (!d.recording) throw ValidationError("input.kind", method + " needs a pressure recording");
  return *d.recording;
}

std::size_t invalid_count(const ImageGrid& g) {
  std::size_t n = 0;
  for (auto v : g.valid) n += v == 0;
  return n;
}

ImageGrid recon_round(const std::string& method, const ProjectionData& g, const json& cfg) {
  const FbpOptions opt = fbp_options(cfg);
  const int dim = (method == "fpr-lap" || method == "fpr-filt" || method == "kun3d") ? 3 : 2;
  const GridSpec spec = grid_from(cfg, dim, g.detectors.radius);
  if (method == "fpr-lap") return recon_fpr_laplacian(g, spec, opt);
  if (method == "fpr-filt") return recon_fpr_filtered(g, spec, opt);
  if (method == "kun3d") return recon_kun3d(g, spec, opt);
  if (method == "finch-log") return recon_finch_log(g, spec, opt);
  if (method == "finch-filt") return recon_finch_log_filtered(g, spec, opt);
  return recon_kun2d(g, spec, opt);
}

ImageGrid recon_series(const ProjectionData& in, const json& cfg, Outcome& o) {
  const int dim = in.dim();
  const Geometry geo = in.detectors.geometry;
  if (geo != Geometry::Square && geo != Geometry::Box)
    throw ValidationError("detectors.geometry", "series needs square or box detectors");
  const ProjectionData g = in.kind == DataKind::Integral ? in : convert_kind(in, DataKind::Integral);
  const Box domain = Box::centered_cube(dim, g.detectors.radius);
  const GridSpec spec = grid_from(cfg, dim, g.detectors.radius);
  const int k = cfg.at("series").at("K").get<int>();
  const EigenBasis basis = k > 0 ? rect_eigenbasis(domain, k) : rect_eigenbasis_upto(domain, kPi / spec.spacing);
  const auto alpha = series_coefficients(g, basis);
  o.report["modes"] = basis.size();
  return series_sum(alpha, basis, spec);
}

CoefVariant variant_from(const json& cfg) {
  const std::string v = cfg.at("varspeed").at("variant").get<std::string>();
  if (v == "A") return CoefVariant::A;
  if (v == "B") return CoefVariant::B;
  if (v == "C") return CoefVariant::C;
  throw ValidationError("varspeed.variant", "must be A, B or C");
}

ImageGrid recon_varspeed(const std::string& method, const WaveRecording& rec, const json& cfg, Outcome& o) {
  if (rec.detectors.geometry != Geometry::Square)
    throw ValidationError("detectors.geometry", method + " needs square boundary detectors");
  const int m = int(rec.detectors.size() / 4);
  const Box domain = Box::centered_cube(2, rec.detectors.radius);
  const GridSpec lattice = operator_lattice(domain, m);
  const SpeedField speed = speed_from(cfg, lattice);
  const bool unit = cfg.at("speed").at("type").get<std::string>() == "constant";
  const DiscreteOperatorA op = build_operator(domain, unit ? nullptr : &speed, m, varspeed_modes(cfg, m));
  o.report["modes"] = op.modes();
  o.report["krylov_dim"] = op.krylov_dim;
  double tail = 0.0;
  bool warn = false;
  ImageGrid out;
  if (method == "varspeed-series") {
    const auto c = coefficients_varspeed(boundary_moments(rec, op), op, variant_from(cfg));
    tail = c.tail_ratio;
    warn = c.decay_warning;
    out = recon_varspeed_series(c.f, op, lattice);
  } else {
    auto r = recon_operator_form(rec, op, lattice);
    tail = r.tail_ratio;
    warn = r.decay_warning;
    out = std::move(r.image);
  }
  o.report["tail_ratio"] = tail;
  if (warn) o.warnings.push_back("boundary moments have not decayed at T (tail ratio " + std::to_string(tail) + ")");
  return out;
}

fs::path need_path(const fs::path& p, const std::string& what) {
  if (p.empty()) throw ValidationError(what, "path is required");
  return p;
}

}  // namespace

ImageGrid reconstruct(const json& cfg, const DataFile& data, const std::string& method, Outcome& o) {
  static const std::vector<std::string> round = {"fpr-lap", "fpr-filt", "kun3d", "finch-log", "finch-filt", "kun2d"};
  ImageGrid out;
  if (std::find(round.begin(), round.end(), method) != round.end()) {
    out = recon_round(method, need_projection(data, method), cfg);
  } else if (method == "series") {
    out = recon_series(need_projection(data, method), cfg, o);
  } else if (method == "varspeed-series" || method == "varspeed-operator") {
    out = recon_varspeed(method, need_recording(data, method), cfg, o);
  } else {
    throw ValidationError("method", "unknown method '" + method + "'");
  }
  o.report["method"] = method;
  o.report["invalid_samples"] = invalid_count(out);
  return out;
}

json compare_images(const ImageGrid& a, const ImageGrid& b, double mask_radius) {
  const auto& sa = a.spec;
  const auto& sb = b.spec;
  if (sa.dim != sb.dim || sa.shape != sb.shape || sa.origin != sb.origin || sa.spacing != sb.spacing)
    throw ValidationError("b", "images must share one grid");
  const double cell = std::pow(sa.spacing, sa.dim);
  auto norms = [&](bool interior) {
    double d2 = 0.0, b2 = 0.0, dinf = 0.0, binf = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (!a.is_valid(i) || !b.is_valid(i)) continue;
      if (interior && mask_radius > 0.0 && norm(sa.point(i)) >= mask_radius) continue;
      const double d = a[i] - b[i];
      d2 += d * d;
      b2 += b[i] * b[i];
      dinf = std::max(dinf, std::abs(d));
      binf = std::max(binf, std::abs(b[i]));
      ++used;
    }
    json j;
    j["samples"] = used;
    j["l2"] = std::sqrt(d2 * cell);
    j["linf"] = dinf;
    j["rel_l2"] = b2 > 0.0 ? std::sqrt(d2 / b2) : (d2 > 0.0 ? INFINITY : 0.0);
    j["rel_linf"] = binf > 0.0 ? dinf / binf : (dinf > 0.0 ? INFINITY : 0.0);
    return j;
  };
  json out;
  out["all"] = norms(false);
  out["interior"] = norms(true);
  out["mask_radius"] = mask_radius > 0.0 ? json(mask_radius) : json(nullptr);
  return out;
}

Outcome cmd_phantom(const json& cfg, const fs::path& out) {
  const Phantom ph = phantom_from(cfg);
  const double r = cfg.at("detectors").at("radius").get<double>();
  const ImageGrid img = rasterize(ph, grid_from(cfg, ph.dim(), r));
  Outcome o;
  o.report["phantom"] = cfg.at("phantom");
  o.report["shape"] = std::vector<int>(img.spec.shape.begin(), img.spec.shape.begin() + img.spec.dim);
  write_image(img, need_path(out, "out"), o.report);
  return o;
}

Outcome cmd_forward(const json& cfg, const fs::path& in, const fs::path& out) {
  need_path(out, "out");
  Outcome o;
  const std::string model = cfg.at("model").get<std::string>();
  const int dim = in.empty() ? cfg.at("phantom").at("dim").get<int>() : read_image(in).spec.dim;
  o.report["model"] = model;
  if (model == "wave") {
    if (dim != 2) throw ValidationError("phantom.dim", "the wave model runs on the 2D square domain");
    const Box domain = varspeed_domain(cfg);
    const int m = cfg.at("varspeed").at("m").get<int>();
    const GridSpec lattice = operator_lattice(domain, m);
    const ImageGrid f0 = in.empty() ? rasterize(phantom_from(cfg), lattice) : read_image(in);
    if (f0.spec.shape != lattice.shape || f0.spec.spacing != lattice.spacing)
      throw ValidationError("input", "the initial pressure must live on the operator lattice");
    const SpeedField speed = speed_from(cfg, lattice);
    const bool unit = cfg.at("speed").at("type").get<std::string>() == "constant";
    const DetectorSet det = make_detectors(Geometry::Square, 0.5 * domain.length(0), m);
    const double T = cfg.at("varspeed").at("periods").get<double>() * det.diameter() / speed.min();
    const WaveRecording rec = wave_forward(f0, unit ? nullptr : &speed, det, T);
    o.report["T"] = rec.t_max();
    o.report["steps"] = rec.steps;
    o.report["speed"] = cfg.at("speed");
    write_recording(rec, out, o.report);
    return o;
  }
  const DetectorSet det = detectors_from(cfg, dim);
  const TimeGrid time = time_from(cfg, det);
  const DataKind kind = kind_from_string(cfg.at("kind").get<std::string>());
  ProjectionData g;
  if (model == "analytic") {
    if (!in.empty()) throw ValidationError("model", "the analytic model uses the configured phantom, not an image");
    g = forward_analytic(phantom_from(cfg), det, time, kind);
  } else if (model == "quadrature") {
    const ImageGrid img = in.empty() ? rasterize(phantom_from(cfg), grid_from(cfg, dim, det.radius)) : read_image(in);
    g = forward_quadrature(img, det, time, kind, cfg.at("oversample").get<double>());
  } else {
    throw ValidationError("model", "must be 'analytic', 'quadrature' or 'wave'");
  }
  const double level = cfg.at("noise").at("level").get<double>();
  const auto seed = cfg.at("noise").at("seed").get<std::uint64_t>();
  if (level < 0.0) throw ValidationError("noise.level", "must be nonnegative");
  if (level > 0.0) g = add_noise(g, level, seed);
  o.report["noise"] = {{"level", level}, {"seed", seed}};
  if (in.empty()) o.report["phantom"] = cfg.at("phantom");
  write_projection(g, out, o.report);
  return o;
}

Outcome cmd_recon(const json& cfg, const fs::path& in, const fs::path& out) {
  const DataFile data = read_data(need_path(in, "in"));
  if (cfg.at("method").is_null()) throw ValidationError("method", "is required");
  Outcome o;
  const ImageGrid img = reconstruct(cfg, data, cfg.at("method").get<std::string>(), o);
  json side = o.report;
  side["warnings"] = o.warnings;
  write_image(img, need_path(out, "out"), side);
  return o;
}

Outcome cmd_validate(const json& cfg, const fs::path& in) {
  const DataFile data = read_data(need_path(in, "in"));
  const ProjectionData& g = need_projection(data, "validate");
  const json& r = cfg.at("range");
  RangeThresholds th;
  th.moments = r.at("thresholds").at("moments").get<double>();
  th.orthogonality = r.at("thresholds").at("orthogonality").get<double>();
  th.bessel = r.at("thresholds").at("bessel").get<double>();
  const RangeReport rep =
      validate_range(g, r.at("k_max").get<int>(), r.at("m_max").get<int>(), r.at("zeros").get<int>(), th);
  Outcome o;
  o.report["moments"] = rep.moments;
  o.report["orthogonality"] = rep.orthogonality;
  o.report["bessel"] = rep.bessel;
  o.report["max"] = {{"moments", rep.max_moments},
                     {"orthogonality", rep.max_orthogonality},
                     {"bessel", rep.max_bessel}};
  o.report["thresholds"] = r.at("thresholds");
  o.report["passed"] = rep.passed;
  if (!rep.passed) o.warnings.push_back("data violates the range conditions");
  return o;
}

Outcome cmd_compare(const json& cfg, const fs::path& a, const fs::path& b) {
  const json& r = cfg.at("compare").at("mask_radius");
  Outcome o;
  o.report = compare_images(read_image(need_path(a, "a")), read_image(need_path(b, "b")),
                            r.is_null() ? 0.0 : r.get<double>());
  return o;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermoacoustic tomography forward models and reconstructions", "tatrecon"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> sets;
  bool strict = false;
  app.add_option("--config", config_path, "JSON config file; flags override its keys");
  app.add_option("--set", sets, "Override any config key: /json/pointer=value")->take_all();
  app.add_flag("--strict", strict, "Exit with code 3 on numerical-quality warnings");

  // Flags mirroring config keys.
  static const std::vector<std::pair<std::string, std::string>> mirrors = {
      {"--threads", "/threads"},         {"--dim", "/phantom/dim"},          {"--preset", "/phantom/preset"},
      {"--m", "/grid/m"},                {"--lo", "/grid/lo"},               {"--hi", "/grid/hi"},
      {"--geometry", "/detectors/geometry"}, {"--radius", "/detectors/radius"}, {"--detectors", "/detectors/count"},
      {"--arc-span", "/detectors/arc_span"}, {"--arc-start", "/detectors/arc_start"},
      {"--t-max", "/time/t_max"},        {"--samples", "/time/samples"},     {"--kind", "/kind"},
      {"--model", "/model"},             {"--oversample", "/oversample"},    {"--noise", "/noise/level"},
      {"--seed", "/noise/seed"},         {"--speed", "/speed/type"},         {"--speed-amplitude", "/speed/amplitude"},
      {"--method", "/method"},           {"--interp", "/interp"},            {"--modes", "/series/K"},
      {"--vs-m", "/varspeed/m"},         {"--vs-modes", "/varspeed/K"},      {"--variant", "/varspeed/variant"},
      {"--periods", "/varspeed/periods"}, {"--mask-radius", "/compare/mask_radius"}, {"--exp-m", "/experiment/m"}};
  std::map<std::string, std::string> given;
  for (const auto& [flag, key] : mirrors) app.add_option(flag, given[key], "config key " + key);

  fs::path in, outp, a, b;
  std::string exp_name;
  auto* phantom = app.add_subcommand("phantom", "Rasterize the configured phantom");
  phantom->add_option("--out", outp, "Output prefix")->required();
  auto* forward = app.add_subcommand("forward", "Simulate projection data or a pressure recording");
  forward->add_option("--in", in, "Image to project instead of the configured phantom");
  forward->add_option("--out", outp, "Output prefix")->required();
  auto* recon = app.add_subcommand("recon", "Reconstruct an image from data");
  recon->add_option("--in", in, "Projection or pressure file")->required();
  recon->add_option("--out", outp, "Output prefix")->required();
  auto* validate = app.add_subcommand("validate", "Check the range conditions of circular-mean data");
  validate->add_option("--in", in, "Projection file")->required();
  auto* compare = app.add_subcommand("compare", "Error norms between two images");
  compare->add_option("--a", a, "Image")->required();
  compare->add_option("--b", b, "Reference image")->required();
  auto* experiment = app.add_subcommand("experiment", "Run a canned experiment");
  experiment->add_option("name", exp_name, "counterexample | exterior-source | partial-data")->required();
  experiment->add_option("--out", outp, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    json cfg = load_config(config_path);
    for (const auto& [key, text] : given)
      if (!text.empty()) set_key(cfg, key, text);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || s.empty() || s[0] != '/')
        throw ValidationError("set", "expected /json/pointer=value, got '" + s + "'");
      set_key(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (strict) cfg["strict"] = true;
    set_max_threads(cfg.at("threads").get<unsigned>());

    Outcome o;
    if (*phantom) o = cmd_phantom(cfg, outp);
    else if (*forward) o = cmd_forward(cfg, in, outp);
    else if (*recon) o = cmd_recon(cfg, in, outp);
    else if (*validate) o = cmd_validate(cfg, in);
    else if (*compare) o = cmd_compare(cfg, a, b);
    else o = cmd_experiment(cfg, exp_name, outp);

    o.report["warnings"] = o.warnings;
    out << o.report.dump(2) << '\n';
    if (o.report.contains("checks"))
      for (const auto& c : o.report["checks"])
        err << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << c["name"].get<std::string>() << ": "
            << c["value"].get<double>() << ' ' << c["relation"].get<std::string>() << ' '
            << c["threshold"].get<double>() << '\n';
    for (const auto& w : o.warnings) err << "warning: " << w << '\n';
    return (!o.warnings.empty() && cfg.at("strict").get<bool>()) ? kExitWarning : kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace tat::cli
