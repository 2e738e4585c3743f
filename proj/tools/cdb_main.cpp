#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cdb/complexspace.hpp"
#include "cdb/diffbody.hpp"
#include "cdb/errors.hpp"
#include "cdb/harmonic.hpp"
#include "cdb/jsonio.hpp"
#include "cdb/planar.hpp"
#include "cdb/svgout.hpp"
#include "cdb/verify.hpp"

namespace {

using cdb::AnyBody;
using cdb::AtomicMeasure1;
using cdb::BallCm;
using cdb::Polygon2;
using cdb::PolytopeCm;
using cdb::R4;
using cdb::SampledSupport2;
using cdb::SupportOracleCm;
using nlohmann::json;

// C enters every operator through its surface area measure, so a measure1
// input is as good as a polygon: reconstruct the (centered) body.
Polygon2 resolve_planar_c(const AnyBody& c, const char* cmd) {
  if (const Polygon2* p = std::get_if<Polygon2>(&c)) return *p;
  if (const AtomicMeasure1* mu = std::get_if<AtomicMeasure1>(&c))
    return cdb::body_from_measure(*mu);
  throw cdb::InvalidInput(std::string(cmd) + ": C must be polygon2 or measure1");
}

int run_compute(const std::string& c_path, const std::string& k_path,
                const std::string& out_path) {
  const AnyBody c_any = cdb::load_body(c_path);
  const AnyBody k_any = cdb::load_body(k_path);
  AnyBody out;
  if (const SampledSupport2* ks = std::get_if<SampledSupport2>(&k_any)) {
    if (const SampledSupport2* cs = std::get_if<SampledSupport2>(&c_any)) {
      out = cdb::dc_planar_sampled(*cs, *ks);
    } else {
      out = cdb::dc_planar_sampled(resolve_planar_c(c_any, "compute"), *ks);
    }
  } else {
    const Polygon2 c = resolve_planar_c(c_any, "compute");
    if (const Polygon2* kp = std::get_if<Polygon2>(&k_any)) {
      out = cdb::dc_planar(c, *kp);
    } else if (const PolytopeCm* kc = std::get_if<PolytopeCm>(&k_any)) {
      out = cdb::dc_polytope(c, *kc);
    } else if (const BallCm* kb = std::get_if<BallCm>(&k_any)) {
      out = cdb::dc_polytope(c, *kb);
    } else {
      throw cdb::InvalidInput(
          "compute: K must be polygon2, sampled2, polytope_cm or ball_cm");
    }
  }
  cdb::save_body(out, out_path);
  const json summary = {{"ok", true},
                        {"out", out_path},
                        {"kind", cdb::to_json(out).at("kind")}};
  std::cout << summary.dump() << "\n";
  return 0;
}

int run_fourier(const std::string& body_path, int cutoff,
                const std::string& convention) {
  const AnyBody body = cdb::load_body(body_path);
  const cdb::Spectrum::Convention conv =
      convention == "raw" ? cdb::Spectrum::Convention::kRaw
                          : cdb::Spectrum::Convention::kMultiplier;
  cdb::Spectrum spec;
  if (const Polygon2* p = std::get_if<Polygon2>(&body)) {
    spec = cdb::fourier_support(*p, cutoff, conv);
  } else if (const SampledSupport2* s = std::get_if<SampledSupport2>(&body)) {
    spec = cdb::fourier_support(*s, cutoff, conv);
  } else if (const AtomicMeasure1* mu = std::get_if<AtomicMeasure1>(&body)) {
    spec = cdb::fourier_measure(*mu, cutoff, conv);
  } else {
    throw cdb::InvalidInput("fourier: body must be polygon2, sampled2 or measure1");
  }
  json rows = json::array();
  for (int j = -cutoff; j <= cutoff; ++j) {
    const std::complex<double> v = spec.at(j);
    rows.push_back({{"j", j}, {"re", v.real()}, {"im", v.imag()}});
  }
  const json out = {{"kind", "spectrum"},
                    {"convention", convention},
                    {"J", cutoff},
                    {"coefficients", std::move(rows)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_multipliers(const std::string& c_path, int k_max) {
  const Polygon2 c = resolve_planar_c(cdb::load_body(c_path), "multipliers");
  const cdb::MultiplierTable table(c, k_max);
  json rows = json::array();
  for (int k = 0; k <= k_max; ++k) {
    for (int l = 0; l <= k_max; ++l) {
      const std::complex<double> v = table.at(k, l);
      rows.push_back({{"k", k}, {"l", l}, {"re", v.real()}, {"im", v.imag()}});
    }
  }
  const json out = {{"kind", "multipliers"}, {"kmax", k_max},
                    {"entries", std::move(rows)}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

json flags_json(const cdb::verify::ClassifyFlags& f) {
  return {{"ball", f.ball},
          {"constant_width", f.constant_width},
          {"symmetric", f.symmetric},
          {"s1_invariant", f.s1_invariant},
          {"universal", f.universal}};
}

int run_classify(const std::string& c_path, const std::string& k_path, int cut,
                 double eps) {
  const Polygon2 c = resolve_planar_c(cdb::load_body(c_path), "classify");
  const AnyBody k_any = cdb::load_body(k_path);
  cdb::verify::ClassifyReport rep;
  if (const Polygon2* kp = std::get_if<Polygon2>(&k_any)) {
    rep = cdb::verify::classify(c, *kp, cut, eps);
  } else if (const SampledSupport2* ks = std::get_if<SampledSupport2>(&k_any)) {
    rep = cdb::verify::classify(c, *ks, cut, eps);
  } else if (const PolytopeCm* kc = std::get_if<PolytopeCm>(&k_any)) {
    cdb::verify::ClassifyC2Options opts;
    opts.degree_cut = cut;
    opts.eps = eps;
    rep = cdb::verify::classify_c2(c, *kc, opts);
  } else if (const BallCm* kb = std::get_if<BallCm>(&k_any)) {
    cdb::verify::ClassifyC2Options opts;
    opts.degree_cut = cut;
    opts.eps = eps;
    rep = cdb::verify::classify_c2(c, *kb, opts);
  } else {
    throw cdb::InvalidInput(
        "classify: K must be polygon2, sampled2, polytope_cm or ball_cm");
  }
  const json out = {{"kind", "classification"},
                    {"predicted", flags_json(rep.predicted)},
                    {"observed", flags_json(rep.observed)},
                    {"agree", rep.agree()},
                    {"agree_geometric", rep.agree_geometric()}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, std::size_t samples,
               int planar_pairs, int c2_pairs, const std::string& json_out) {
  cdb::verify::SuiteOptions opts;
  opts.run_planar = suite == "all" || suite == "planar";
  opts.run_complex2 = suite == "all" || suite == "complex2";
  opts.run_harmonic = suite == "all" || suite == "harmonic";
  opts.seed = seed;
  opts.mc_samples = samples;
  opts.planar_pairs = planar_pairs;
  opts.c2_pairs = c2_pairs;
  const cdb::verify::SuiteResult result = cdb::verify::run_suite(opts);
  for (const auto& line : result.lines) {
    std::printf("[%s] %-28s value=%-12.4e bound=%-12.4e %s\n",
                line.pass ? "PASS" : "FAIL", line.name.c_str(), line.value,
                line.bound, line.detail.c_str());
  }
  std::printf("suite: %s (%zu lines)\n", result.pass() ? "PASS" : "FAIL",
              result.lines.size());
  if (!json_out.empty()) {
    json lines = json::array();
    for (const auto& line : result.lines) {
      lines.push_back({{"name", line.name},
                       {"pass", line.pass},
                       {"value", line.value},
                       {"bound", line.bound},
                       {"detail", line.detail}});
    }
    cdb::save_json({{"pass", result.pass()}, {"lines", std::move(lines)}},
                   json_out);
  }
  return result.pass() ? 0 : 1;
}

R4 parse_direction(const std::string& text) {
  R4 xi{0.0, 0.0, 0.0, 0.0};
  std::size_t pos = 0;
  int count = 0;
  while (pos < text.size() && count < 4) {
    std::size_t used = 0;
    xi[count++] = std::stod(text.substr(pos), &used);
    pos += used;
    if (pos < text.size()) {
      if (text[pos] != ',') throw cdb::InvalidInput("render: bad --project list");
      ++pos;
    }
  }
  if (pos < text.size()) throw cdb::InvalidInput("render: bad --project list");
  double n2 = 0.0;
  for (double v : xi) n2 += v * v;
  if (n2 <= 0.0) throw cdb::InvalidInput("render: --project must be nonzero");
  const double inv = 1.0 / std::sqrt(n2);
  for (double& v : xi) v *= inv;
  return xi;
}

// Shadow of a weighted-rotation body on the complex line spanned by xi: the
// projection of a Minkowski sum is the Minkowski sum of the projections.
Polygon2 oracle_shadow(const SupportOracleCm& d, const R4& xi) {
  if (d.terms().empty()) return Polygon2({cdb::Vec2{0.0, 0.0}});
  Polygon2 acc;
  bool first = true;
  for (const auto& t : d.terms()) {
    Polygon2 piece;
    if (const PolytopeCm* p = std::get_if<PolytopeCm>(&t.base)) {
      piece = cdb::project_to_complex_line(
          cdb::complex_scale(*p, std::polar(t.s, t.theta)), xi);
    } else {
      const BallCm& b = std::get<BallCm>(t.base);
      piece = cdb::sample_disc(256, t.s * b.radius).to_polygon();
    }
    acc = first ? piece : cdb::minkowski_sum(acc, piece);
    first = false;
  }
  return acc;
}

int run_render(const std::string& body_path, const std::string& svg_path,
               const std::string& project, int size_px) {
  const AnyBody body = cdb::load_body(body_path);
  const R4 xi = parse_direction(project);
  Polygon2 shape;
  if (const Polygon2* p = std::get_if<Polygon2>(&body)) {
    shape = *p;
  } else if (const SampledSupport2* s = std::get_if<SampledSupport2>(&body)) {
    shape = s->to_polygon();
  } else if (const AtomicMeasure1* mu = std::get_if<AtomicMeasure1>(&body)) {
    shape = cdb::body_from_measure(*mu);
  } else if (const PolytopeCm* k = std::get_if<PolytopeCm>(&body)) {
    shape = cdb::project_to_complex_line(*k, xi);
  } else if (const BallCm* b = std::get_if<BallCm>(&body)) {
    shape = cdb::sample_disc(256, b->radius).to_polygon();
  } else {
    shape = oracle_shadow(std::get<SupportOracleCm>(body), xi);
  }
  cdb::SvgOptions opts;
  opts.size_px = size_px;
  cdb::write_svg(svg_path, cdb::svg_document(shape, opts));
  const json summary = {{"ok", true}, {"svg", svg_path},
                        {"vertices", shape.size()}};
  std::cout << summary.dump() << "\n";
  return 0;
}

int error_out(const char* type, const std::string& message) {
  const json err = {{"error", {{"type", type}, {"message", message}}}};
  std::cout << err.dump() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex difference body toolkit: constructions, spectral "
               "tables, verification suites and figures"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string c_path;
  std::string k_path;
  std::string out_path;
  auto* compute = app.add_subcommand(
      "compute", "Build the weighted-rotation body of K under C");
  compute->add_option("--C", c_path, "C body file (polygon2 or measure1)")
      ->required();
  compute->add_option("--K", k_path, "K body file")->required();
  compute->add_option("--out", out_path, "output body file")->required();
  compute->callback([&] { exit_code = run_compute(c_path, k_path, out_path); });

  std::string body_path;
  int cutoff = 32;
  std::string convention = "multiplier";
  auto* fourier = app.add_subcommand(
      "fourier", "Circle spectrum of a planar body or measure");
  fourier->add_option("--body", body_path, "body file")->required();
  fourier->add_option("--J", cutoff, "coefficient cutoff")
      ->check(CLI::PositiveNumber);
  fourier->add_option("--convention", convention, "raw or multiplier")
      ->check(CLI::IsMember({"raw", "multiplier"}));
  fourier->callback(
      [&] { exit_code = run_fourier(body_path, cutoff, convention); });

  int k_max = 6;
  auto* multipliers = app.add_subcommand(
      "multipliers", "Bidegree multiplier table of C");
  multipliers->add_option("--C", c_path, "C body file")->required();
  multipliers->add_option("--kmax", k_max, "maximal bidegree index")
      ->check(CLI::NonNegativeNumber);
  multipliers->callback([&] { exit_code = run_multipliers(c_path, k_max); });

  int cut = 16;
  double eps = 1e-6;
  auto* classify = app.add_subcommand(
      "classify", "Predicted vs observed structure flags of the image body");
  classify->add_option("--C", c_path, "C body file")->required();
  classify->add_option("--K", k_path, "K body file")->required();
  classify->add_option("--cut", cut, "spectral cutoff");
  classify->add_option("--eps", eps, "relative zero-test threshold");
  classify->callback(
      [&] { exit_code = run_classify(c_path, k_path, cut, eps); });

  std::string suite = "all";
  std::uint64_t seed = 7;
  std::size_t samples = 200000;
  int planar_pairs = 100;
  int c2_pairs = 20;
  std::string json_out;
  auto* verify = app.add_subcommand(
      "verify", "Run the verification suites over seeded corpora");
  verify->add_option("--suite", suite, "planar, complex2, harmonic or all")
      ->check(CLI::IsMember({"planar", "complex2", "harmonic", "all"}));
  verify->add_option("--seed", seed, "corpus seed");
  verify->add_option("--samples", samples, "Monte-Carlo sample count");
  verify->add_option("--planar-pairs", planar_pairs, "planar corpus size")
      ->check(CLI::PositiveNumber);
  verify->add_option("--c2-pairs", c2_pairs, "complex corpus size")
      ->check(CLI::PositiveNumber);
  verify->add_option("--json-out", json_out, "write the report as JSON");
  verify->callback([&] {
    exit_code = run_verify(suite, seed, samples, planar_pairs, c2_pairs, json_out);
  });

  std::string svg_path;
  std::string project = "1,0,0,0";
  int size_px = 480;
  auto* render = app.add_subcommand("render", "Draw a body as an SVG figure");
  render->add_option("--body", body_path, "body file")->required();
  render->add_option("--svg", svg_path, "output SVG file")->required();
  render->add_option("--project", project,
                     "complex line for higher-dimensional bodies, e.g. 1,0,0,0");
  render->add_option("--size", size_px, "canvas side in pixels")
      ->check(CLI::PositiveNumber);
  render->callback(
      [&] { exit_code = run_render(body_path, svg_path, project, size_px); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    return error_out("usage", e.what());
  } catch (const cdb::InvalidInput& e) {
    return error_out("schema", e.what());
  } catch (const cdb::ResolutionError& e) {
    return error_out("resolution", e.what());
  } catch (const cdb::MeasureError& e) {
    return error_out("measure", e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_out("schema", e.what());
  }
  return exit_code;
}
