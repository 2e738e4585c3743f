#include "cdb/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "cdb/errors.hpp"
#include "cdb/lp.hpp"

namespace cdb::verify {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kKappa4 = kPi * kPi / 2.0;  // volume of the unit ball in R^4

double rel_tol(double scale, double eps = 1e-9) { return eps * (1.0 + std::abs(scale)); }

// The constant s = sum_{i=1..N} 2^{i/2} from the diameter lower bound; it
// only depends on the number of atoms of S(C, .).
double diameter_chain_constant(std::size_t atom_count) {
  double s = 0.0;
  for (std::size_t i = 1; i <= atom_count; ++i)
    s += std::pow(2.0, static_cast<double>(i) / 2.0);
  return s;
}

R4 r4_add(const R4& a, const R4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

R4 r4_sub(const R4& a, const R4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

R4 r4_scale(const R4& a, double s) { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }

double r4_dist(const R4& a, const R4& b) { return norm(r4_sub(a, b), 2); }

}  // namespace

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

bool Report::pass() const {
  for (const BoundLine& l : lines)
    if (l.hard && !l.pass) return false;
  return true;
}

const BoundLine* Report::find(const std::string& name) const {
  for (const BoundLine& l : lines)
    if (l.name == name) return &l;
  return nullptr;
}

void Report::add(const std::string& name, double lhs, double rhs, double tol,
                 bool hard) {
  lines.push_back({name, lhs, rhs, tol, lhs <= rhs + tol, hard});
}

void Report::add_equality(const std::string& name, double a, double b, double tol,
                          bool hard) {
  lines.push_back({name, a, b, tol, std::abs(a - b) <= tol, hard});
}

// ---------------------------------------------------------------------------
// Quermassintegrals, mixed volumes, Brunn-Minkowski (m = 1)
// ---------------------------------------------------------------------------

Report quermass_check_m1(const Polygon2& c, const Polygon2& k,
                         bool expect_area_equality) {
  if (c.empty() || k.empty()) throw InvalidInput("quermass_check_m1: empty body");
  Report rep;
  rep.title = "quermassintegral bounds (m = 1)";
  const double lc = area_measure(c).total_mass();
  const Polygon2 d = dc_planar(c, k);

  const double lhs0 = k.area() * lc * lc;
  const double rhs0 = d.area();
  rep.add("w0_area_lower", lhs0, rhs0, rel_tol(std::max(lhs0, rhs0)));
  if (expect_area_equality)
    rep.add_equality("w0_area_equality", lhs0, rhs0, rel_tol(std::max(lhs0, rhs0)));

  // W_1 is Minkowski linear, so this inequality instance is an equality.
  const double w1_k = 0.5 * k.perimeter();
  const double w1_d = 0.5 * d.perimeter();
  rep.add_equality("w1_perimeter_linear", w1_d, w1_k * lc,
                   rel_tol(std::max(w1_d, w1_k * lc)));
  return rep;
}

Report mixed_volume_check_m1(const Polygon2& c, const Polygon2& k) {
  if (c.empty() || k.empty())
    throw InvalidInput("mixed_volume_check_m1: empty body");
  Report rep;
  rep.title = "mixed volume bound (m = 1)";
  const double lc = area_measure(c).total_mass();
  const Polygon2 d = dc_planar(c, k);
  const Polygon2 sum = minkowski_sum(k, d);
  const double v = 0.5 * (sum.area() - k.area() - d.area());
  const double lhs = lc * k.area();
  rep.add("mixed_volume_lower", lhs, v, rel_tol(std::max(lhs, v)));
  return rep;
}

Report brunn_minkowski_check_m1(const Polygon2& c, const Polygon2& k,
                                const Polygon2& l) {
  if (c.empty() || k.empty() || l.empty())
    throw InvalidInput("brunn_minkowski_check_m1: empty body");
  Report rep;
  rep.title = "Brunn-Minkowski superadditivity of the image";
  const Polygon2 dk = dc_planar(c, k);
  const Polygon2 dl = dc_planar(c, l);
  const Polygon2 dsum = dc_planar(c, minkowski_sum(k, l));
  const double lhs = std::sqrt(dk.area()) + std::sqrt(dl.area());
  const double rhs = std::sqrt(dsum.area());
  rep.add("sqrt_area_superadditive", lhs, rhs, rel_tol(std::max(lhs, rhs)));
  return rep;
}

// ---------------------------------------------------------------------------
// Width / diameter / circumradius chain
// ---------------------------------------------------------------------------

namespace {

// Shared emission of the six chain lines once the scalar summaries of K and
// D_C K are known. `m` enters only through the circumradius constant.
void chain_lines(Report& rep, double lc, std::size_t atoms, int m, double wk_min,
                 double diam_k, double r_k, double wd_min, double wd_max,
                 double diam_d, double r_d, bool segment_c, double tol_scale) {
  const double tol = rel_tol(tol_scale);
  rep.add("width_lower", wk_min * lc, wd_min, tol);
  rep.add("width_upper", wd_max, diam_k * lc, tol);
  rep.add("diameter_upper", diam_d, diam_k * lc, tol);

  const double s = diameter_chain_constant(atoms);
  rep.add("diameter_lower", lc / s * diam_k, diam_d, tol);

  rep.add("circumradius_upper", r_d, r_k * lc, tol);
  const double jung = std::sqrt((2.0 * m + 1.0) / m);
  rep.add("circumradius_lower", lc / s * jung * r_k, r_d, tol, /*hard=*/false);

  if (segment_c) {
    rep.add_equality("segment_width_equality", wd_min, wk_min * lc, tol);
    rep.add_equality("segment_diameter_equality", diam_d, diam_k * lc, tol);
  }
}

}  // namespace

Report width_diameter_check(const Polygon2& c, const Polygon2& k) {
  if (c.empty() || k.empty()) throw InvalidInput("width_diameter_check: empty body");
  Report rep;
  rep.title = "width/diameter/circumradius chain (polygon)";
  const AtomicMeasure1 sc = area_measure(c);
  const double lc = sc.total_mass();
  const Polygon2 d = dc_planar(c, k);
  const Scalars sk = scalars(k);
  const Scalars sd = scalars(d);
  // For polygons min width, diameter and both radii are exact, and the
  // maximal width equals the diameter.
  chain_lines(rep, lc, sc.size(), 1, sk.min_width, sk.diameter, sk.circumradius,
              sd.min_width, sd.diameter, sd.diameter, sd.circumradius,
              c.is_segment(), sk.diameter * lc);
  return rep;
}

Report width_diameter_check(const Polygon2& c, const SampledSupport2& k) {
  if (c.empty() || k.n() == 0)
    throw InvalidInput("width_diameter_check: empty body");
  Report rep;
  rep.title = "width/diameter/circumradius chain (sampled)";
  const AtomicMeasure1 sc = area_measure(c);
  const double lc = sc.total_mass();
  const SampledSupport2 d = dc_planar_sampled(c, k);
  const Scalars sk = scalars(k);
  const Scalars sd = scalars(d);
  chain_lines(rep, lc, sc.size(), 1, sk.min_width, sk.diameter, sk.circumradius,
              sd.min_width, sd.diameter, sd.diameter, sd.circumradius,
              c.is_segment(), sk.diameter * lc);
  return rep;
}

namespace {

// Direction net plus the coordinate axes; all entries are unit vectors.
std::vector<R4> padded_net(int count, std::uint64_t seed) {
  std::vector<R4> net = direction_net(2, count, seed);
  net.push_back({1.0, 0.0, 0.0, 0.0});
  net.push_back({0.0, 1.0, 0.0, 0.0});
  net.push_back({0.0, 0.0, 1.0, 0.0});
  net.push_back({0.0, 0.0, 0.0, 1.0});
  return net;
}

struct C2BodyView {
  std::function<double(const R4&)> support;
  std::function<R4(const R4&)> exposed;
  double diameter = 0.0;      // exact
  double circumradius = 0.0;  // exact
};

C2BodyView view_of(const PolytopeCm& k) {
  C2BodyView v;
  v.support = [&k](const R4& u) { return k.support(u); };
  v.exposed = [&k](const R4& u) { return exposed_point(k, u); };
  for (std::size_t i = 0; i < k.vertices().size(); ++i)
    for (std::size_t j = i + 1; j < k.vertices().size(); ++j)
      v.diameter = std::max(v.diameter, r4_dist(k.vertices()[i], k.vertices()[j]));
  v.circumradius = min_enclosing_ball_r4(k.vertices()).second;
  return v;
}

C2BodyView view_of(const BallCm& k) {
  C2BodyView v;
  const double r = k.radius;
  v.support = [r](const R4& u) { return r * norm(u, 2); };
  v.exposed = [r](const R4& u) {
    const double n = norm(u, 2);
    return n == 0.0 ? R4{r, 0.0, 0.0, 0.0} : r4_scale(u, r / n);
  };
  v.diameter = 2.0 * r;
  v.circumradius = r;
  return v;
}

Report width_core_c2(const Polygon2& c, const C2BodyView& k,
                     const SupportOracleCm& d, int net_count,
                     std::uint64_t seed) {
  Report rep;
  rep.title = "width/diameter/circumradius chain (C^2)";
  const AtomicMeasure1 sc = area_measure(c);
  const double lc = sc.total_mass();
  const std::vector<R4> net = padded_net(net_count, seed);

  // Widths of K over the rotated net {conj(alpha_i) u}. Evaluating exactly
  // these directions makes the width bounds term-wise consequences of
  // w(D, u) = sum_i s_i w(K, conj(alpha_i) u) instead of net artifacts.
  double wk_min = std::numeric_limits<double>::infinity();
  double wk_max = 0.0;
  for (const auto& atom : sc.atoms()) {
    const std::complex<double> bar_alpha = std::polar(1.0, -atom.theta);
    for (const R4& u : net) {
      const R4 v = complex_scale_point(u, 2, bar_alpha);
      const double w = k.support(v) + k.support(r4_scale(v, -1.0));
      wk_min = std::min(wk_min, w);
      wk_max = std::max(wk_max, w);
    }
  }
  if (sc.size() == 0) wk_min = wk_max = 0.0;

  double wd_min = std::numeric_limits<double>::infinity();
  double wd_max = 0.0;
  std::vector<R4> boundary;
  boundary.reserve(2 * net.size());
  for (const R4& u : net) {
    const R4 nu = r4_scale(u, -1.0);
    const double w = d.support(u) + d.support(nu);
    wd_min = std::min(wd_min, w);
    wd_max = std::max(wd_max, w);
    boundary.push_back(exposed_point(d, u));
    boundary.push_back(exposed_point(d, nu));
  }

  // Certified lower estimates for diam(D) and R(D) from exposed points.
  double diam_d = 0.0;
  for (std::size_t i = 0; i < boundary.size(); ++i)
    for (std::size_t j = i + 1; j < boundary.size(); ++j)
      diam_d = std::max(diam_d, r4_dist(boundary[i], boundary[j]));
  const double r_d = min_enclosing_ball_r4(boundary).second;

  const bool segment_c =
      sc.size() == 2 &&
      std::abs(wrap_angle(sc.atoms()[0].theta - sc.atoms()[1].theta) - kPi) < 1e-9;

  const double tol = rel_tol(k.diameter * lc);
  rep.add("width_lower", wk_min * lc, wd_min, tol);
  rep.add("width_upper", wd_max, k.diameter * lc, tol);
  rep.add("diameter_upper", diam_d, k.diameter * lc, tol);
  const double s = diameter_chain_constant(sc.size());
  rep.add("diameter_lower", lc / s * k.diameter, diam_d, tol);
  rep.add("circumradius_upper", r_d, k.circumradius * lc, tol);
  rep.add("circumradius_lower",
          lc / s * std::sqrt(5.0 / 2.0) * k.circumradius, r_d, tol,
          /*hard=*/false);
  if (segment_c) {
    // For segment C the width function of D is l(C) times a rotated width
    // function of K, so the coupled net extrema agree exactly.
    rep.add_equality("segment_width_equality", wd_min, wk_min * lc, tol);
    rep.add_equality("segment_diameter_equality", wd_max, wk_max * lc, tol);
  }
  return rep;
}

}  // namespace

Report width_diameter_check(const Polygon2& c, const PolytopeCm& k,
                            int net_count, std::uint64_t seed) {
  if (c.empty() || k.vertices().empty())
    throw InvalidInput("width_diameter_check: empty body");
  const SupportOracleCm d = dc_polytope(c, k);
  return width_core_c2(c, view_of(k), d, net_count, seed);
}

Report width_diameter_check(const Polygon2& c, const BallCm& k, int net_count,
                            std::uint64_t seed) {
  if (c.empty() || k.radius <= 0.0)
    throw InvalidInput("width_diameter_check: empty body");
  const SupportOracleCm d = dc_polytope(c, k);
  return width_core_c2(c, view_of(k), d, net_count, seed);
}

// ---------------------------------------------------------------------------
// Smallest enclosing ball in R^4 (Welzl)
// ---------------------------------------------------------------------------

namespace {

struct Ball4 {
  R4 c{0.0, 0.0, 0.0, 0.0};
  double r = -1.0;
};

bool ball_contains(const Ball4& b, const R4& p) {
  return r4_dist(b.c, p) <= b.r + 1e-10 * (1.0 + b.r);
}

// Solves the k x k system a t = rhs in place (partial pivoting); k <= 4.
bool solve_small(double a[4][4], double rhs[4], int k) {
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) return false;
    if (piv != col) {
      for (int j = 0; j < k; ++j) std::swap(a[piv][j], a[col][j]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int j = col; j < k; ++j) a[r][j] -= f * a[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int i = 0; i < k; ++i) rhs[i] /= a[i][i];
  return true;
}

// Smallest ball with all support points on its boundary: the center lies in
// the affine hull of the support set, determined by equidistance.
Ball4 ball_from_support(const std::vector<const R4*>& sup) {
  Ball4 b;
  if (sup.empty()) return b;  // r = -1: contains nothing
  const R4& p0 = *sup[0];
  const int k = static_cast<int>(sup.size()) - 1;
  if (k == 0) return {p0, 0.0};

  double gram[4][4] = {};
  double rhs[4] = {};
  R4 d[4];
  for (int i = 0; i < k; ++i) d[i] = r4_sub(*sup[i + 1], p0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) gram[i][j] = 2.0 * dot(d[i], d[j], 2);
    rhs[i] = dot(d[i], d[i], 2);
  }
  if (!solve_small(gram, rhs, k)) return b;  // degenerate support set
  R4 center = p0;
  for (int i = 0; i < k; ++i) center = r4_add(center, r4_scale(d[i], rhs[i]));
  return {center, r4_dist(center, p0)};
}

Ball4 welzl4(std::vector<const R4*>& pts, std::size_t n,
             std::vector<const R4*>& support) {
  if (n == 0 || support.size() == 5) return ball_from_support(support);
  Ball4 b = welzl4(pts, n - 1, support);
  if (b.r >= 0.0 && ball_contains(b, *pts[n - 1])) return b;
  support.push_back(pts[n - 1]);
  b = welzl4(pts, n - 1, support);
  support.pop_back();
  // Move-to-front keeps the expected recursion shallow.
  std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n) - 1,
              pts.begin() + static_cast<std::ptrdiff_t>(n));
  return b;
}

}  // namespace

std::pair<R4, double> min_enclosing_ball_r4(std::span<const R4> points) {
  if (points.empty()) throw InvalidInput("min_enclosing_ball_r4: no points");
  std::vector<const R4*> ptrs;
  ptrs.reserve(points.size());
  for (const R4& p : points) ptrs.push_back(&p);
  std::mt19937 rng(987654321u);
  std::shuffle(ptrs.begin(), ptrs.end(), rng);
  std::vector<const R4*> support;
  const Ball4 b = welzl4(ptrs, ptrs.size(), support);
  return {b.c, std::max(b.r, 0.0)};
}

R4 exposed_point(const PolytopeCm& k, const R4& u) {
  if (k.vertices().empty()) throw InvalidInput("exposed_point: empty polytope");
  const R4* best = &k.vertices().front();
  double best_v = -std::numeric_limits<double>::infinity();
  for (const R4& v : k.vertices()) {
    const double s = dot(v, u, k.m());
    if (s > best_v) {
      best_v = s;
      best = &v;
    }
  }
  return *best;
}

R4 exposed_point(const SupportOracleCm& d, const R4& u) {
  R4 out{0.0, 0.0, 0.0, 0.0};
  for (const auto& term : d.terms()) {
    const std::complex<double> alpha = std::polar(1.0, term.theta);
    const R4 v = complex_scale_point(u, d.m(), std::conj(alpha));
    R4 p;
    if (const PolytopeCm* poly = std::get_if<PolytopeCm>(&term.base)) {
      p = exposed_point(*poly, v);
    } else {
      const BallCm& ball = std::get<BallCm>(term.base);
      const double n = norm(v, d.m());
      p = n == 0.0 ? R4{ball.radius, 0.0, 0.0, 0.0}
                   : r4_scale(v, ball.radius / n);
    }
    out = r4_add(out, r4_scale(complex_scale_point(p, d.m(), alpha), term.s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo volume via exact membership
// ---------------------------------------------------------------------------

namespace {

// Prebuilt feasibility model for membership in sum_i s_i alpha_i K_i:
// columns are the convex-combination coefficients of every term's rotated,
// scaled vertex list; rows are the four coordinates plus one normalization
// row per term.
struct MemberModel {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // row-major
  int terms = 0;
};

MemberModel build_member_model(const SupportOracleCm& d) {
  MemberModel model;
  std::vector<R4> generators;
  std::vector<int> owner;  // term index per column
  int term_index = 0;
  for (const auto& term : d.terms()) {
    const PolytopeCm* poly = std::get_if<PolytopeCm>(&term.base);
    if (poly == nullptr)
      throw InvalidInput("oracle_member: ball terms have no vertex program");
    const std::complex<double> rot = std::polar(term.s, term.theta);
    for (const R4& v : poly->vertices()) {
      generators.push_back(complex_scale_point(v, d.m(), rot));
      owner.push_back(term_index);
    }
    ++term_index;
  }
  model.terms = term_index;
  model.cols = static_cast<int>(generators.size());
  model.rows = 4 + model.terms;
  model.a.assign(static_cast<std::size_t>(model.rows) * model.cols, 0.0);
  for (int col = 0; col < model.cols; ++col) {
    for (int r = 0; r < 4; ++r)
      model.a[static_cast<std::size_t>(r) * model.cols + col] = generators[col][r];
    model.a[static_cast<std::size_t>(4 + owner[col]) * model.cols + col] = 1.0;
  }
  return model;
}

bool member(const MemberModel& model, const R4& x, double tol) {
  lp::Problem p;
  p.m = model.rows;
  p.n = model.cols;
  p.a = model.a;
  p.b.assign(model.rows, 1.0);
  for (int r = 0; r < 4; ++r) p.b[r] = x[r];
  p.c.assign(model.cols, 0.0);
  return lp::feasible(p, tol);
}

struct Box4 {
  R4 lo{0.0, 0.0, 0.0, 0.0};
  R4 hi{0.0, 0.0, 0.0, 0.0};
  double volume() const {
    double v = 1.0;
    for (int i = 0; i < 4; ++i) v *= hi[i] - lo[i];
    return v;
  }
};

bool point_in_polygon(const Polygon2& p, const Vec2& x, double tol) {
  const auto& v = p.vertices();
  if (v.size() == 1) return (x - v[0]).norm() <= tol;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    const Vec2 e = b - a;
    if (e.cross(x - a) < -tol * (1.0 + e.norm()) * (1.0 + x.norm())) return false;
  }
  if (v.size() == 2) {
    // Degenerate hull: also clip to the segment's span.
    const Vec2 e = v[1] - v[0];
    const double t = e.dot(x - v[0]);
    if (t < -tol || t > e.norm2() + tol) return false;
  }
  return true;
}

// If the vertex set of K is a full cartesian product of its two complex
// coordinate projections, then K is the product of the projected polygons.
std::optional<std::pair<Polygon2, Polygon2>> split_product(const PolytopeCm& k) {
  const auto less = [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  };
  const auto eq = [](const Vec2& a, const Vec2& b) {
    return a.x == b.x && a.y == b.y;
  };
  std::vector<Vec2> ps;
  std::vector<Vec2> qs;
  ps.reserve(k.vertices().size());
  qs.reserve(k.vertices().size());
  for (const R4& v : k.vertices()) {
    ps.push_back({v[0], v[1]});
    qs.push_back({v[2], v[3]});
  }
  std::sort(ps.begin(), ps.end(), less);
  ps.erase(std::unique(ps.begin(), ps.end(), eq), ps.end());
  std::sort(qs.begin(), qs.end(), less);
  qs.erase(std::unique(qs.begin(), qs.end(), eq), qs.end());
  if (ps.size() * qs.size() != k.vertices().size()) return std::nullopt;
  // Vertices are pairwise distinct, so |V| = |P||Q| pairs inside P x Q must
  // exhaust the product.
  return std::make_optional(std::make_pair(Polygon2(ps), Polygon2(qs)));
}

// Membership oracle for the image as a product of two planar images; valid
// whenever every term's base splits as a product of planar polygons.
std::optional<std::pair<Polygon2, Polygon2>> factored_image(
    const SupportOracleCm& d) {
  if (d.m() != 2) return std::nullopt;
  Polygon2 dp({Vec2{0.0, 0.0}});
  Polygon2 dq({Vec2{0.0, 0.0}});
  for (const auto& term : d.terms()) {
    const PolytopeCm* poly = std::get_if<PolytopeCm>(&term.base);
    if (poly == nullptr) return std::nullopt;
    const auto split = split_product(*poly);
    if (!split.has_value()) return std::nullopt;
    const std::complex<double> rho = std::polar(term.s, term.theta);
    dp = minkowski_sum(dp, rotate_scale(split->first, rho));
    dq = minkowski_sum(dq, rotate_scale(split->second, rho));
  }
  return std::make_optional(std::make_pair(std::move(dp), std::move(dq)));
}

Box4 support_box(const SupportOracleCm& d) {
  Box4 box;
  for (int i = 0; i < 4; ++i) {
    R4 e{0.0, 0.0, 0.0, 0.0};
    e[i] = 1.0;
    const double hi = d.support(e);
    e[i] = -1.0;
    const double lo = -d.support(e);
    if (!std::isfinite(hi) || !std::isfinite(lo) || hi < lo - 1e-12)
      throw InvalidInput("mc_volume_oracle: infeasible sampling box");
    box.lo[i] = lo;
    box.hi[i] = std::max(hi, lo);
  }
  return box;
}

}  // namespace

bool oracle_member(const SupportOracleCm& d, const R4& x, double tol) {
  if (d.terms().empty()) {
    // The zero body: only the origin belongs to it.
    return norm(x, d.m()) <= tol;
  }
  return member(build_member_model(d), x, tol);
}

McVolume mc_volume_oracle(const SupportOracleCm& d, std::size_t samples,
                          std::uint64_t seed) {
  if (samples == 0) throw InvalidInput("mc_volume_oracle: no samples");
  McVolume out;
  out.samples = samples;
  if (d.terms().empty()) return out;  // zero body, zero volume

  const Box4 box = support_box(d);
  out.box_volume = box.volume();
  if (out.box_volume <= 0.0) return out;  // lower-dimensional image

  // Membership: planar point tests when the image factors as a product of
  // two planar images, otherwise the feasibility program.
  const auto factors = factored_image(d);
  MemberModel model;
  if (!factors.has_value()) model = build_member_model(d);
  const auto inside = [&](const R4& x) {
    if (factors.has_value())
      return point_in_polygon(factors->first, {x[0], x[1]}, 1e-9) &&
             point_in_polygon(factors->second, {x[2], x[3]}, 1e-9);
    return member(model, x, 1e-9);
  };

  // A fixed number of substreams keeps the count reproducible regardless of
  // how the chunks are scheduled.
  constexpr unsigned kChunks = 16;
  const unsigned workers =
      std::clamp(std::thread::hardware_concurrency(), 1u, kChunks);
  std::atomic<unsigned> next{0};
  std::array<std::size_t, kChunks> hits_by_chunk{};
  const auto run_chunks = [&]() {
    for (unsigned w = next.fetch_add(1); w < kChunks; w = next.fetch_add(1)) {
      const std::size_t begin = samples * w / kChunks;
      const std::size_t end = samples * (w + 1) / kChunks;
      std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * (w + 1));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::size_t hits = 0;
      for (std::size_t i = begin; i < end; ++i) {
        R4 x;
        for (int c = 0; c < 4; ++c)
          x[c] = box.lo[c] + (box.hi[c] - box.lo[c]) * unit(rng);
        if (inside(x)) ++hits;
      }
      hits_by_chunk[w] = hits;
    }
  };
  std::vector<std::future<void>> futs;
  for (unsigned t = 1; t < workers; ++t)
    futs.push_back(std::async(std::launch::async, run_chunks));
  run_chunks();
  for (auto& f : futs) f.get();
  std::size_t hits = 0;
  for (std::size_t h : hits_by_chunk) hits += h;

  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  out.estimate = out.box_volume * p;
  out.sigma = out.box_volume *
              std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(samples));
  return out;
}

VolumeReport volume_check_m2(const Polygon2& c, const PolytopeCm& k,
                             std::size_t samples, std::uint64_t seed,
                             std::optional<double> exact_volume_k) {
  if (c.empty() || k.vertices().empty())
    throw InvalidInput("volume_check_m2: empty body");
  VolumeReport rep;
  const double lc = area_measure(c).total_mass();
  const SupportOracleCm d = dc_polytope(c, k);

  const McVolume mc = mc_volume_oracle(d, samples, seed);
  rep.estimate = mc.estimate;
  rep.three_sigma = 3.0 * mc.sigma;
  rep.box_volume = mc.box_volume;
  rep.samples = mc.samples;

  double vol_k = 0.0;
  if (exact_volume_k.has_value()) {
    vol_k = *exact_volume_k;
  } else {
    SupportOracleCm self(2, {{1.0, 0.0, k}});
    const McVolume mk = mc_volume_oracle(self, samples, seed + 1);
    vol_k = mk.estimate;
    rep.lower_margin = std::pow(lc, 4) * 3.0 * mk.sigma;
  }
  rep.lower = std::pow(lc, 4) * vol_k;

  const double rk = min_enclosing_ball_r4(k.vertices()).second;
  rep.upper = kKappa4 * std::pow(rk, 4) * std::pow(lc, 4);

  const double slack = rel_tol(rep.upper);
  rep.lower_pass = rep.lower <= rep.estimate + rep.three_sigma + rep.lower_margin + slack;
  rep.upper_pass = rep.estimate - rep.three_sigma <= rep.upper + slack;
  return rep;
}

// ---------------------------------------------------------------------------
// Containment after translation
// ---------------------------------------------------------------------------

std::optional<Vec2> containment_after_translation(double lambda,
                                                  const Polygon2& k,
                                                  const Polygon2& d) {
  if (k.empty() || d.empty())
    throw InvalidInput("containment_after_translation: empty body");
  if (!(lambda >= 0.0))
    throw InvalidInput("containment_after_translation: lambda must be >= 0");

  const AtomicMeasure1 facets = area_measure(d);
  if (facets.size() == 0) {
    // D is a point; containment forces lambda K to be a point too.
    if (lambda == 0.0 || k.size() == 1)
      return d.vertices().front() - rotate_scale(k, lambda).vertices().front();
    return std::nullopt;
  }

  std::vector<HalfPlane> planes;
  planes.reserve(facets.size());
  for (const auto& atom : facets.atoms()) {
    const Vec2 u = unit_vector(atom.theta);
    planes.push_back({u, d.support(u) - lambda * k.support(u)});
  }
  const Scalars sk = scalars(k);
  const Scalars sd = scalars(d);
  const double bound = 2.0 * (sd.centroid.norm() + lambda * sk.centroid.norm() +
                              (1.0 + lambda) * (sd.circumradius + sk.circumradius) +
                              1.0);
  const auto feasible = halfplane_intersection(planes, bound);
  if (!feasible.has_value()) return std::nullopt;
  // Any point of the feasible polygon works; the deepest one is the most
  // robust certificate.
  if (feasible->is_proper()) return max_inscribed_circle(*feasible).first;
  return feasible->centroid();
}

double containment_lambda(const Polygon2& c, const Polygon2& k) {
  if (!k.is_proper())
    throw InvalidInput("containment_lambda: K needs interior points");
  const double lc = area_measure(c).total_mass();
  const Scalars sk = scalars(k);
  return lc * sk.inradius / sk.circumradius;
}

// ---------------------------------------------------------------------------
// Fixed points and iteration
// ---------------------------------------------------------------------------

double fixed_point_defect(const Polygon2& c, const Polygon2& k) {
  if (c.empty() || k.empty()) throw InvalidInput("fixed_point_defect: empty body");
  const double lc = area_measure(c).total_mass();
  const Polygon2 d = steiner_centered(dc_planar(c, k));
  const Polygon2 target = steiner_centered(rotate_scale(k, lc));
  if (d.empty() || target.empty()) return 0.0;
  return hausdorff_distance(d, target);
}

double fixed_point_defect(const Polygon2& c, const SampledSupport2& k) {
  if (c.empty() || k.n() == 0) throw InvalidInput("fixed_point_defect: empty body");
  const double lc = area_measure(c).total_mass();
  const SampledSupport2 d = dc_planar_sampled(c, k);

  const auto centered_values = [](const SampledSupport2& s) {
    const Spectrum spec = fourier_support(s, 1, Spectrum::Convention::kRaw);
    const Vec2 st{spec.at(1).real(), spec.at(1).imag()};
    std::vector<double> h = s.grid_values();
    for (int j = 0; j < s.n(); ++j)
      h[static_cast<std::size_t>(j)] -= st.dot(unit_vector(s.grid_angle(j)));
    return h;
  };
  const std::vector<double> hd = centered_values(d);
  const std::vector<double> hk = centered_values(k);
  double defect = 0.0;
  for (std::size_t j = 0; j < hd.size(); ++j)
    defect = std::max(defect, std::abs(hd[j] - lc * hk[j]));
  return defect;
}

double fixed_point_defect(const Polygon2& c, const BallCm& k, int net_count,
                          std::uint64_t seed) {
  if (c.empty() || k.radius <= 0.0)
    throw InvalidInput("fixed_point_defect: empty body");
  const double lc = area_measure(c).total_mass();
  const SupportOracleCm d = dc_polytope(c, k);
  double defect = 0.0;
  for (const R4& u : padded_net(net_count, seed))
    defect = std::max(defect, std::abs(d.support(u) - lc * k.radius * norm(u, 2)));
  return defect;
}

double fixed_point_defect(const Polygon2& c, const PolytopeCm& k, int net_count,
                          std::uint64_t seed) {
  if (c.empty() || k.vertices().empty())
    throw InvalidInput("fixed_point_defect: empty body");
  const double lc = area_measure(c).total_mass();
  const SupportOracleCm d = dc_polytope(c, k);
  const S3Quadrature quad = s3_quadrature(12, 32, 32);
  const R4 sd = steiner_point_c2([&d](const R4& u) { return d.support(u); }, quad);
  const R4 sk = steiner_point_c2([&k](const R4& u) { return k.support(u); }, quad);
  double defect = 0.0;
  for (const R4& u : padded_net(net_count, seed)) {
    const double hd = d.support(u) - dot(sd, u, 2);
    const double hk = k.support(u) - dot(sk, u, 2);
    defect = std::max(defect, std::abs(hd - lc * hk));
  }
  return defect;
}

IterateReport iterate_check(const Polygon2& c, const Polygon2& k, int n,
                            int j_max, double eps) {
  if (n < 1 || n > 5) throw InvalidInput("iterate_check: N must be in 1..5");
  if (c.empty() || k.empty()) throw InvalidInput("iterate_check: empty body");
  IterateReport rep;
  const double lc = area_measure(c).total_mass();
  rep.scale = std::pow(lc, n - 1);

  const Polygon2 d1 = dc_planar(c, k);
  Polygon2 dn = d1;
  for (int i = 1; i < n; ++i) dn = dc_planar(c, dn);
  const Polygon2 lhs = steiner_centered(dn);
  const Polygon2 rhs = steiner_centered(rotate_scale(d1, rep.scale));
  rep.defect = (lhs.empty() || rhs.empty()) ? 0.0 : hausdorff_distance(lhs, rhs);

  // Condition: every multiplier is either 0 or l(C) times an (N-1)-th root
  // of unity, so that multiplier^{N-1} = l(C)^{N-1} wherever it matters.
  rep.condition = true;
  const MultiplierTable table(c, j_max);
  for (int j = 1; j <= j_max; ++j) {
    const std::complex<double> z = table.at_difference(j) / lc;
    if (std::abs(z) <= eps) continue;
    if (std::abs(std::pow(z, n - 1) - 1.0) > 10.0 * eps * n) {
      rep.condition = false;
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Classification (m = 1)
// ---------------------------------------------------------------------------

namespace {

struct ZeroTest1 {
  std::vector<bool> zero;  // index j in [0, J]
  double scale = 0.0;
};

ZeroTest1 zero_test(const Spectrum& spec, int j_cut, double eps) {
  ZeroTest1 t;
  t.zero.assign(static_cast<std::size_t>(j_cut) + 1, true);
  for (int j = 0; j <= j_cut; ++j) t.scale = std::max(t.scale, std::abs(spec.at(j)));
  if (t.scale <= 0.0) return t;  // point body: everything counts as zero
  for (int j = 0; j <= j_cut; ++j)
    t.zero[static_cast<std::size_t>(j)] = std::abs(spec.at(j)) <= eps * t.scale;
  return t;
}

// Flags from the joint zero pattern: `zero_at(j)` answers whether the degree
// j component of the image body vanishes (for prediction: multiplier or
// source component vanishes). Degree 1 is excluded everywhere as pure
// translation.
template <typename ZeroAt>
ClassifyFlags flags_from(int j_cut, ZeroAt&& zero_at, bool universal_sources) {
  ClassifyFlags f;
  f.ball = true;
  f.constant_width = true;
  f.symmetric = true;
  for (int j = 2; j <= j_cut; ++j) {
    if (!zero_at(j)) {
      f.ball = false;
      if (j % 2 == 0) f.constant_width = false;
      if (j % 2 == 1) f.symmetric = false;
    }
  }
  f.s1_invariant = f.ball;  // in the plane both mean a disc
  f.universal = universal_sources;
  return f;
}

void gate_classify(int j_cut, double eps) {
  if (j_cut < 2 || j_cut > 32)
    throw InvalidInput("classify: cutoff must be in 2..32");
  if (!(eps > 0.0)) throw InvalidInput("classify: eps must be positive");
}

ClassifyReport classify_m1(const Spectrum& sc, const Spectrum& sk,
                           const Spectrum& sd, int j_cut, double eps) {
  const ZeroTest1 zc = zero_test(sc, j_cut, eps);
  const ZeroTest1 zk = zero_test(sk, j_cut, eps);
  const ZeroTest1 zd = zero_test(sd, j_cut, eps);

  const auto nonzero_all = [&](const ZeroTest1& z) {
    if (!z.zero.empty() && z.zero[0]) return false;
    for (int j = 2; j <= j_cut; ++j)
      if (z.zero[static_cast<std::size_t>(j)]) return false;
    return true;
  };

  ClassifyReport rep;
  rep.predicted = flags_from(
      j_cut,
      [&](int j) {
        return zc.zero[static_cast<std::size_t>(j)] ||
               zk.zero[static_cast<std::size_t>(j)];
      },
      nonzero_all(zc) && nonzero_all(zk));
  rep.observed = flags_from(
      j_cut, [&](int j) { return zd.zero[static_cast<std::size_t>(j)]; },
      nonzero_all(zd));
  return rep;
}

}  // namespace

bool ClassifyReport::agree_geometric() const {
  return predicted.ball == observed.ball &&
         predicted.constant_width == observed.constant_width &&
         predicted.symmetric == observed.symmetric &&
         predicted.s1_invariant == observed.s1_invariant;
}

ClassifyReport classify(const Polygon2& c, const Polygon2& k, int j_cut,
                        double eps) {
  gate_classify(j_cut, eps);
  if (c.empty() || k.empty()) throw InvalidInput("classify: empty body");
  const Polygon2 d = dc_planar(c, k);
  return classify_m1(fourier_support(c, j_cut), fourier_support(k, j_cut),
                     fourier_support(d, j_cut), j_cut, eps);
}

ClassifyReport classify(const Polygon2& c, const SampledSupport2& k, int j_cut,
                        double eps) {
  gate_classify(j_cut, eps);
  if (c.empty() || k.n() == 0) throw InvalidInput("classify: empty body");
  const SampledSupport2 d = dc_planar_sampled(c, k);
  return classify_m1(fourier_support(c, j_cut), fourier_support(k, j_cut),
                     fourier_support(d, j_cut), j_cut, eps);
}

// ---------------------------------------------------------------------------
// Classification (m = 2, kernel route)
// ---------------------------------------------------------------------------

namespace {

struct KernelTable {
  int cut = 0;
  std::vector<double> mag;  // max_u |G_{k,l}[h](u)| at index k * (cut+1) + l
  double scale = 0.0;

  double at(int k, int l) const {
    return mag[static_cast<std::size_t>(k) * (cut + 1) + l];
  }
};

// Largest kernel component magnitude over the pole net for every bidegree
// k + l <= cut, for two support samplings sharing one node pass (the source
// body and its image); conjugation symmetry G_{l,k} = conj(G_{k,l}) fills
// k < l. Pairings are cached per pole since they do not depend on (k, l).
std::pair<KernelTable, KernelTable> kernel_tables(
    const std::vector<double>& values_a, const std::vector<double>& values_b,
    const S3Quadrature& quad, const std::vector<R4>& poles, int cut) {
  KernelTable ta;
  KernelTable tb;
  ta.cut = tb.cut = cut;
  ta.mag.assign(static_cast<std::size_t>(cut + 1) * (cut + 1), 0.0);
  tb.mag = ta.mag;

  const std::size_t n = quad.nodes.size();
  std::vector<std::vector<std::complex<double>>> pairings(poles.size());
  for (std::size_t p = 0; p < poles.size(); ++p) {
    pairings[p].resize(n);
    for (std::size_t i = 0; i < n; ++i)
      pairings[p][i] = hermitian_pair(poles[p], quad.nodes[i], 2);
  }

  for (int k = 0; k <= cut; ++k) {
    for (int l = 0; l <= k && k + l <= cut; ++l) {
      const DiskPolynomial poly(k, l, 0);
      double best_a = 0.0;
      double best_b = 0.0;
      for (const auto& pairing : pairings) {
        std::complex<double> acc_a = 0.0;
        std::complex<double> acc_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const std::complex<double> t = quad.weights[i] * poly(pairing[i]);
          acc_a += t * values_a[i];
          acc_b += t * values_b[i];
        }
        best_a = std::max(best_a, std::abs(acc_a));
        best_b = std::max(best_b, std::abs(acc_b));
      }
      const auto at = static_cast<std::size_t>(k) * (cut + 1) + l;
      const auto mirror = static_cast<std::size_t>(l) * (cut + 1) + k;
      ta.mag[at] = ta.mag[mirror] = best_a;
      tb.mag[at] = tb.mag[mirror] = best_b;
    }
  }
  for (double m : ta.mag) ta.scale = std::max(ta.scale, m);
  for (double m : tb.mag) tb.scale = std::max(tb.scale, m);
  return {std::move(ta), std::move(tb)};
}

// Flags over bidegrees (k, l) with k + l <= cut. Degree-one components are
// pure translations and the operator annihilates them, so every flag set
// starts at total degree 2 except S^1-invariance and universality, which
// quantify over all bidegrees of their defining shape.
template <typename ZeroAt>
ClassifyFlags flags_c2(int cut, ZeroAt&& zero_at) {
  ClassifyFlags f;
  f.ball = true;
  f.constant_width = true;
  f.symmetric = true;
  f.s1_invariant = true;
  f.universal = false;  // filled in separately
  for (int k = 0; k <= cut; ++k) {
    for (int l = 0; k + l <= cut; ++l) {
      if (zero_at(k, l)) continue;
      const int deg = k + l;
      if (deg >= 2) {
        f.ball = false;
        if (deg % 2 == 0) f.constant_width = false;
      }
      if (deg >= 3 && deg % 2 == 1) f.symmetric = false;
      if (k != l) f.s1_invariant = false;
    }
  }
  return f;
}

template <typename ZeroAt>
bool universal_c2(int cut, ZeroAt&& zero_at) {
  for (int k = 0; k <= cut; ++k)
    for (int l = 0; k + l <= cut; ++l)
      if (std::abs(k - l) != 1 && zero_at(k, l)) return false;
  return true;
}

ClassifyReport classify_c2_impl(const Polygon2& c,
                                const std::function<double(const R4&)>& support_k,
                                const std::function<double(const R4&)>& support_d,
                                const ClassifyC2Options& opts) {
  if (opts.degree_cut < 2 || opts.degree_cut > 16)
    throw InvalidInput("classify_c2: degree cutoff must be in 2..16");
  if (!(opts.eps > 0.0)) throw InvalidInput("classify_c2: eps must be positive");
  if (opts.n_angle < 2 * opts.degree_cut + 2 || opts.n_angle % 2 != 0)
    throw InvalidInput("classify_c2: angular grid too coarse for the cutoff");

  const int cut = opts.degree_cut;
  const S3Quadrature quad = s3_quadrature(opts.n_r, opts.n_angle, opts.n_angle);
  const std::vector<R4> poles = direction_net(2, opts.poles, opts.seed);

  std::vector<double> hk(quad.nodes.size());
  std::vector<double> hd(quad.nodes.size());
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    hk[i] = support_k(quad.nodes[i]);
    hd[i] = support_d(quad.nodes[i]);
  }
  const auto [gk, gd] = kernel_tables(hk, hd, quad, poles, cut);

  const MultiplierTable table(c, cut);
  const double lc = area_measure(c).total_mass();

  const auto zero_lambda = [&table, &opts, lc](int k, int l) {
    return std::abs(table.at(k, l)) <= opts.eps * std::max(lc, 1e-300);
  };
  const auto zero_k = [&gk, &opts](int k, int l) {
    return gk.scale <= 0.0 || gk.at(k, l) <= opts.eps * gk.scale;
  };
  const auto zero_d = [&gd, &opts](int k, int l) {
    return gd.scale <= 0.0 || gd.at(k, l) <= opts.eps * gd.scale;
  };

  ClassifyReport rep;
  rep.predicted = flags_c2(
      cut, [&](int k, int l) { return zero_lambda(k, l) || zero_k(k, l); });
  rep.predicted.universal =
      universal_c2(cut, zero_lambda) && universal_c2(cut, zero_k);
  rep.observed = flags_c2(cut, zero_d);
  rep.observed.universal = universal_c2(cut, zero_d);
  return rep;
}

}  // namespace

ClassifyReport classify_c2(const Polygon2& c, const PolytopeCm& k,
                           const ClassifyC2Options& opts) {
  if (c.empty() || k.vertices().empty())
    throw InvalidInput("classify_c2: empty body");
  const SupportOracleCm d = dc_polytope(c, k);
  return classify_c2_impl(
      c, [&k](const R4& u) { return k.support(u); },
      [&d](const R4& u) { return d.support(u); }, opts);
}

ClassifyReport classify_c2(const Polygon2& c, const BallCm& k,
                           const ClassifyC2Options& opts) {
  if (c.empty() || k.radius <= 0.0) throw InvalidInput("classify_c2: empty body");
  const SupportOracleCm d = dc_polytope(c, k);
  return classify_c2_impl(
      c, [&k](const R4& u) { return k.radius * norm(u, 2); },
      [&d](const R4& u) { return d.support(u); }, opts);
}

// ---------------------------------------------------------------------------
// Steiner point in C^2
// ---------------------------------------------------------------------------

R4 steiner_point_c2(const std::function<double(const R4&)>& support,
                    const S3Quadrature& quad) {
  if (quad.nodes.size() != quad.weights.size() || quad.nodes.empty())
    throw InvalidInput("steiner_point_c2: malformed quadrature");
  R4 acc{0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const double h = support(quad.nodes[i]);
    acc = r4_add(acc, r4_scale(quad.nodes[i], quad.weights[i] * h));
  }
  return r4_scale(acc, 1.0 / kKappa4);
}

// ---------------------------------------------------------------------------
// Non-surjectivity demonstration
// ---------------------------------------------------------------------------

namespace {

// Distance from the centered target to the best positive rescaling of the
// centered candidate: rho -> d_H(rho D, T) is convex, so a ternary search
// converges to the optimum.
double optimal_scaling_distance(const Polygon2& candidate, const Polygon2& target) {
  const Polygon2 d = steiner_centered(candidate);
  const Polygon2 t = steiner_centered(target);
  const double diam_d = scalars(d).diameter;
  const double diam_t = scalars(t).diameter;
  double lo = 0.0;
  double hi = diam_d > 1e-12 ? 3.0 * diam_t / diam_d : 1.0;
  const auto f = [&](double rho) {
    return hausdorff_distance(rotate_scale(d, rho), t);
  };
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2))
      hi = m2;
    else
      lo = m1;
  }
  return f(0.5 * (lo + hi));
}

}  // namespace

bool NonsurjectivityReport::pass() const {
  return best_distance > threshold && noninjectivity_defect <= 1e-10 &&
         rho_commute_defect <= 1e-10;
}

NonsurjectivityReport nonsurjectivity_demo() {
  NonsurjectivityReport rep;

  // A triangle with pairwise distinct edge lengths is indecomposable: no
  // nontrivial Minkowski combination of rotated copies can reproduce it.
  const Polygon2 target({{0.0, 0.0}, {1.0, 0.0}, {0.3, 0.7}});
  rep.threshold = 0.05 * scalars(target).diameter;

  struct Entry {
    std::string label;
    Polygon2 body;
  };
  const std::vector<Entry> cs = {
      {"segment_axis", Polygon2({{-0.25, 0.0}, {0.25, 0.0}})},
      {"segment_tilt", Polygon2({{0.0, 0.0}, {0.4 * std::cos(0.9), 0.4 * std::sin(0.9)}})},
      {"equilateral", regular_polygon(3, 0.5)},
      {"scalene", Polygon2({{0.0, 0.0}, {0.9, 0.1}, {0.2, 0.6}})},
      {"square", regular_polygon(4, 0.45)},
      {"pentagon", regular_polygon(5, 0.5)},
  };
  const std::vector<Entry> ks = {
      {"equilateral", regular_polygon(3, 0.6)},
      {"scalene", Polygon2({{0.0, 0.0}, {0.8, 0.0}, {0.5, 0.45}})},
      {"square", regular_polygon(4, 0.5)},
      {"pentagon", regular_polygon(5, 0.4)},
      {"hexagon", regular_polygon(6, 0.5)},
      {"quad", Polygon2({{0.0, 0.0}, {0.7, 0.1}, {0.8, 0.6}, {0.1, 0.5}})},
      {"target_itself", target},
  };

  rep.best_distance = std::numeric_limits<double>::infinity();
  for (const Entry& c : cs) {
    for (const Entry& k : ks) {
      const Polygon2 d = dc_planar(c.body, k.body);
      const double dist = optimal_scaling_distance(d, target);
      if (dist < rep.best_distance) {
        rep.best_distance = dist;
        rep.best_label = c.label + "/" + k.label;
      }
    }
  }

  // The operator forgets signs: with a segment it is the classical
  // difference body, and D(-K) = DK.
  const Polygon2 seg({{-0.3, 0.0}, {0.3, 0.0}});
  const Polygon2 k0({{0.0, 0.0}, {0.8, 0.0}, {0.5, 0.45}});
  rep.noninjectivity_defect =
      hausdorff_distance(dc_planar(seg, k0), dc_planar(seg, rotate_scale(k0, -1.0)));

  // Scaling can sit on either argument: D_{rho C} K = D_C (rho K).
  const std::complex<double> rho = std::polar(0.8, 0.6);
  const Polygon2 c0 = regular_polygon(5, 0.5);
  rep.rho_commute_defect = hausdorff_distance(
      dc_planar(rotate_scale(c0, rho), k0), dc_planar(c0, rotate_scale(k0, rho)));
  return rep;
}

// ---------------------------------------------------------------------------
// Dimension table
// ---------------------------------------------------------------------------

std::vector<DimensionCase> dimension_table() {
  // Axis-aligned unit square: facet normals on the coordinate axes.
  const Polygon2 c = regular_polygon(4, std::sqrt(0.5));
  std::vector<DimensionCase> out;

  const auto run = [&](const std::string& label, int l, int a, const PolytopeCm& k) {
    DimensionCase dc;
    dc.label = label;
    dc.l = l;
    dc.a = a;
    dc.expected = 2 * (l - a);
    dc.observed = affine_dim(dc_polytope(c, k));
    out.push_back(dc);
  };

  run("point", 0, 0, PolytopeCm(2, {{0.3, -0.2, 0.5, 0.1}}));
  run("segment_real_axis", 1, 0, segment_cm(2, {0.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}));
  run("segment_diagonal", 1, 0,
      segment_cm(2, {-0.6, -0.2, 0.3, -0.7}, {0.6, 0.2, -0.3, 0.7}));
  run("totally_real_square", 2, 0,
      PolytopeCm(2, {{0.0, 0.0, 0.0, 0.0},
                     {1.0, 0.0, 0.0, 0.0},
                     {0.0, 0.0, 1.0, 0.0},
                     {1.0, 0.0, 1.0, 0.0}}));
  run("square_in_line", 2, 1,
      PolytopeCm(2, {{0.5, 0.5, 0.0, 0.0},
                     {-0.5, 0.5, 0.0, 0.0},
                     {-0.5, -0.5, 0.0, 0.0},
                     {0.5, -0.5, 0.0, 0.0}}));
  run("disc_in_line", 2, 1, disc_in_line_cm(2, 0, 0.8, 24));
  {
    // Square inside the first complex line, extruded along a real direction
    // of the second: aff(K) = C x R meets its rotation in C x {0}.
    std::vector<R4> verts;
    for (double x : {-0.5, 0.5})
      for (double y : {-0.5, 0.5})
        for (double z : {0.0, 1.0}) verts.push_back({x, y, z, 0.0});
    run("prism", 3, 1, PolytopeCm(2, verts));
  }
  run("cube", 4, 2, cube_cm(2, 0.5));
  run("cross_polytope", 4, 2, cross_polytope_cm(2, 0.7));
  return out;
}

// ---------------------------------------------------------------------------
// Corpora
// ---------------------------------------------------------------------------

Polygon2 regular_polygon(int n, double circumradius, double phase) {
  if (n < 3) throw InvalidInput("regular_polygon: need at least 3 vertices");
  if (!(circumradius > 0.0)) throw InvalidInput("regular_polygon: bad radius");
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double ang = phase + kPi / n + kTwoPi * j / n;
    verts.push_back({circumradius * std::cos(ang), circumradius * std::sin(ang)});
  }
  return Polygon2(verts);
}

Polygon2 random_polygon(std::mt19937_64& rng, int vertex_count, double scale) {
  if (vertex_count < 3) throw InvalidInput("random_polygon: need >= 3 vertices");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> angles(static_cast<std::size_t>(vertex_count));
    for (double& a : angles) a = kTwoPi * unit(rng);
    std::sort(angles.begin(), angles.end());
    std::vector<Vec2> pts;
    pts.reserve(angles.size());
    for (double a : angles) {
      const double r = scale * (0.35 + 0.65 * unit(rng));
      pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    const Polygon2 p(pts);
    if (static_cast<int>(p.size()) >= 3) return p;
  }
  throw InvalidInput("random_polygon: degenerate draws");
}

Polygon2 random_zonogon(std::mt19937_64& rng, int generators, double scale) {
  if (generators < 2) throw InvalidInput("random_zonogon: need >= 2 generators");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Polygon2 body({Vec2{0.0, 0.0}});
  for (int i = 0; i < generators; ++i) {
    const double ang = kPi * unit(rng);
    const double len = scale * (0.2 + 0.8 * unit(rng));
    const Vec2 v{len * std::cos(ang), len * std::sin(ang)};
    body = minkowski_sum(body, Polygon2({-v, v}));
  }
  return body;
}

namespace {

// The classification corpus promises that zero coefficients are structural:
// generic bodies are resampled until every translation-invariant coefficient
// sits well above the zero-test threshold.
constexpr int kCorpusCut = 16;
constexpr double kSpectralMargin = 3e-3;

bool generic_margin_ok(const Polygon2& p) {
  const Spectrum s = fourier_support(p, kCorpusCut);
  double scale = 0.0;
  for (int j = 0; j <= kCorpusCut; ++j) scale = std::max(scale, std::abs(s.at(j)));
  if (scale <= 0.0) return false;
  for (int j = 2; j <= kCorpusCut; ++j)
    if (std::abs(s.at(j)) < kSpectralMargin * scale) return false;
  return true;
}

bool zonogon_margin_ok(const Polygon2& p) {
  const Spectrum s = fourier_support(p, kCorpusCut);
  double scale = 0.0;
  for (int j = 0; j <= kCorpusCut; ++j) scale = std::max(scale, std::abs(s.at(j)));
  if (scale <= 0.0) return false;
  for (int j = 2; j <= kCorpusCut; ++j) {
    const double mag = std::abs(s.at(j));
    if (j % 2 == 0 && mag < kSpectralMargin * scale) return false;
    if (j % 2 == 1 && mag > 1e-12 * scale) return false;
  }
  return true;
}

Polygon2 generic_polygon(std::mt19937_64& rng, double scale) {
  std::uniform_int_distribution<int> nv(4, 7);
  for (int attempt = 0; attempt < 500; ++attempt) {
    const Polygon2 p = random_polygon(rng, nv(rng), scale);
    if (generic_margin_ok(p)) return p;
  }
  throw InvalidInput("planar_corpus: could not reach the spectral margin");
}

Polygon2 symmetric_polygon(std::mt19937_64& rng, double scale) {
  std::uniform_int_distribution<int> gens(3, 5);
  for (int attempt = 0; attempt < 500; ++attempt) {
    const Polygon2 p = random_zonogon(rng, gens(rng), scale);
    if (zonogon_margin_ok(p)) return p;
  }
  throw InvalidInput("planar_corpus: could not reach the zonogon margin");
}

Polygon2 random_segment(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ang = kPi * unit(rng);
  const double len = scale * (0.3 + 0.7 * unit(rng));
  const Vec2 v{0.5 * len * std::cos(ang), 0.5 * len * std::sin(ang)};
  return Polygon2({-v, v});
}

}  // namespace

std::vector<PlanarPair> planar_corpus(std::uint64_t seed, int count) {
  if (count < 12) throw InvalidInput("planar_corpus: need at least 12 pairs");
  std::mt19937_64 rng(seed);
  std::vector<PlanarPair> out;
  out.reserve(static_cast<std::size_t>(count));

  const auto push = [&out](Polygon2 c, Polygon2 k, std::string label,
                           bool quermass_eq = false) {
    PlanarPair pair;
    pair.c_is_segment = c.is_segment();
    pair.c = std::move(c);
    pair.k = std::move(k);
    pair.label = std::move(label);
    pair.quermass_equality = quermass_eq;
    out.push_back(std::move(pair));
  };

  // Structured pairs exercising the named equality and invariance cases.
  push(Polygon2({{-0.25, 0.0}, {0.25, 0.0}}), generic_polygon(rng, 1.0),
       "segment_axis/generic");
  push(random_segment(rng, 1.0), generic_polygon(rng, 0.8),
       "segment_tilt/generic");
  // K a regular 64-gon, C with normals inside K's rotation group: every
  // rotated copy equals K, so the area bound is an equality.
  push(regular_polygon(4, std::sqrt(0.5)), regular_polygon(64, 0.8),
       "square/disc64", /*quermass_eq=*/true);
  push(regular_polygon(64, 0.5), generic_polygon(rng, 1.0), "disc64/generic");
  push(regular_polygon(4, std::sqrt(2.0) / 8.0),
       regular_polygon(4, std::sqrt(0.5)), "c4/square",
       /*quermass_eq=*/true);
  push(regular_polygon(4, std::sqrt(2.0) / 8.0),
       Polygon2({{0.0, 0.0}, {0.9, 0.1}, {0.2, 0.6}}), "c4/scalene");
  push(symmetric_polygon(rng, 1.0), generic_polygon(rng, 1.0),
       "zonogon/generic");
  push(regular_polygon(3, 0.6), regular_polygon(3, 0.7), "triangle/triangle");
  push(generic_polygon(rng, 0.8), regular_polygon(64, 0.6), "generic/disc64");
  push(regular_polygon(6, 0.5), symmetric_polygon(rng, 0.9),
       "hexagon/zonogon");
  push(Polygon2({{0.0, 0.0}, {0.9, 0.1}, {0.2, 0.6}}),
       Polygon2({{0.0, 0.0}, {0.8, 0.0}, {0.5, 0.45}}), "scalene/scalene");
  push(regular_polygon(4, 0.7, kPi / 6.0), generic_polygon(rng, 1.1),
       "square_tilt/generic");

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int index = 0;
  while (static_cast<int>(out.size()) < count) {
    const int ckind = index % 5;
    const int kkind = (index / 5) % 4;
    ++index;
    Polygon2 c;
    std::string clabel;
    switch (ckind) {
      case 0:
        c = generic_polygon(rng, 0.6 + 0.8 * unit(rng));
        clabel = "generic";
        break;
      case 1:
        c = symmetric_polygon(rng, 0.5 + 0.7 * unit(rng));
        clabel = "zonogon";
        break;
      case 2: {
        const int n = 3 + static_cast<int>(4.0 * unit(rng));
        c = regular_polygon(n, 0.4 + 0.5 * unit(rng), kTwoPi * unit(rng));
        clabel = "regular";
        break;
      }
      case 3:
        c = random_segment(rng, 1.0);
        clabel = "segment";
        break;
      default:
        c = regular_polygon(64, 0.3 + 0.5 * unit(rng), kTwoPi * unit(rng));
        clabel = "disc64";
        break;
    }
    Polygon2 k;
    std::string klabel;
    switch (kkind) {
      case 0:
        k = generic_polygon(rng, 0.6 + 0.8 * unit(rng));
        klabel = "generic";
        break;
      case 1:
        k = symmetric_polygon(rng, 0.5 + 0.7 * unit(rng));
        klabel = "zonogon";
        break;
      case 2: {
        const int n = 3 + static_cast<int>(4.0 * unit(rng));
        k = regular_polygon(n, 0.4 + 0.5 * unit(rng), kTwoPi * unit(rng));
        klabel = "regular";
        break;
      }
      default:
        k = regular_polygon(64, 0.3 + 0.5 * unit(rng), kTwoPi * unit(rng));
        klabel = "disc64";
        break;
    }
    push(std::move(c), std::move(k),
         clabel + "/" + klabel + "#" + std::to_string(index));
  }
  return out;
}

namespace {

// Product of two planar polygons inside C x C; the 4-volume is the product
// of the areas, which keeps the Monte-Carlo lower bound exact.
PolytopeCm product_polytope(const Polygon2& p, const Polygon2& q) {
  std::vector<R4> verts;
  verts.reserve(p.size() * q.size());
  for (const Vec2& a : p.vertices())
    for (const Vec2& b : q.vertices()) verts.push_back({a.x, a.y, b.x, b.y});
  return PolytopeCm(2, verts);
}

// Right isosceles triangle with legs `a`: its normals (pi/4, pi, 3pi/2) stay
// inside the pi/4 grid while its odd multipliers do not vanish, which makes
// it the non-symmetric C of the C^2 corpus.
Polygon2 right_triangle(double a) {
  return Polygon2({{0.0, 0.0}, {a, 0.0}, {0.0, a}});
}

Polygon2 small_quad(std::mt19937_64& rng, double scale) {
  // Few vertices keep the membership programs small.
  std::uniform_int_distribution<int> nv(3, 4);
  return random_polygon(rng, nv(rng), scale);
}

Polygon2 small_zonogon(std::mt19937_64& rng, double scale) {
  return random_zonogon(rng, 2, scale);
}

}  // namespace

std::vector<C2Pair> c2_corpus(std::uint64_t seed, int count) {
  if (count < 10) throw InvalidInput("c2_corpus: need at least 10 pairs");
  std::mt19937_64 rng(seed ^ 0xC2C2C2C2ull);
  std::vector<C2Pair> out;
  out.reserve(static_cast<std::size_t>(count));

  const Polygon2 square = regular_polygon(4, std::sqrt(0.5));
  const Polygon2 square_rot = regular_polygon(4, std::sqrt(0.5), kPi / 4.0);
  const Polygon2 octagon = regular_polygon(8, 0.4, kPi / 8.0);
  const Polygon2 c4 = regular_polygon(4, std::sqrt(2.0) / 8.0);
  const Polygon2 seg_axis({{-0.45, 0.0}, {0.45, 0.0}});
  const Polygon2 seg_diag({{-0.35 * std::cos(kPi / 4.0), -0.35 * std::sin(kPi / 4.0)},
                           {0.35 * std::cos(kPi / 4.0), 0.35 * std::sin(kPi / 4.0)}});
  const Polygon2 rect(
      {{-0.4, -0.15}, {0.4, -0.15}, {0.4, 0.15}, {-0.4, 0.15}});
  const Polygon2 tri = right_triangle(0.8);

  const auto push = [&out](Polygon2 c, std::variant<PolytopeCm, BallCm> k,
                           std::optional<double> vol, std::string label) {
    out.push_back({std::move(c), std::move(k), vol, std::move(label)});
  };

  push(square, cube_cm(2, 0.5), 1.0, "square/cube");
  push(seg_axis, cube_cm(2, 0.5), 1.0, "segment/cube");
  push(square, inscribed_ball_c2(8, 8, 2), std::nullopt, "square/ball64");
  {
    const Polygon2 p = small_quad(rng, 0.7);
    const Polygon2 q = small_quad(rng, 0.6);
    push(octagon, product_polytope(p, q), p.area() * q.area(), "octagon/product");
  }
  {
    const Polygon2 p = small_zonogon(rng, 0.6);
    const Polygon2 q = small_zonogon(rng, 0.7);
    push(rect, product_polytope(p, q), p.area() * q.area(), "rect/symmetric_product");
  }
  {
    const Polygon2 p = random_polygon(rng, 3, 0.8);
    const Polygon2 q = small_quad(rng, 0.6);
    push(square_rot, product_polytope(p, q), p.area() * q.area(),
         "square_rot/product");
  }
  push(seg_diag, cross_polytope_cm(2, 0.6), 2.0 * std::pow(0.6, 4) / 3.0,
       "segment_diag/cross");
  push(c4, BallCm{2, 0.8}, std::nullopt, "c4/ball");
  push(square, disc_in_line_cm(2, 0, 0.8, 48), 0.0, "square/disc_in_line");
  push(octagon, segment_cm(2, {-0.4, -0.1, 0.2, -0.3}, {0.4, 0.1, -0.2, 0.3}), 0.0,
       "octagon/segment");
  {
    const Polygon2 p = small_quad(rng, 0.8);
    const Polygon2 q = small_quad(rng, 0.5);
    push(tri, product_polytope(p, q), p.area() * q.area(), "right_triangle/product");
  }
  {
    const Polygon2 p = small_zonogon(rng, 0.5);
    const Polygon2 q = small_zonogon(rng, 0.6);
    push(square, product_polytope(p, q), p.area() * q.area(),
         "square/symmetric_product");
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<Polygon2> c_cycle = {octagon, seg_axis, rect,      c4,
                                         tri,     square,   square_rot, seg_diag};
  int index = 0;
  while (static_cast<int>(out.size()) < count) {
    const Polygon2& c = c_cycle[static_cast<std::size_t>(index) % c_cycle.size()];
    const int kind = index % 3;
    ++index;
    if (kind == 0) {
      const Polygon2 p = small_quad(rng, 0.5 + 0.4 * unit(rng));
      const Polygon2 q = small_quad(rng, 0.4 + 0.4 * unit(rng));
      push(c, product_polytope(p, q), p.area() * q.area(),
           "cycle_product#" + std::to_string(index));
    } else if (kind == 1) {
      const Polygon2 p = small_zonogon(rng, 0.4 + 0.4 * unit(rng));
      const Polygon2 q = small_zonogon(rng, 0.4 + 0.4 * unit(rng));
      push(c, product_polytope(p, q), p.area() * q.area(),
           "cycle_symmetric#" + std::to_string(index));
    } else {
      const double a = 0.3 + 0.3 * unit(rng);
      push(c, cube_cm(2, a), std::pow(2.0 * a, 4),
           "cycle_cube#" + std::to_string(index));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite driver
// ---------------------------------------------------------------------------

bool SuiteResult::pass() const {
  for (const SuiteLine& l : lines)
    if (!l.pass) return false;
  return true;
}

namespace {

std::string pair_detail(int pairs, int failures, const std::string& worst) {
  std::ostringstream os;
  os << pairs << " pairs";
  if (failures > 0) os << ", " << failures << " failing, first: " << worst;
  else if (!worst.empty()) os << ", worst margin at " << worst;
  return os.str();
}

void planar_suite(const SuiteOptions& opts, SuiteResult& res) {
  const std::vector<PlanarPair> corpus = planar_corpus(opts.seed, opts.planar_pairs);

  {  // Quermassintegral bounds, including the i = 1 equalities.
    int failures = 0;
    std::string first;
    for (const PlanarPair& pair : corpus) {
      const Report rep = quermass_check_m1(pair.c, pair.k, pair.quermass_equality);
      if (!rep.pass() && failures++ == 0) first = pair.label;
    }
    res.lines.push_back({"planar/quermass", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(static_cast<int>(corpus.size()), failures, first)});
  }

  {  // Width / diameter / circumradius chain with segment equalities.
    int failures = 0;
    std::string first;
    for (const PlanarPair& pair : corpus) {
      const Report rep = width_diameter_check(pair.c, pair.k);
      if (!rep.pass() && failures++ == 0) first = pair.label;
    }
    res.lines.push_back({"planar/width_diameter", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(static_cast<int>(corpus.size()), failures, first)});
  }

  {  // Mixed volume bound.
    int failures = 0;
    std::string first;
    for (const PlanarPair& pair : corpus) {
      const Report rep = mixed_volume_check_m1(pair.c, pair.k);
      if (!rep.pass() && failures++ == 0) first = pair.label;
    }
    res.lines.push_back({"planar/mixed_volume", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(static_cast<int>(corpus.size()), failures, first)});
  }

  {  // Brunn-Minkowski superadditivity over consecutive corpus bodies.
    int failures = 0;
    std::string first;
    for (std::size_t i = 0; i + 1 < corpus.size(); i += 2) {
      const Report rep =
          brunn_minkowski_check_m1(corpus[i].c, corpus[i].k, corpus[i + 1].k);
      if (!rep.pass() && failures++ == 0) first = corpus[i].label;
    }
    res.lines.push_back({"planar/brunn_minkowski", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(static_cast<int>(corpus.size()) / 2, failures, first)});
  }

  {  // Containment: the proof's lambda is feasible, an oversized one is not.
    int failures = 0;
    std::string first;
    int checked = 0;
    for (const PlanarPair& pair : corpus) {
      if (!pair.k.is_proper()) continue;
      ++checked;
      const Polygon2 d = dc_planar(pair.c, pair.k);
      if (!d.is_proper()) continue;
      const double lambda = containment_lambda(pair.c, pair.k);
      const auto t = containment_after_translation(lambda, pair.k, d);
      bool ok = t.has_value();
      if (ok) {
        const Scalars sk = scalars(pair.k);
        const double big = 10.0 * scalars(d).diameter / sk.min_width;
        ok = !containment_after_translation(big, pair.k, d).has_value();
      }
      if (!ok && failures++ == 0) first = pair.label;
    }
    res.lines.push_back({"planar/containment", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(checked, failures, first)});
  }

  {  // Classification agreement.
    int failures = 0;
    std::string first;
    for (const PlanarPair& pair : corpus) {
      const ClassifyReport rep =
          classify(pair.c, pair.k, opts.classify_cut, opts.classify_eps);
      if (!rep.agree() && failures++ == 0) first = pair.label;
    }
    res.lines.push_back({"planar/classify", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(static_cast<int>(corpus.size()), failures, first)});
  }

  {  // Fixed points: exact invariance and strict failure.
    const Polygon2 c4 = regular_polygon(4, std::sqrt(2.0) / 8.0);
    const Polygon2 square = regular_polygon(4, std::sqrt(0.5));
    const Polygon2 scalene({{0.0, 0.0}, {0.9, 0.1}, {0.2, 0.6}});
    const Polygon2 disc = regular_polygon(64, 0.7);
    const double d_square = fixed_point_defect(c4, square);
    const double d_scalene = fixed_point_defect(c4, scalene);
    const double d_disc = fixed_point_defect(square, disc);
    const bool ok = d_square <= 1e-9 && d_scalene > 0.01 && d_disc <= 1e-9;
    std::ostringstream os;
    os << "square " << d_square << ", scalene " << d_scalene << ", disc "
       << d_disc;
    res.lines.push_back({"planar/fixed_points", ok, std::max(d_square, d_disc),
                         1e-9, os.str()});
  }

  {  // Iteration: D^2 = 2 D for the imaginary-axis segment (the classical
     // difference body), the 4-group case, and a strict failure when the
     // multipliers have scattered phases.
    const Polygon2 seg({{0.0, -0.5}, {0.0, 0.5}});
    const Polygon2 c4 = regular_polygon(4, std::sqrt(2.0) / 8.0);
    const Polygon2 scalene({{0.0, 0.0}, {0.9, 0.1}, {0.2, 0.6}});
    const Polygon2 k({{0.0, 0.0}, {0.8, 0.0}, {0.5, 0.45}});
    const IterateReport seg2 = iterate_check(seg, k, 2);
    const IterateReport c43 = iterate_check(c4, k, 3);
    const IterateReport bad = iterate_check(scalene, k, 2);
    const bool ok = seg2.condition && seg2.defect <= 1e-8 && c43.condition &&
                    c43.defect <= 1e-8 && !bad.condition && bad.defect > 1e-3;
    std::ostringstream os;
    os << "segment " << seg2.defect << ", 4-group " << c43.defect
       << ", scalene " << bad.defect;
    res.lines.push_back({"planar/iterate", ok, std::max(seg2.defect, c43.defect),
                         1e-8, os.str()});
  }

  {  // Non-surjectivity demonstration.
    const NonsurjectivityReport rep = nonsurjectivity_demo();
    std::ostringstream os;
    os << "best " << rep.best_distance << " (" << rep.best_label
       << ") vs threshold " << rep.threshold << ", noninjectivity "
       << rep.noninjectivity_defect << ", scaling commutation "
       << rep.rho_commute_defect;
    res.lines.push_back({"planar/nonsurjectivity", rep.pass(),
                         rep.best_distance, rep.threshold, os.str()});
  }
}

void complex2_suite(const SuiteOptions& opts, SuiteResult& res) {
  {  // Dimension table.
    const std::vector<DimensionCase> table = dimension_table();
    int failures = 0;
    std::string first;
    for (const DimensionCase& dc : table)
      if (dc.observed != dc.expected && failures++ == 0) first = dc.label;
    res.lines.push_back({"complex2/dimension_table", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(static_cast<int>(table.size()), failures, first)});
  }

  const std::vector<C2Pair> corpus = c2_corpus(opts.seed, opts.c2_pairs);

  {  // Monte-Carlo volume bounds over the polytope entries.
    int failures = 0;
    int checked = 0;
    std::string first;
    for (const C2Pair& pair : corpus) {
      const PolytopeCm* k = std::get_if<PolytopeCm>(&pair.k);
      if (k == nullptr) continue;
      ++checked;
      const VolumeReport rep =
          volume_check_m2(pair.c, *k, opts.mc_samples, opts.seed, pair.exact_volume);
      if (!rep.pass() && failures++ == 0) first = pair.label;
    }
    res.lines.push_back({"complex2/volume", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(checked, failures, first)});
  }

  {  // Width / diameter / circumradius chain.
    int failures = 0;
    std::string first;
    for (const C2Pair& pair : corpus) {
      const Report rep = std::visit(
          [&](const auto& k) { return width_diameter_check(pair.c, k); }, pair.k);
      if (!rep.pass() && failures++ == 0) first = pair.label;
    }
    res.lines.push_back({"complex2/width_diameter", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(static_cast<int>(corpus.size()), failures, first)});
  }

  {  // Classification agreement via kernel components.
    ClassifyC2Options copts;
    copts.degree_cut = opts.classify_cut;
    copts.eps = opts.classify_eps;
    copts.seed = opts.seed;
    int failures = 0;
    std::string first;
    for (const C2Pair& pair : corpus) {
      const ClassifyReport rep = std::visit(
          [&](const auto& k) { return classify_c2(pair.c, k, copts); }, pair.k);
      if (!rep.agree() && failures++ == 0) first = pair.label;
    }
    res.lines.push_back({"complex2/classify", failures == 0,
                         static_cast<double>(failures), 0.0,
                         pair_detail(static_cast<int>(corpus.size()), failures, first)});
  }

  {  // Balls are fixed points of every C.
    const Polygon2 octagon = regular_polygon(8, 0.4, kPi / 8.0);
    const double defect = fixed_point_defect(octagon, BallCm{2, 1.0});
    res.lines.push_back({"complex2/fixed_point_ball", defect <= 1e-9, defect,
                         1e-9, "|h_D - l(C) h_B| over the net"});
  }

  {  // The Rogers-Shephard failure channel: a segment K has a
     // two-dimensional image, so its 4-volume estimate is exactly zero.
    const Polygon2 square = regular_polygon(4, std::sqrt(0.5));
    const PolytopeCm seg =
        segment_cm(2, {-0.4, -0.1, 0.2, -0.3}, {0.4, 0.1, -0.2, 0.3});
    const VolumeReport rep =
        volume_check_m2(square, seg, std::min<std::size_t>(opts.mc_samples, 20000),
                        opts.seed, 0.0);
    const int dim = affine_dim(dc_polytope(square, seg));
    const bool ok = rep.estimate == 0.0 && rep.pass() && dim == 2;
    std::ostringstream os;
    os << "estimate " << rep.estimate << ", image dimension " << dim;
    res.lines.push_back({"complex2/rs_failure", ok, rep.estimate, 0.0, os.str()});
  }
}

void harmonic_suite(const SuiteOptions& opts, SuiteResult& res) {
  {  // Radial polynomial orthogonality under the beta weight.
    const auto [nodes, weights] = gauss_legendre_01(64);
    double worst = 0.0;
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
        std::vector<OrthoPolyQ> qs;
        for (int deg = 0; deg <= 6; ++deg) qs.emplace_back(a, b, deg);
        for (int i = 0; i <= 6; ++i) {
          for (int j = 0; j < i; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < nodes.size(); ++t)
              acc += weights[t] * std::pow(nodes[t], a) *
                     std::pow(1.0 - nodes[t], b) * qs[static_cast<std::size_t>(i)](nodes[t]) *
                     qs[static_cast<std::size_t>(j)](nodes[t]);
            worst = std::max(worst, std::abs(acc));
          }
        }
      }
    }
    res.lines.push_back({"harmonic/orthogonality", worst <= 1e-10, worst, 1e-10,
                         "degrees <= 6, weights a,b <= 3"});
  }

  {  // Planar multiplier identity over corpus pairs.
    const std::vector<PlanarPair> corpus = planar_corpus(opts.seed, 20);
    double worst = 0.0;
    for (const PlanarPair& pair : corpus)
      worst = std::max(worst, planar_multiplier_check(pair.c, pair.k, 32));
    res.lines.push_back({"harmonic/multiplier", worst <= 1e-8, worst, 1e-8,
                         "J = 32 over 20 pairs"});
  }

  {  // Eigenfunction residuals on S^3.
    std::mt19937_64 rng(opts.seed ^ 0x5u);
    double worst = 0.0;
    for (int body = 0; body < 3; ++body) {
      const Polygon2 c = random_polygon(rng, 5, 1.0);
      for (int k = 0; k <= 4; ++k)
        for (int l = 0; k + l <= 4; ++l)
          worst = std::max(worst, eigenfunction_check(c, k, l, 8));
    }
    res.lines.push_back({"harmonic/eigenfunction", worst <= 1e-10, worst, 1e-10,
                         "k + l <= 4, 3 random polygons"});
  }

  {  // Finite-difference harmonicity of the extended kernels.
    double worst = 0.0;
    for (int k = 0; k <= 4; ++k)
      for (int l = 0; l <= k; ++l)
        worst = std::max(worst, harmonicity_check(k, l, 1e-4));
    res.lines.push_back({"harmonic/harmonicity", worst <= 1e-3, worst, 1e-3,
                         "k, l <= 4 at step 1e-4"});
  }
}

}  // namespace

SuiteResult run_suite(const SuiteOptions& opts) {
  SuiteResult res;
  if (opts.run_planar) planar_suite(opts, res);
  if (opts.run_complex2) complex2_suite(opts, res);
  if (opts.run_harmonic) harmonic_suite(opts, res);
  return res;
}

}  // namespace cdb::verify
