#include "cdb/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cdb/errors.hpp"
#include "cdb/lp.hpp"

namespace cdb {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kPointTol = 1e-9;   // vertex deduplication distance
constexpr double kCollinearTol = 1e-9;  // relative sine for collinearity

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double cross3(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a - o).cross(b - o);
}

bool lex_less(const Vec2& a, const Vec2& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

// Andrew's monotone chain. Returns the strictly convex hull in CCW order
// starting at the lexicographically smallest vertex; collinear points are
// dropped at relative tolerance kCollinearTol.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) {
                          return (a - b).norm() <= kPointTol;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  auto turns_right_or_straight = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    const double c = cross3(o, a, b);
    const double scale = (a - o).norm() * (b - o).norm();
    return c <= kCollinearTol * scale;
  };

  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && turns_right_or_straight(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && turns_right_or_straight(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point equals the first
  // The chain never evaluates the turn at the starting vertex itself, so a
  // nearly collinear corner can survive there when several input points sit
  // on a near-vertical left edge and rounding scrambles which one is the
  // lexicographic minimum. Drop such corners, then restore the canonical
  // start.
  while (hull.size() >= 3 &&
         turns_right_or_straight(hull[hull.size() - 1], hull[0], hull[1])) {
    hull.erase(hull.begin());
  }
  if (hull.size() >= 2) {
    const auto lo = std::min_element(hull.begin(), hull.end(), lex_less);
    std::rotate(hull.begin(), lo, hull.end());
  }
  return hull;
}

void check_finite(std::span<const Vec2> points) {
  for (const Vec2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw InvalidInput("polygon: non-finite coordinate");
  }
}

}  // namespace

double Vec2::norm() const { return std::hypot(x, y); }

Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

Polygon2::Polygon2(std::span<const Vec2> points) {
  if (points.empty()) throw InvalidInput("polygon: needs at least one point");
  check_finite(points);
  verts_ = convex_hull(std::vector<Vec2>(points.begin(), points.end()));
}

Polygon2::Polygon2(std::initializer_list<Vec2> points)
    : Polygon2(std::span<const Vec2>(points.begin(), points.size())) {}

double Polygon2::support(const Vec2& dir) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& v : verts_) best = std::max(best, v.dot(dir));
  return best;
}

double Polygon2::support(double theta) const { return support(unit_vector(theta)); }

double Polygon2::width(double theta) const {
  const Vec2 u = unit_vector(theta);
  return support(u) + support(-u);
}

double Polygon2::area() const {
  if (verts_.size() < 3) return 0.0;
  double a = 0.0;
  for (std::size_t i = 0, n = verts_.size(); i < n; ++i)
    a += verts_[i].cross(verts_[(i + 1) % n]);
  return 0.5 * a;
}

double Polygon2::perimeter() const {
  const std::size_t n = verts_.size();
  if (n < 2) return 0.0;
  double p = 0.0;
  for (std::size_t i = 0; i < n; ++i) p += (verts_[(i + 1) % n] - verts_[i]).norm();
  return p;  // a segment is traversed twice, giving 2 * length
}

Vec2 Polygon2::centroid() const {
  const std::size_t n = verts_.size();
  if (n == 0) return {};
  if (n == 1) return verts_[0];
  if (n == 2) return (verts_[0] + verts_[1]) * 0.5;
  double a = 0.0;
  Vec2 c;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = verts_[i];
    const Vec2& q = verts_[(i + 1) % n];
    const double w = p.cross(q);
    a += w;
    c = c + (p + q) * w;
  }
  return c * (1.0 / (3.0 * a));
}

Polygon2 Polygon2::translated(const Vec2& t) const {
  std::vector<Vec2> pts(verts_);
  for (Vec2& p : pts) p = p + t;
  Polygon2 out;
  out.verts_ = convex_hull(std::move(pts));
  return out;
}

bool approx_equal(const Polygon2& a, const Polygon2& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a.vertices()[i] - b.vertices()[i]).norm() > tol) return false;
  return true;
}

double hausdorff_distance(const Polygon2& a, const Polygon2& b) {
  if (a.empty() || b.empty())
    throw InvalidInput("hausdorff_distance: empty polygon");
  // For convex bodies the Hausdorff distance equals the sup distance of the
  // support functions. h_a - h_b restricted to one cell of the merged
  // normal fans is a single sinusoid <va - vb, u(t)>, whose extrema are
  // computable in closed form.
  std::vector<double> cuts;
  const AtomicMeasure1 ma = area_measure(a);
  const AtomicMeasure1 mb = area_measure(b);
  for (const auto& atom : ma.atoms()) cuts.push_back(atom.theta);
  for (const auto& atom : mb.atoms()) cuts.push_back(atom.theta);
  if (cuts.empty()) {  // two points
    return (a.vertices()[0] - b.vertices()[0]).norm();
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double best = 0.0;
  const std::size_t n = cuts.size();
  auto eval = [&](double t) {
    best = std::max(best, std::abs(a.support(t) - b.support(t)));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = cuts[i];
    double hi = cuts[(i + 1) % n];
    if (hi <= lo) hi += kTwoPi;
    eval(lo);
    const double mid = 0.5 * (lo + hi);
    // Identify the active vertices of this cell from the midpoint.
    const Vec2 u = unit_vector(mid);
    const Vec2* va = nullptr;
    const Vec2* vb = nullptr;
    double ba = -1e300, bb = -1e300;
    for (const Vec2& v : a.vertices())
      if (v.dot(u) > ba) ba = v.dot(u), va = &v;
    for (const Vec2& v : b.vertices())
      if (v.dot(u) > bb) bb = v.dot(u), vb = &v;
    const Vec2 d = *va - *vb;
    const double phi = std::atan2(d.y, d.x);
    for (double cand : {phi, phi + kPi}) {
      while (cand < lo) cand += kTwoPi;
      while (cand > hi) cand -= kTwoPi;
      if (cand >= lo && cand <= hi) eval(cand);
    }
  }
  return best;
}

Polygon2 polygon_from_points(std::span<const Vec2> points) { return Polygon2(points); }

Polygon2 rotate_scale(const Polygon2& p, std::complex<double> rho) {
  if (p.empty()) return p;
  const Vec2 r{rho.real(), rho.imag()};
  if (r.norm() == 0.0) return Polygon2({Vec2{0.0, 0.0}});
  std::vector<Vec2> pts;
  pts.reserve(p.size());
  for (const Vec2& v : p.vertices()) pts.push_back(v.cmul(r));
  return Polygon2(pts);
}

namespace {

// Edge directions are compared with sign tests only; any scheme that maps
// directions to angles puts some direction on a branch cut, and an edge of
// one summand landing there within rounding error desynchronizes the two
// merge sequences.
int direction_half(const Vec2& v) {
  // 0 for directions in [0, pi) measured from +x, 1 for the rest.
  if (v.y > 0.0 || (v.y == 0.0 && v.x > 0.0)) return 0;
  return 1;
}

bool direction_less(const Vec2& a, const Vec2& b) {
  const int ha = direction_half(a);
  const int hb = direction_half(b);
  if (ha != hb) return ha < hb;
  return a.cross(b) > 0.0;
}

// Edge vectors of a canonical polygon in counterclockwise cyclic order,
// plus the cycle position whose edge direction is minimal (first above the
// +x axis). A segment contributes both traversal directions.
struct EdgeCycle {
  std::vector<Vec2> e;
  std::size_t start = 0;
};

EdgeCycle edge_cycle(const Polygon2& p) {
  EdgeCycle cyc;
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  const std::size_t count = n == 2 ? 2 : n;
  cyc.e.reserve(count);
  for (std::size_t i = 0; i < count; ++i) cyc.e.push_back(v[(i + 1) % n] - v[i % n]);
  cyc.start = static_cast<std::size_t>(
      std::min_element(cyc.e.begin(), cyc.e.end(), direction_less) - cyc.e.begin());
  return cyc;
}

}  // namespace

Polygon2 minkowski_sum(const Polygon2& p, const Polygon2& q) {
  if (p.empty() || q.empty()) throw InvalidInput("minkowski_sum: empty polygon");
  if (p.is_point()) return q.translated(p.vertices()[0]);
  if (q.is_point()) return p.translated(q.vertices()[0]);

  const EdgeCycle ep = edge_cycle(p);
  const EdgeCycle eq = edge_cycle(q);
  const std::size_t np = ep.e.size();
  const std::size_t nq = eq.e.size();
  // Standard rotating two-pointer sweep. Both cycles are cut at their
  // direction-minimal edge, so the starting corner of the sum is the sum of
  // the vertices where those edges begin.
  std::vector<Vec2> verts;
  verts.reserve(np + nq);
  Vec2 cur = p.vertices()[ep.start % p.size()] + q.vertices()[eq.start % q.size()];
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < np || j < nq) {
    verts.push_back(cur);
    if (j == nq) {
      cur = cur + ep.e[(ep.start + i++) % np];
    } else if (i == np) {
      cur = cur + eq.e[(eq.start + j++) % nq];
    } else {
      const Vec2& a = ep.e[(ep.start + i) % np];
      const Vec2& b = eq.e[(eq.start + j) % nq];
      if (direction_less(a, b)) {
        cur = cur + a;
        ++i;
      } else if (direction_less(b, a)) {
        cur = cur + b;
        ++j;
      } else {  // exactly parallel: advance along both at once
        cur = cur + a + b;
        ++i;
        ++j;
      }
    }
  }
  return Polygon2(verts);
}

namespace {

// Half-plane list whose intersection is the polygon; degenerate bodies
// also need the end caps, which edges alone do not provide.
std::vector<HalfPlane> bounding_halfplanes(const Polygon2& p) {
  std::vector<HalfPlane> hs;
  const auto& v = p.vertices();
  if (p.is_proper() || p.is_segment()) {
    const AtomicMeasure1 mu = area_measure(p);
    for (const auto& atom : mu.atoms()) {
      const Vec2 u = unit_vector(atom.theta);
      hs.push_back({u, p.support(u)});
    }
  }
  if (!p.is_proper()) {
    // caps along the segment direction / around the point
    Vec2 d = p.is_segment() ? (v[1] - v[0]) : Vec2{1.0, 0.0};
    if (d.norm() > 0) d = d * (1.0 / d.norm());
    hs.push_back({d, p.support(d)});
    hs.push_back({-d, p.support(-d)});
    if (p.is_point()) {
      const Vec2 e{0.0, 1.0};
      hs.push_back({e, p.support(e)});
      hs.push_back({-e, p.support(-e)});
    }
  }
  return hs;
}

// Sutherland-Hodgman clip of a convex vertex cycle by one half-plane.
std::vector<Vec2> clip_cycle(const std::vector<Vec2>& pts, const HalfPlane& hp,
                             double tol) {
  std::vector<Vec2> out;
  const std::size_t n = pts.size();
  if (n == 0) return out;
  if (n == 1) {
    if (pts[0].dot(hp.u) <= hp.h + tol) out = pts;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % n];
    const double da = a.dot(hp.u) - hp.h;
    const double db = b.dot(hp.u) - hp.h;
    if (da <= tol) out.push_back(a);
    if ((da > tol && db < -tol) || (da < -tol && db > tol)) {
      const double t = da / (da - db);
      out.push_back(a + (b - a) * t);
    }
  }
  return out;
}

}  // namespace

std::optional<Polygon2> polygon_intersect(const Polygon2& p, const Polygon2& q) {
  if (p.empty() || q.empty()) return std::nullopt;
  // Clip the body with more vertices by the half-planes of the other; for
  // degenerate clippers the cap half-planes keep the region bounded.
  const Polygon2& subject = p.size() >= q.size() ? p : q;
  const Polygon2& clipper = p.size() >= q.size() ? q : p;
  double scale = 1.0;
  for (const Vec2& v : subject.vertices()) scale = std::max(scale, v.norm());
  const double tol = 1e-12 * scale;
  std::vector<Vec2> pts(subject.vertices());
  for (const HalfPlane& hp : bounding_halfplanes(clipper)) {
    pts = clip_cycle(pts, hp, tol);
    if (pts.empty()) return std::nullopt;
  }
  return Polygon2(pts);
}

std::optional<Polygon2> halfplane_intersection(std::span<const HalfPlane> planes,
                                               double bound) {
  std::vector<Vec2> pts{{-bound, -bound}, {bound, -bound}, {bound, bound}, {-bound, bound}};
  for (const HalfPlane& hp : planes) {
    pts = clip_cycle(pts, hp, 1e-12 * bound);
    if (pts.empty()) return std::nullopt;
  }
  return Polygon2(pts);
}

AtomicMeasure1::AtomicMeasure1(std::vector<Atom> atoms, double merge_tol) {
  for (Atom& a : atoms) {
    if (!std::isfinite(a.theta) || !std::isfinite(a.weight))
      throw InvalidInput("measure: non-finite atom");
    if (a.weight < -1e-9) throw InvalidInput("measure: negative atom weight");
    a.theta = wrap_angle(a.theta);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.theta < b.theta; });
  for (const Atom& a : atoms) {
    if (a.weight <= 1e-12) continue;
    if (!atoms_.empty() && a.theta - atoms_.back().theta <= merge_tol) {
      Atom& last = atoms_.back();
      const double w = last.weight + a.weight;
      last.theta = (last.theta * last.weight + a.theta * a.weight) / w;
      last.weight = w;
    } else {
      atoms_.push_back(a);
    }
  }
  // wrap-around merge: the last atom may sit just below 2pi with the first
  // one just above 0
  if (atoms_.size() >= 2) {
    const Atom first = atoms_.front();
    const Atom last = atoms_.back();
    if (first.theta + kTwoPi - last.theta <= merge_tol) {
      const double w = first.weight + last.weight;
      const double mean =
          ((first.theta + kTwoPi) * first.weight + last.theta * last.weight) / w;
      atoms_.erase(atoms_.begin());
      atoms_.back() = {wrap_angle(mean), w};
      std::sort(atoms_.begin(), atoms_.end(),
                [](const Atom& a, const Atom& b) { return a.theta < b.theta; });
    }
  }
}

double AtomicMeasure1::total_mass() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.weight;
  return m;
}

double AtomicMeasure1::closure_residual() const {
  Vec2 s;
  for (const Atom& a : atoms_) s = s + unit_vector(a.theta) * a.weight;
  return s.norm();
}

AtomicMeasure1 area_measure(const Polygon2& p) {
  std::vector<AtomicMeasure1::Atom> atoms;
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  if (n < 2) return AtomicMeasure1(std::move(atoms));
  const std::size_t count = n == 2 ? 2 : n;
  for (std::size_t i = 0; i < count; ++i) {
    const Vec2 e = v[(i + 1) % n] - v[i % n];
    const double len = e.norm();
    if (len <= 0.0) continue;
    atoms.push_back({wrap_angle(std::atan2(-e.x, e.y)), len});
  }
  return AtomicMeasure1(std::move(atoms));
}

Polygon2 body_from_measure(const AtomicMeasure1& mu, double tol) {
  if (mu.size() < 2) throw MeasureError("body_from_measure: fewer than two atoms");
  if (mu.closure_residual() > tol)
    throw MeasureError("body_from_measure: closure condition violated");
  std::vector<Vec2> verts;
  Vec2 cur{0.0, 0.0};
  for (const auto& a : mu.atoms()) {
    verts.push_back(cur);
    // edge direction is the normal rotated +90 degrees (CCW traversal)
    const Vec2 d{-std::sin(a.theta), std::cos(a.theta)};
    cur = cur + d * a.weight;
  }
  Polygon2 body(verts);
  const Spectrum s = fourier_support(body, 1, Spectrum::Convention::kRaw);
  const std::complex<double> c1 = s.at(1);
  return body.translated({-c1.real(), -c1.imag()});
}

namespace {

// Iterative radix-2 FFT; n must be a power of two. sign=-1 is the forward
// transform sum_j x_j e^{-2 pi i jk/n}.
void fft_radix2(std::vector<std::complex<double>>& x, int sign) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = x[i + k];
        const std::complex<double> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

SampledSupport2::SampledSupport2(int n, std::vector<double> h, double convexity_tol)
    : n_(n), h_(std::move(h)) {
  if (!is_power_of_two(n_) || n_ < 64)
    throw InvalidInput("sampled support: n must be a power of two >= 64");
  if (h_.size() != static_cast<std::size_t>(n_))
    throw InvalidInput("sampled support: value count does not match n");
  double scale = 1.0;
  for (double v : h_) {
    if (!std::isfinite(v)) throw InvalidInput("sampled support: non-finite value");
    scale = std::max(scale, std::abs(v));
  }
  const double c = std::cos(kTwoPi / n_);
  for (int k = 0; k < n_; ++k) {
    const double second = h_[(k + n_ - 1) % n_] + h_[(k + 1) % n_] - 2.0 * c * h_[k];
    if (second < -convexity_tol * scale)
      throw InvalidInput("sampled support: discrete convexity violated");
  }
  hhat_.assign(h_.begin(), h_.end());
  fft_radix2(hhat_, -1);
}

double SampledSupport2::at(int k) const {
  const int i = ((k % n_) + n_) % n_;
  return h_[static_cast<std::size_t>(i)];
}

double SampledSupport2::grid_angle(int k) const {
  return kTwoPi * (((k % n_) + n_) % n_) / n_;
}

double SampledSupport2::support(double theta) const {
  const double step = kTwoPi / n_;
  const double pos = wrap_angle(theta) / step;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) < 1e-9)
    return at(static_cast<int>(nearest));
  // band-limited trigonometric interpolation from the DFT
  double acc = hhat_[0].real();
  for (int k = 1; k < n_ / 2; ++k) {
    const std::complex<double> e(std::cos(k * theta), std::sin(k * theta));
    acc += 2.0 * (hhat_[static_cast<std::size_t>(k)] * e).real();
  }
  acc += hhat_[static_cast<std::size_t>(n_ / 2)].real() * std::cos(n_ / 2 * theta);
  return acc / n_;
}

double SampledSupport2::width(double theta) const {
  return support(theta) + support(theta + kPi);
}

AtomicMeasure1 SampledSupport2::discrete_area_measure() const {
  const double step = kTwoPi / n_;
  const double c = std::cos(step);
  const double s = std::sin(step);
  std::vector<AtomicMeasure1::Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) {
    const double second = at(k - 1) + at(k + 1) - 2.0 * c * at(k);
    const double w = second / s;
    if (w > 1e-12) atoms.push_back({grid_angle(k), w});
  }
  return AtomicMeasure1(std::move(atoms));
}

SampledSupport2 SampledSupport2::rotated_grid(int s) const {
  std::vector<double> h(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) h[static_cast<std::size_t>(k)] = at(k - s);
  return SampledSupport2(n_, std::move(h));
}

Polygon2 SampledSupport2::to_polygon() const {
  std::vector<HalfPlane> planes;
  planes.reserve(static_cast<std::size_t>(n_));
  double bound = 1.0;
  for (int k = 0; k < n_; ++k) {
    planes.push_back({unit_vector(grid_angle(k)), at(k)});
    bound = std::max(bound, std::abs(at(k)));
  }
  auto poly = halfplane_intersection(planes, 2.0 * bound + 1.0);
  if (!poly) throw InvalidInput("sampled support: empty tangent polygon");
  return *poly;
}

SampledSupport2 sample_polygon(const Polygon2& p, int n) {
  if (p.empty()) throw InvalidInput("sample_polygon: empty polygon");
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) h[static_cast<std::size_t>(k)] = p.support(kTwoPi * k / n);
  return SampledSupport2(n, std::move(h));
}

SampledSupport2 sample_disc(int n, double r, const Vec2& c) {
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    h[static_cast<std::size_t>(k)] = r + c.dot(unit_vector(kTwoPi * k / n));
  return SampledSupport2(n, std::move(h));
}

Spectrum::Spectrum(int cutoff, Convention conv) : J_(cutoff), conv_(conv) {
  if (cutoff < 0) throw InvalidInput("spectrum: negative cutoff");
  c_.assign(2 * static_cast<std::size_t>(cutoff) + 1, {0.0, 0.0});
}

std::complex<double> Spectrum::at(int j) const {
  if (std::abs(j) > J_) throw InvalidInput("spectrum: index beyond cutoff");
  return c_[static_cast<std::size_t>(j + J_)];
}

void Spectrum::set(int j, std::complex<double> v) {
  if (std::abs(j) > J_) throw InvalidInput("spectrum: index beyond cutoff");
  c_[static_cast<std::size_t>(j + J_)] = v;
}

Spectrum Spectrum::to(Convention conv) const {
  if (conv == conv_) return *this;
  Spectrum out(J_, conv);
  if (conv == Convention::kMultiplier) {
    // c~_j = Int e^{-ija} f = pi * c_{-j} (j != 0), 2 pi c_0 at j = 0
    out.set(0, at(0) * kTwoPi);
    for (int j = 1; j <= J_; ++j) {
      out.set(j, at(-j) * kPi);
      out.set(-j, at(j) * kPi);
    }
  } else {
    out.set(0, at(0) / kTwoPi);
    for (int j = 1; j <= J_; ++j) {
      out.set(j, at(-j) / kPi);
      out.set(-j, at(j) / kPi);
    }
  }
  return out;
}

double Spectrum::max_abs_high() const {
  double m = 0.0;
  for (int j = 2; j <= J_; ++j) m = std::max({m, std::abs(at(j)), std::abs(at(-j))});
  return m;
}

namespace {

// Int_a^b e^{i p t} dt
std::complex<double> phase_integral(int p, double a, double b) {
  if (p == 0) return {b - a, 0.0};
  const std::complex<double> ea(std::cos(p * a), std::sin(p * a));
  const std::complex<double> eb(std::cos(p * b), std::sin(p * b));
  return (eb - ea) / std::complex<double>(0.0, p);
}

// Int_a^b e^{i j t} <v, u(t)> dt
std::complex<double> arc_integral(int j, double a, double b, const Vec2& v) {
  const std::complex<double> ep = phase_integral(j + 1, a, b);
  const std::complex<double> em = phase_integral(j - 1, a, b);
  return v.x * 0.5 * (ep + em) +
         v.y * (ep - em) / std::complex<double>(0.0, 2.0);
}

Spectrum spectrum_from_integrals(const std::vector<std::complex<double>>& ipos,
                                 const std::vector<std::complex<double>>& ineg,
                                 int cutoff, Spectrum::Convention conv) {
  // ipos[j] = Int e^{i j t} f, ineg[j] = Int e^{-i j t} f, j = 0..cutoff
  Spectrum out(cutoff, conv);
  if (conv == Spectrum::Convention::kRaw) {
    out.set(0, ipos[0] / kTwoPi);
    for (int j = 1; j <= cutoff; ++j) {
      out.set(j, ipos[static_cast<std::size_t>(j)] / kPi);
      out.set(-j, ineg[static_cast<std::size_t>(j)] / kPi);
    }
  } else {
    for (int j = 0; j <= cutoff; ++j) {
      out.set(j, ineg[static_cast<std::size_t>(j)]);
      if (j > 0) out.set(-j, ipos[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

}  // namespace

Spectrum fourier_support(const Polygon2& p, int cutoff, Spectrum::Convention conv) {
  if (p.empty()) throw InvalidInput("fourier_support: empty polygon");
  std::vector<std::complex<double>> ipos(static_cast<std::size_t>(cutoff) + 1),
      ineg(static_cast<std::size_t>(cutoff) + 1);
  const auto& v = p.vertices();
  if (p.is_point()) {
    for (int j = 0; j <= cutoff; ++j) {
      ipos[static_cast<std::size_t>(j)] = arc_integral(j, 0.0, kTwoPi, v[0]);
      ineg[static_cast<std::size_t>(j)] = arc_integral(-j, 0.0, kTwoPi, v[0]);
    }
    return spectrum_from_integrals(ipos, ineg, cutoff, conv);
  }
  // The head vertex of edge k is the support maximizer for normals between
  // edge k's normal angle and edge k+1's.
  const std::size_t n = v.size();
  const std::size_t count = n == 2 ? 2 : n;
  std::vector<double> phi(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Vec2 e = v[(i + 1) % n] - v[i % n];
    phi[i] = std::atan2(-e.x, e.y);
  }
  for (std::size_t i = 0; i < count; ++i) {
    const Vec2& head = v[(i + 1) % n];
    double a = phi[i];
    double b = phi[(i + 1) % count];
    if (b <= a) b += kTwoPi;
    for (int j = 0; j <= cutoff; ++j) {
      ipos[static_cast<std::size_t>(j)] += arc_integral(j, a, b, head);
      ineg[static_cast<std::size_t>(j)] += arc_integral(-j, a, b, head);
    }
  }
  return spectrum_from_integrals(ipos, ineg, cutoff, conv);
}

Spectrum fourier_support(const SampledSupport2& s, int cutoff,
                         Spectrum::Convention conv) {
  if (s.n() < 4 * cutoff)
    throw ResolutionError("fourier_support: grid too coarse for cutoff (need n >= 4J)");
  // c~_j = (2 pi / n) H_j with H the forward DFT of the grid values; tone
  // j + kn of the underlying function aliases onto coefficient j.
  std::vector<std::complex<double>> hhat(s.grid_values().begin(), s.grid_values().end());
  fft_radix2(hhat, -1);
  const int n = s.n();
  Spectrum mult(cutoff, Spectrum::Convention::kMultiplier);
  for (int j = -cutoff; j <= cutoff; ++j) {
    const int idx = ((j % n) + n) % n;
    mult.set(j, hhat[static_cast<std::size_t>(idx)] * (kTwoPi / n));
  }
  return conv == Spectrum::Convention::kMultiplier ? mult : mult.to(conv);
}

Spectrum fourier_measure(const AtomicMeasure1& mu, int cutoff,
                         Spectrum::Convention conv) {
  std::vector<std::complex<double>> ipos(static_cast<std::size_t>(cutoff) + 1),
      ineg(static_cast<std::size_t>(cutoff) + 1);
  for (const auto& a : mu.atoms()) {
    for (int j = 0; j <= cutoff; ++j) {
      const std::complex<double> e(std::cos(j * a.theta), std::sin(j * a.theta));
      ipos[static_cast<std::size_t>(j)] += a.weight * e;
      ineg[static_cast<std::size_t>(j)] += a.weight * std::conj(e);
    }
  }
  return spectrum_from_integrals(ipos, ineg, cutoff, conv);
}

double spectrum_eval(const Spectrum& spec, double theta) {
  const Spectrum raw =
      spec.convention() == Spectrum::Convention::kRaw ? spec : spec.to(Spectrum::Convention::kRaw);
  double acc = raw.at(0).real();
  for (int j = 1; j <= raw.cutoff(); ++j) {
    const std::complex<double> e(std::cos(j * theta), -std::sin(j * theta));
    acc += (raw.at(j) * e).real();
  }
  return acc;
}

double mixed_area_integral(const Polygon2& k, const Polygon2& c) {
  double acc = 0.0;
  const AtomicMeasure1 mu = area_measure(c);
  for (const auto& a : mu.atoms()) acc += a.weight * k.support(a.theta);
  return acc;
}

double mixed_area_integral(const SampledSupport2& k, const Polygon2& c) {
  double acc = 0.0;
  const AtomicMeasure1 mu = area_measure(c);
  for (const auto& a : mu.atoms()) acc += a.weight * k.support(a.theta);
  return acc;
}

namespace {

struct Circle {
  Vec2 c;
  double r = 0.0;
  bool contains(const Vec2& p, double tol) const { return (p - c).norm() <= r + tol; }
};

Circle circle_from(const Vec2& a, const Vec2& b) {
  return {(a + b) * 0.5, (a - b).norm() * 0.5};
}

Circle circle_from(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double d = 2.0 * ab.cross(ac);
  if (std::abs(d) < 1e-14 * ab.norm() * ac.norm()) {
    // nearly collinear: fall back to the widest pair
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
      if (cand.r > best.r) best = cand;
    return best;
  }
  const double ab2 = ab.norm2();
  const double ac2 = ac.norm2();
  const Vec2 center{a.x + (ac.y * ab2 - ab.y * ac2) / d,
                    a.y + (ab.x * ac2 - ac.x * ab2) / d};
  return {center, (center - a).norm()};
}

Circle mec_trivial(std::span<const Vec2*> support) {
  switch (support.size()) {
    case 0:
      return {{0.0, 0.0}, 0.0};
    case 1:
      return {*support[0], 0.0};
    case 2:
      return circle_from(*support[0], *support[1]);
    default:
      return circle_from(*support[0], *support[1], *support[2]);
  }
}

Circle welzl(std::vector<const Vec2*>& pts, std::size_t n, std::vector<const Vec2*>& support) {
  if (n == 0 || support.size() == 3)
    return mec_trivial(std::span<const Vec2*>(support.data(), support.size()));
  const Vec2* p = pts[n - 1];
  Circle c = welzl(pts, n - 1, support);
  if (c.contains(*p, 1e-10)) return c;
  support.push_back(p);
  c = welzl(pts, n - 1, support);
  support.pop_back();
  return c;
}

}  // namespace

std::pair<Vec2, double> min_enclosing_circle(std::span<const Vec2> points) {
  if (points.empty()) throw InvalidInput("min_enclosing_circle: no points");
  std::vector<const Vec2*> ptrs;
  ptrs.reserve(points.size());
  for (const Vec2& p : points) ptrs.push_back(&p);
  std::mt19937 rng(12345u);
  std::shuffle(ptrs.begin(), ptrs.end(), rng);
  std::vector<const Vec2*> support;
  const Circle c = welzl(ptrs, ptrs.size(), support);
  return {c.c, c.r};
}

std::pair<Vec2, double> max_inscribed_circle(const Polygon2& p) {
  if (!p.is_proper()) return {p.centroid(), 0.0};
  const auto atoms = area_measure(p).atoms();
  std::vector<double> rows;
  std::vector<double> rhs;
  rows.reserve(atoms.size() * 3);
  rhs.reserve(atoms.size());
  for (const auto& a : atoms) {
    const Vec2 u = unit_vector(a.theta);
    rows.push_back(u.x);
    rows.push_back(u.y);
    rows.push_back(1.0);
    rhs.push_back(p.support(u));
  }
  const double obj[3] = {0.0, 0.0, 1.0};
  const auto res = lp::maximize_inequality_form(3, rows, rhs, std::span<const double>(obj, 3));
  if (res.status != lp::Status::kOptimal)
    throw InvalidInput("max_inscribed_circle: LP failed");
  return {{res.y[0], res.y[1]}, res.objective};
}

Scalars scalars(const Polygon2& p) {
  if (p.empty()) throw InvalidInput("scalars: empty polygon");
  Scalars out;
  out.area = p.area();
  out.perimeter = p.perimeter();
  out.centroid = p.centroid();

  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      out.diameter = std::max(out.diameter, (v[i] - v[j]).norm());

  if (p.is_proper()) {
    out.min_width = std::numeric_limits<double>::infinity();
    const AtomicMeasure1 mu = area_measure(p);
    for (const auto& a : mu.atoms())
      out.min_width = std::min(out.min_width, p.width(a.theta));
  } else {
    out.min_width = 0.0;
  }

  auto [ic, ir] = max_inscribed_circle(p);
  out.inradius = ir;
  auto [cc, cr] = min_enclosing_circle(v);
  (void)ic;
  (void)cc;
  out.circumradius = cr;

  const Spectrum s = fourier_support(p, 1, Spectrum::Convention::kRaw);
  out.steiner_point = {s.at(1).real(), s.at(1).imag()};
  return out;
}

Scalars scalars(const SampledSupport2& s) {
  Scalars out;
  const AtomicMeasure1 mu = s.discrete_area_measure();
  out.perimeter = mu.total_mass();
  double area = 0.0;
  for (const auto& a : mu.atoms()) area += a.weight * s.support(a.theta);
  out.area = 0.5 * area;

  const int n = s.n();
  out.min_width = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n / 2; ++k) {
    const double w = s.at(k) + s.at(k + n / 2);
    out.min_width = std::min(out.min_width, w);
    out.diameter = std::max(out.diameter, w);
  }

  const Polygon2 poly = s.to_polygon();
  auto [ic, ir] = max_inscribed_circle(poly);
  auto [cc, cr] = min_enclosing_circle(poly.vertices());
  (void)ic;
  (void)cc;
  out.inradius = ir;
  out.circumradius = cr;
  out.centroid = poly.centroid();

  const Spectrum spec = fourier_support(s, 1, Spectrum::Convention::kRaw);
  out.steiner_point = {spec.at(1).real(), spec.at(1).imag()};
  return out;
}

SampledSupport2 reuleaux_triangle(int n, double w) {
  if (n < 64) throw InvalidInput("reuleaux_triangle: n must be >= 64");
  const double rho = w / std::sqrt(3.0);
  const Vec2 verts[3] = {{0.0, rho},
                         {-std::sqrt(3.0) / 2.0 * rho, -rho / 2.0},
                         {std::sqrt(3.0) / 2.0 * rho, -rho / 2.0}};
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = kTwoPi * k / n;
    const Vec2 u = unit_vector(theta);
    // 60-degree sectors starting at 60 degrees: even sectors see a corner,
    // odd sectors see the arc centered at the opposite corner.
    const double t = wrap_angle(theta - kPi / 3.0);
    const int sector = std::min(5, static_cast<int>(t / (kPi / 3.0)));
    double value;
    if (sector % 2 == 0) {
      value = verts[sector / 2].dot(u);
    } else {
      value = w + verts[((sector + 3) / 2) % 3].dot(u);
    }
    h[static_cast<std::size_t>(k)] = value;
  }
  return SampledSupport2(n, std::move(h));
}

}  // namespace cdb
