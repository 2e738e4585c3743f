#include "cdb/diffbody.hpp"

#include <cmath>

#include "cdb/errors.hpp"

namespace cdb {

SupportOracleCm dc_polytope(const Polygon2& c, const PolytopeCm& k) {
  std::vector<SupportOracleCm::Term> terms;
  const AtomicMeasure1 mu = area_measure(c);
  for (const auto& a : mu.atoms()) terms.push_back({a.weight, a.theta, k});
  return SupportOracleCm(k.m(), std::move(terms));
}

SupportOracleCm dc_polytope(const Polygon2& c, const BallCm& k) {
  std::vector<SupportOracleCm::Term> terms;
  const AtomicMeasure1 mu = area_measure(c);
  for (const auto& a : mu.atoms()) terms.push_back({a.weight, a.theta, k});
  return SupportOracleCm(k.m, std::move(terms));
}

Polygon2 dc_planar(const Polygon2& c, const Polygon2& k) {
  if (c.empty() || k.empty()) throw InvalidInput("dc_planar: empty body");
  const auto atoms = area_measure(c).atoms();
  if (atoms.empty()) return Polygon2({Vec2{0.0, 0.0}});
  Polygon2 acc;
  bool first = true;
  for (const auto& a : atoms) {
    const Polygon2 term = rotate_scale(k, std::polar(a.weight, a.theta));
    acc = first ? term : minkowski_sum(acc, term);
    first = false;
  }
  return acc;
}

namespace {

// Grid index of an on-grid angle; throws when the angle is off the grid.
int grid_shift(double theta, int n) {
  const double pos = wrap_angle(theta) * n / kTwoPi;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) > 1e-9 * n)
    throw ResolutionError("dc_planar_sampled: measure atom off the sample grid");
  return static_cast<int>(nearest) % n;
}

SampledSupport2 convolve_on_grid(const AtomicMeasure1& mu, const SampledSupport2& k) {
  const int n = k.n();
  std::vector<double> h(static_cast<std::size_t>(n), 0.0);
  for (const auto& a : mu.atoms()) {
    const int shift = grid_shift(a.theta, n);
    for (int i = 0; i < n; ++i)
      h[static_cast<std::size_t>(i)] += a.weight * k.at(i - shift);
  }
  return SampledSupport2(n, std::move(h));
}

}  // namespace

SampledSupport2 dc_planar_sampled(const Polygon2& c, const SampledSupport2& k) {
  return convolve_on_grid(area_measure(c), k);
}

SampledSupport2 dc_planar_sampled(const SampledSupport2& c, const SampledSupport2& k) {
  if (c.n() != k.n())
    throw ResolutionError("dc_planar_sampled: sample grids do not match");
  return convolve_on_grid(c.discrete_area_measure(), k);
}

AtomicMeasure1 convolve_measures(const AtomicMeasure1& sc, const AtomicMeasure1& sk) {
  std::vector<AtomicMeasure1::Atom> atoms;
  atoms.reserve(sc.size() * sk.size());
  for (const auto& a : sc.atoms())
    for (const auto& b : sk.atoms())
      atoms.push_back({wrap_angle(a.theta + b.theta), a.weight * b.weight});
  return AtomicMeasure1(std::move(atoms));
}

PolytopeCm ic_times_u(const Polygon2& c, const R4& u, int m) {
  std::vector<R4> verts;
  verts.reserve(c.size());
  for (const Vec2& v : c.vertices()) {
    // i * (vx + i vy) = -vy + i vx
    verts.push_back(complex_scale_point(u, m, {-v.y, v.x}));
  }
  return PolytopeCm(m, std::move(verts), false);
}

SupportOracleCm dc_segment(const Polygon2& c, double a, double b, const R4& u, int m) {
  if (!(a < b)) throw InvalidInput("dc_segment: requires a < b");
  R4 from{};
  R4 to{};
  for (int d = 0; d < 2 * m; ++d) {
    from[static_cast<std::size_t>(d)] = a * u[static_cast<std::size_t>(d)];
    to[static_cast<std::size_t>(d)] = b * u[static_cast<std::size_t>(d)];
  }
  return dc_polytope(c, segment_cm(m, from, to));
}

std::pair<Polygon2, Polygon2> commute_m1(const Polygon2& c, const Polygon2& k) {
  return {dc_planar(c, k), dc_planar(k, c)};
}

Polygon2 steiner_centered(const Polygon2& p) {
  const Spectrum s = fourier_support(p, 1, Spectrum::Convention::kRaw);
  return p.translated({-s.at(1).real(), -s.at(1).imag()});
}

}  // namespace cdb
