#include "cdb/complexspace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "cdb/errors.hpp"
#include "cdb/lp.hpp"

namespace cdb {

namespace {

void check_m(int m) {
  if (m != 1 && m != 2) throw InvalidInput("complex dimension m must be 1 or 2");
}

constexpr double kPi = 3.1415926535897932384626433832795;

}  // namespace

double dot(const R4& a, const R4& b, int m) {
  double acc = 0.0;
  for (int i = 0; i < 2 * m; ++i) acc += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return acc;
}

double norm(const R4& a, int m) { return std::sqrt(dot(a, a, m)); }

R4 complex_scale_point(const R4& p, int m, std::complex<double> alpha) {
  R4 out{};
  const double re = alpha.real();
  const double im = alpha.imag();
  for (int j = 0; j < m; ++j) {
    const double x = p[static_cast<std::size_t>(2 * j)];
    const double y = p[static_cast<std::size_t>(2 * j + 1)];
    out[static_cast<std::size_t>(2 * j)] = x * re - y * im;
    out[static_cast<std::size_t>(2 * j + 1)] = x * im + y * re;
  }
  return out;
}

R4 apply_j(const R4& p, int m) { return complex_scale_point(p, m, {0.0, 1.0}); }

std::complex<double> hermitian_pair(const R4& u, const R4& v, int m) {
  std::complex<double> acc{0.0, 0.0};
  for (int j = 0; j < m; ++j) {
    const std::complex<double> uj(u[static_cast<std::size_t>(2 * j)], u[static_cast<std::size_t>(2 * j + 1)]);
    const std::complex<double> vj(v[static_cast<std::size_t>(2 * j)], v[static_cast<std::size_t>(2 * j + 1)]);
    acc += uj * std::conj(vj);
  }
  return acc;
}

namespace {

// v is extreme in the list iff it is not a convex combination of the rest.
bool is_extreme(const std::vector<R4>& verts, std::size_t idx, int dim) {
  const std::size_t n = verts.size();
  if (n <= 1) return true;
  lp::Problem p;
  p.m = dim + 1;
  p.n = static_cast<int>(n - 1);
  p.a.assign(static_cast<std::size_t>(p.m) * p.n, 0.0);
  p.b.assign(static_cast<std::size_t>(p.m), 0.0);
  p.c.assign(static_cast<std::size_t>(p.n), 0.0);
  int col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == idx) continue;
    for (int d = 0; d < dim; ++d)
      p.a[static_cast<std::size_t>(d) * p.n + col] = verts[j][static_cast<std::size_t>(d)];
    p.a[static_cast<std::size_t>(dim) * p.n + col] = 1.0;
    ++col;
  }
  for (int d = 0; d < dim; ++d) p.b[static_cast<std::size_t>(d)] = verts[idx][static_cast<std::size_t>(d)];
  p.b[static_cast<std::size_t>(dim)] = 1.0;
  return !lp::feasible(p, 1e-9);
}

}  // namespace

PolytopeCm::PolytopeCm(int m, std::vector<R4> vertices, bool validate_extreme)
    : m_(m) {
  check_m(m);
  if (vertices.empty()) throw InvalidInput("polytope: needs at least one vertex");
  for (const R4& v : vertices)
    for (int d = 0; d < 2 * m_; ++d)
      if (!std::isfinite(v[static_cast<std::size_t>(d)]))
        throw InvalidInput("polytope: non-finite coordinate");
  // dedupe
  for (const R4& v : vertices) {
    bool dup = false;
    for (const R4& w : verts_) {
      double d2 = 0.0;
      for (int d = 0; d < 2 * m_; ++d) {
        const double diff = v[static_cast<std::size_t>(d)] - w[static_cast<std::size_t>(d)];
        d2 += diff * diff;
      }
      if (d2 <= 1e-18) {
        dup = true;
        break;
      }
    }
    if (!dup) verts_.push_back(v);
  }
  if (validate_extreme && verts_.size() > 1) {
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (!is_extreme(verts_, i, 2 * m_))
        throw InvalidInput("polytope: vertex list contains a non-extreme point");
    }
  }
}

double PolytopeCm::support(const R4& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const R4& v : verts_) best = std::max(best, dot(v, u, m_));
  return best;
}

double support_cm(const PolytopeCm& body, const R4& u) { return body.support(u); }

double support_cm(const BallCm& body, const R4& u) {
  return body.radius * norm(u, body.m);
}

SupportOracleCm::SupportOracleCm(int m, std::vector<Term> terms)
    : m_(m), terms_(std::move(terms)) {
  check_m(m);
  for (const Term& t : terms_) {
    if (!(t.s > 0.0)) throw InvalidInput("oracle: nonpositive term weight");
    const int bm = std::holds_alternative<PolytopeCm>(t.base)
                       ? std::get<PolytopeCm>(t.base).m()
                       : std::get<BallCm>(t.base).m;
    if (bm != m_) throw InvalidInput("oracle: term dimension mismatch");
  }
}

double SupportOracleCm::total_weight() const {
  double acc = 0.0;
  for (const Term& t : terms_) acc += t.s;
  return acc;
}

double SupportOracleCm::support(const R4& u) const {
  double acc = 0.0;
  for (const Term& t : terms_) {
    const R4 ru = complex_scale_point(u, m_, std::polar(1.0, -t.theta));
    const double h = std::holds_alternative<PolytopeCm>(t.base)
                         ? std::get<PolytopeCm>(t.base).support(ru)
                         : support_cm(std::get<BallCm>(t.base), ru);
    acc += t.s * h;
  }
  return acc;
}

double support_cm(const SupportOracleCm& body, const R4& u) { return body.support(u); }

PolytopeCm complex_scale(const PolytopeCm& k, std::complex<double> alpha) {
  std::vector<R4> verts;
  verts.reserve(k.vertices().size());
  for (const R4& v : k.vertices()) verts.push_back(complex_scale_point(v, k.m(), alpha));
  // Scaling by alpha != 0 preserves extremeness; alpha = 0 collapses to a point.
  return PolytopeCm(k.m(), std::move(verts), false);
}

Polygon2 project_to_complex_line(const PolytopeCm& k, const R4& xi) {
  std::vector<Vec2> shadow;
  shadow.reserve(k.vertices().size());
  for (const R4& v : k.vertices()) {
    const std::complex<double> z = hermitian_pair(xi, v, k.m());
    shadow.push_back({z.real(), z.imag()});
  }
  return Polygon2(shadow);
}

namespace {

int rank_of_rows(const std::vector<R4>& rows, int dim, double rel_tol) {
  if (rows.empty()) return 0;
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int d = 0; d < dim; ++d)
      a(static_cast<Eigen::Index>(i), d) = rows[i][static_cast<std::size_t>(d)];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

void append_generators(std::vector<R4>& rows, const PolytopeCm& k,
                       std::complex<double> alpha) {
  const auto& verts = k.vertices();
  if (verts.size() < 2) return;
  const R4& v0 = verts[0];
  for (std::size_t i = 1; i < verts.size(); ++i) {
    R4 gen{};
    for (int d = 0; d < 2 * k.m(); ++d)
      gen[static_cast<std::size_t>(d)] = verts[i][static_cast<std::size_t>(d)] - v0[static_cast<std::size_t>(d)];
    rows.push_back(complex_scale_point(gen, k.m(), alpha));
  }
}

}  // namespace

int affine_dim(const PolytopeCm& k, double rel_tol) {
  std::vector<R4> rows;
  append_generators(rows, k, {1.0, 0.0});
  return rank_of_rows(rows, 2 * k.m(), rel_tol);
}

int affine_dim(const SupportOracleCm& k, double rel_tol) {
  std::vector<R4> rows;
  for (const auto& t : k.terms()) {
    if (std::holds_alternative<BallCm>(t.base)) {
      if (std::get<BallCm>(t.base).radius > 0.0) {
        for (int d = 0; d < 2 * k.m(); ++d) {
          R4 e{};
          e[static_cast<std::size_t>(d)] = 1.0;
          rows.push_back(e);
        }
      }
      continue;
    }
    append_generators(rows, std::get<PolytopeCm>(t.base), std::polar(1.0, t.theta));
  }
  return rank_of_rows(rows, 2 * k.m(), rel_tol);
}

namespace {

template <typename Body>
double defect_impl(const Body& b, int m, int n_angles) {
  const auto net = direction_net(m, m == 1 ? 64 : 200, 20240920u);
  double defect = 0.0;
  for (int t = 0; t < n_angles; ++t) {
    const double ang = kTwoPi * t / n_angles;
    const std::complex<double> alpha_conj = std::polar(1.0, -ang);
    for (const R4& u : net) {
      const double h_rot = support_cm(b, complex_scale_point(u, m, alpha_conj));
      const double h = support_cm(b, u);
      defect = std::max(defect, std::abs(h_rot - h));
    }
  }
  return defect;
}

}  // namespace

double s1_invariance_defect(const PolytopeCm& b, int n_angles) {
  return defect_impl(b, b.m(), n_angles);
}

double s1_invariance_defect(const SupportOracleCm& b, int n_angles) {
  return defect_impl(b, b.m(), n_angles);
}

std::vector<R4> direction_net(int m, int count, std::uint64_t seed) {
  check_m(m);
  std::vector<R4> net;
  net.reserve(static_cast<std::size_t>(count) + 8);
  // coordinate directions first so symmetric bodies meet their extrema
  for (int d = 0; d < 2 * m; ++d) {
    R4 e{};
    e[static_cast<std::size_t>(d)] = 1.0;
    net.push_back(e);
    e[static_cast<std::size_t>(d)] = -1.0;
    net.push_back(e);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (net.size() < static_cast<std::size_t>(count)) {
    R4 u{};
    double n2 = 0.0;
    for (int d = 0; d < 2 * m; ++d) {
      u[static_cast<std::size_t>(d)] = gauss(rng);
      n2 += u[static_cast<std::size_t>(d)] * u[static_cast<std::size_t>(d)];
    }
    if (n2 < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (int d = 0; d < 2 * m; ++d) u[static_cast<std::size_t>(d)] *= inv;
    net.push_back(u);
  }
  return net;
}

PolytopeCm cube_cm(int m, double half_side) {
  check_m(m);
  std::vector<R4> verts;
  const int dim = 2 * m;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    R4 v{};
    for (int d = 0; d < dim; ++d)
      v[static_cast<std::size_t>(d)] = (mask >> d & 1) ? half_side : -half_side;
    verts.push_back(v);
  }
  return PolytopeCm(m, std::move(verts), false);
}

PolytopeCm cross_polytope_cm(int m, double a) {
  check_m(m);
  std::vector<R4> verts;
  for (int d = 0; d < 2 * m; ++d) {
    R4 v{};
    v[static_cast<std::size_t>(d)] = a;
    verts.push_back(v);
    v[static_cast<std::size_t>(d)] = -a;
    verts.push_back(v);
  }
  return PolytopeCm(m, std::move(verts), false);
}

PolytopeCm segment_cm(int m, const R4& from, const R4& to) {
  return PolytopeCm(m, {from, to}, false);
}

PolytopeCm disc_in_line_cm(int m, int coord, double radius, int n) {
  check_m(m);
  if (coord < 0 || coord >= m) throw InvalidInput("disc_in_line_cm: bad coordinate");
  std::vector<R4> verts;
  verts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    R4 v{};
    v[static_cast<std::size_t>(2 * coord)] = radius * std::cos(t);
    v[static_cast<std::size_t>(2 * coord + 1)] = radius * std::sin(t);
    verts.push_back(v);
  }
  return PolytopeCm(m, std::move(verts), false);
}

PolytopeCm inscribed_ball_c2(int n_theta, int n_psi, int n_r) {
  std::vector<R4> verts;
  // poles of each complex coordinate line
  for (int t = 0; t < n_theta; ++t) {
    const double th = kTwoPi * t / n_theta;
    verts.push_back({std::cos(th), std::sin(th), 0.0, 0.0});
  }
  for (int s = 0; s < n_psi; ++s) {
    const double ps = kTwoPi * s / n_psi;
    verts.push_back({0.0, 0.0, std::cos(ps), std::sin(ps)});
  }
  for (int i = 1; i <= n_r; ++i) {
    const double r = std::sin(0.5 * kPi * i / (n_r + 1));
    const double q = std::sqrt(1.0 - r * r);
    for (int t = 0; t < n_theta; ++t) {
      const double th = kTwoPi * t / n_theta;
      for (int s = 0; s < n_psi; ++s) {
        const double ps = kTwoPi * s / n_psi;
        verts.push_back({r * std::cos(th), r * std::sin(th), q * std::cos(ps),
                         q * std::sin(ps)});
      }
    }
  }
  // All vertices lie on S^3, hence are extreme; skip the per-vertex programs.
  return PolytopeCm(2, std::move(verts), false);
}

}  // namespace cdb
