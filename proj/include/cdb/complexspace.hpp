#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cdb/planar.hpp"

namespace cdb {

// Point of R^{2m} under the identification
//   (w_1, ..., w_m) in C^m  <->  (Re w_1, Im w_1, ..., Re w_m, Im w_m).
// Only the first 2m entries are used; trailing entries stay zero for m = 1.
using R4 = std::array<double, 4>;

double dot(const R4& a, const R4& b, int m);
double norm(const R4& a, int m);
// Coordinate-wise complex multiplication by alpha.
R4 complex_scale_point(const R4& p, int m, std::complex<double> alpha);
// Multiplication by i (the complex structure J).
R4 apply_j(const R4& p, int m);
// Hermitian pairing (u, v) = sum_j u_j conj(v_j); conjugate-linear in v.
// Its real part is <u, v>, its imaginary part is <-Jv, u> ... = <u, Jv>.
std::complex<double> hermitian_pair(const R4& u, const R4& v, int m);

// Convex polytope in C^m given by its extreme points.
class PolytopeCm {
 public:
  PolytopeCm() = default;
  // validate_extreme runs a feasibility program per vertex certifying that
  // the list consists of extreme points only (duplicates are removed first).
  PolytopeCm(int m, std::vector<R4> vertices, bool validate_extreme = true);

  int m() const { return m_; }
  int dim_ambient() const { return 2 * m_; }
  const std::vector<R4>& vertices() const { return verts_; }
  double support(const R4& u) const;

 private:
  int m_ = 1;
  std::vector<R4> verts_;
};

// Euclidean ball of C^m centered at the origin; exact support function,
// used where polytope approximation would spoil exactness (S^1-invariant
// fixed-point tests).
struct BallCm {
  int m = 1;
  double radius = 1.0;
};

double support_cm(const PolytopeCm& body, const R4& u);
double support_cm(const BallCm& body, const R4& u);

// The body sum_i s_i alpha_i B_i with alpha_i = e^{i theta_i}: the exact
// representation of weighted rotation combinations. Supports are evaluated
// through h(alpha B, u) = h(B, conj(alpha) u); the body is never
// materialized as a vertex list.
class SupportOracleCm {
 public:
  struct Term {
    double s = 1.0;      // positive weight
    double theta = 0.0;  // rotation angle
    std::variant<PolytopeCm, BallCm> base;
  };

  SupportOracleCm() = default;
  SupportOracleCm(int m, std::vector<Term> terms);

  int m() const { return m_; }
  const std::vector<Term>& terms() const { return terms_; }
  double total_weight() const;
  double support(const R4& u) const;

 private:
  int m_ = 1;
  std::vector<Term> terms_;
};

double support_cm(const SupportOracleCm& body, const R4& u);

PolytopeCm complex_scale(const PolytopeCm& k, std::complex<double> alpha);

// Planar shadow of K on the complex line spanned by xi: the hull of
// (Re (xi, v), Im (xi, v)) over the vertices of K.
Polygon2 project_to_complex_line(const PolytopeCm& k, const R4& xi);

// Affine dimension of the body. For an oracle this uses the fact that the
// affine hull of a Minkowski sum is the sum of the terms' affine hulls:
// the rank of all centered, rotated vertex generators decides it. Rank is
// determined by singular values above rel_tol times the largest one.
int affine_dim(const PolytopeCm& k, double rel_tol = 1e-8);
int affine_dim(const SupportOracleCm& k, double rel_tol = 1e-8);

// Max over a grid of unimodular alpha and a fixed direction net of
// |h(alpha B, u) - h(B, u)|; zero exactly for S^1-invariant bodies.
double s1_invariance_defect(const PolytopeCm& b, int n_angles);
double s1_invariance_defect(const SupportOracleCm& b, int n_angles);

// Deterministic pseudo-random unit direction net on S^{2m-1}.
std::vector<R4> direction_net(int m, int count, std::uint64_t seed);

// Convenience constructions used across tests and corpora.
PolytopeCm cube_cm(int m, double half_side);             // [-a, a]^{2m}
PolytopeCm cross_polytope_cm(int m, double a);           // conv{ +- a e_i }
PolytopeCm segment_cm(int m, const R4& from, const R4& to);
// Regular n-gon approximation of the disc of given radius inside the
// complex coordinate line `coord` of C^m.
PolytopeCm disc_in_line_cm(int m, int coord, double radius, int n = 256);
// Inscribed polytope approximation of the unit ball of C^2 built from a
// product grid on S^3 (all vertices lie on the sphere).
PolytopeCm inscribed_ball_c2(int n_theta, int n_psi, int n_r);

}  // namespace cdb
