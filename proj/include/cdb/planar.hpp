#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace cdb {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double px, double py) : x(px), y(py) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const;

  // Complex multiplication under the identification (x, y) = x + iy.
  Vec2 cmul(const Vec2& o) const { return {x * o.x - y * o.y, x * o.y + y * o.x}; }
};

Vec2 unit_vector(double theta);
// Wraps an angle into [0, 2pi).
double wrap_angle(double theta);

// Convex polygon in canonical form: counterclockwise, strictly convex
// vertex chain starting at the lexicographically smallest vertex.
// Points (1 vertex) and segments (2 vertices) are admitted as degenerate
// polygons so that segment bodies are first-class citizens.
class Polygon2 {
 public:
  Polygon2() = default;  // empty polygon (no vertices); used as "empty result"
  // Builds the convex hull of the given points and canonicalizes it.
  explicit Polygon2(std::span<const Vec2> points);
  explicit Polygon2(std::initializer_list<Vec2> points);

  const std::vector<Vec2>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  bool empty() const { return verts_.empty(); }
  bool is_point() const { return verts_.size() == 1; }
  bool is_segment() const { return verts_.size() == 2; }
  bool is_proper() const { return verts_.size() >= 3; }

  double support(const Vec2& dir) const;
  double support(double theta) const;
  // Width in direction theta: h(theta) + h(theta + pi).
  double width(double theta) const;

  double area() const;
  // Boundary measure: for a segment this is twice its length, matching the
  // convention that makes the surface area measure of a segment carry the
  // segment length on each of its two normals.
  double perimeter() const;
  Vec2 centroid() const;

  Polygon2 translated(const Vec2& t) const;

 private:
  std::vector<Vec2> verts_;
};

bool approx_equal(const Polygon2& a, const Polygon2& b, double tol);
// Hausdorff distance, computed exactly as the sup-norm distance of support
// functions over the union of both bodies' normal fans plus a uniform net.
double hausdorff_distance(const Polygon2& a, const Polygon2& b);

// Convex hull + canonicalization of an arbitrary finite point set.
Polygon2 polygon_from_points(std::span<const Vec2> points);

// Vertex-wise complex scaling: every vertex is multiplied by rho = a + ib.
// rho = 0 collapses the body to the origin.
Polygon2 rotate_scale(const Polygon2& p, std::complex<double> rho);

// Exact Minkowski sum by merging the two edge sequences in normal order.
Polygon2 minkowski_sum(const Polygon2& p, const Polygon2& q);

// Exact intersection of convex polygons; empty intersection yields nullopt.
std::optional<Polygon2> polygon_intersect(const Polygon2& p, const Polygon2& q);

// Intersection of half-planes {x : <x,u_i> <= h_i} clipped to the square
// [-bound,bound]^2; nullopt when the feasible set is empty.
struct HalfPlane {
  Vec2 u;    // outward unit normal
  double h;  // offset
};
std::optional<Polygon2> halfplane_intersection(std::span<const HalfPlane> planes,
                                               double bound);

// Atomic measure on the circle: finitely many atoms (angle, weight > 0),
// angles strictly increasing in [0, 2pi). Atoms closer than the merge
// tolerance are combined (weights added, angle weight-averaged).
class AtomicMeasure1 {
 public:
  struct Atom {
    double theta = 0.0;
    double weight = 0.0;
  };

  AtomicMeasure1() = default;
  explicit AtomicMeasure1(std::vector<Atom> atoms, double merge_tol = 1e-9);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;
  // Norm of sum_i w_i (cos t_i, sin t_i); zero for surface area measures.
  double closure_residual() const;

 private:
  std::vector<Atom> atoms_;
};

// Surface area measure of a polygon: one atom per edge at the outward
// normal angle, weighted by edge length. A single point yields the empty
// measure; a segment yields two atoms of weight = length.
AtomicMeasure1 area_measure(const Polygon2& p);

// Reconstructs the (Steiner-centered) polygon with the given surface area
// measure. Throws MeasureError when the closure residual exceeds tol.
Polygon2 body_from_measure(const AtomicMeasure1& mu, double tol = 1e-7);

// Support function sampled on the uniform grid theta_k = 2 pi k / n with n
// a power of two >= 64. Off-grid evaluation is trigonometric interpolation
// (exact for band-limited support functions); samples of convex bodies
// satisfy the discrete convexity inequality
//   h_{k-1} + h_{k+1} - 2 cos(2pi/n) h_k >= -tol.
class SampledSupport2 {
 public:
  SampledSupport2() = default;
  SampledSupport2(int n, std::vector<double> h, double convexity_tol = 1e-9);

  int n() const { return n_; }
  const std::vector<double>& grid_values() const { return h_; }
  double at(int k) const;  // h at grid index k (wrapped)
  double grid_angle(int k) const;

  double support(double theta) const;  // trig interpolation off grid
  double width(double theta) const;

  // Discrete surface area measure: atom s_k = (h_{k-1} + h_{k+1}
  // - 2 cos(2pi/n) h_k) / sin(2pi/n) at angle theta_k. Mirrors the
  // distributional identity S = h'' + h on the grid.
  AtomicMeasure1 discrete_area_measure() const;

  // Body rotated by the grid angle 2 pi s / n (exact index shift).
  SampledSupport2 rotated_grid(int s) const;

  // Circumscribed tangent polygon: intersection of the n grid half-planes.
  Polygon2 to_polygon() const;

 private:
  int n_ = 0;
  std::vector<double> h_;
  std::vector<std::complex<double>> hhat_;  // DFT of h, for interpolation
};

// Samples the support function of a polygon on an n-point grid.
SampledSupport2 sample_polygon(const Polygon2& p, int n);
// Disc of radius r centered at c, as a sampled body (exact support values).
SampledSupport2 sample_disc(int n, double r, const Vec2& c = {0.0, 0.0});

// Fourier data of a support function or measure on the circle. Two
// conventions are carried explicitly:
//   Raw:         c_0 = (1/2pi) Int f,  c_j = (1/pi) Int e^{i j a} f(a) da
//   Multiplier:  c_j = Int_0^{2pi} e^{-i j a} f(a) da        (all j)
// The identity c_j(S_C) = (1 - j^2) c_j(h_C) holds in both conventions;
// the multiplier convention is the one in which the planar multiplier
// identity c_j(h_{D_C K}) = c_j(S_C) c_j(h_K) is exact.
class Spectrum {
 public:
  enum class Convention { kRaw, kMultiplier };

  Spectrum() = default;
  Spectrum(int cutoff, Convention conv);

  int cutoff() const { return J_; }
  Convention convention() const { return conv_; }

  std::complex<double> at(int j) const;
  void set(int j, std::complex<double> v);

  Spectrum to(Convention conv) const;
  // Largest |c_j| over 2 <= |j| <= cutoff (the translation-invariant range).
  double max_abs_high() const;

 private:
  int J_ = 0;
  Convention conv_ = Convention::kRaw;
  std::vector<std::complex<double>> c_;  // index j + J_
};

// Exact Fourier coefficients of a polygon support function (piecewise
// trigonometric integrals over the normal fan).
Spectrum fourier_support(const Polygon2& p, int cutoff,
                         Spectrum::Convention conv = Spectrum::Convention::kRaw);
// DFT-based coefficients of a sampled support function; requires n >= 4J.
// Aliasing: coefficient j absorbs all tones j + k n of the underlying h.
Spectrum fourier_support(const SampledSupport2& s, int cutoff,
                         Spectrum::Convention conv = Spectrum::Convention::kRaw);
// Exact finite sums over the atoms of a measure.
Spectrum fourier_measure(const AtomicMeasure1& mu, int cutoff,
                         Spectrum::Convention conv = Spectrum::Convention::kRaw);

// Reconstructs h(theta) = sum_{|j| <= J} c_j e^{i j theta} from a raw
// spectrum (the j = 0 term once, conjugate-symmetric tail).
double spectrum_eval(const Spectrum& raw, double theta);

// Mixed-area integral Int h_K dS(C, .) = area(K+C) - area(K) - area(C),
// evaluated as the exact atom sum over the surface area measure of C.
double mixed_area_integral(const Polygon2& k, const Polygon2& c);
double mixed_area_integral(const SampledSupport2& k, const Polygon2& c);

struct Scalars {
  double area = 0.0;
  double perimeter = 0.0;
  double min_width = 0.0;
  double diameter = 0.0;
  double inradius = 0.0;
  double circumradius = 0.0;
  Vec2 steiner_point;
  Vec2 centroid;
};

Scalars scalars(const Polygon2& p);
Scalars scalars(const SampledSupport2& s);

// Smallest enclosing circle (center, radius) of a planar point set.
std::pair<Vec2, double> min_enclosing_circle(std::span<const Vec2> points);
// Largest inscribed circle of a proper polygon (center, radius).
std::pair<Vec2, double> max_inscribed_circle(const Polygon2& p);

// Constant-width body of width w on an n-point grid: piecewise support
// function of the classical three-arc body built over an equilateral
// triangle (corner sectors take the vertex support, opposite sectors add
// the width to the far vertex support).
SampledSupport2 reuleaux_triangle(int n, double w = 1.0);

}  // namespace cdb
