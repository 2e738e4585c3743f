#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <vector>

#include "cdb/errors.hpp"
#include "cdb/verify.hpp"

using namespace cdb;
using namespace cdb::verify;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTau = 2.0 * kPi;

Polygon2 unit_square() {
  return Polygon2({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
}

Polygon2 scalene() { return Polygon2({{0.0, 0.0}, {0.9, 0.1}, {0.2, 0.6}}); }

Polygon2 four_group() {
  // Four normals on the axes, each side 1/4: total perimeter 1.
  return regular_polygon(4, std::sqrt(2.0) / 8.0);
}

PolytopeCm product_of(const Polygon2& p, const Polygon2& q) {
  std::vector<R4> verts;
  for (const Vec2& a : p.vertices())
    for (const Vec2& b : q.vertices()) verts.push_back({a.x, a.y, b.x, b.y});
  return PolytopeCm(2, verts);
}

// Exact membership of a point in a polygon through its facet inequalities.
bool in_polygon(const Polygon2& p, const Vec2& x, double tol = 1e-9) {
  const AtomicMeasure1 mu = area_measure(p);
  if (mu.size() == 0) return (x - p.vertices().front()).norm() <= tol;
  for (const auto& atom : mu.atoms()) {
    const Vec2 u = unit_vector(atom.theta);
    if (x.dot(u) > p.support(u) + tol) return false;
  }
  if (p.is_segment()) {
    const Vec2 a = p.vertices()[0];
    const Vec2 e = p.vertices()[1] - a;
    const double t = e.dot(x - a);
    if (t < -tol || t > e.norm2() + tol) return false;
    if (std::abs(e.cross(x - a)) > tol * (1.0 + e.norm())) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

TEST_CASE("report pass logic distinguishes hard and soft lines") {
  Report rep;
  rep.add("holds", 1.0, 2.0, 0.0);
  rep.add("soft_fails", 3.0, 2.0, 0.0, /*hard=*/false);
  CHECK(rep.pass());
  CHECK(rep.find("soft_fails") != nullptr);
  CHECK_FALSE(rep.find("soft_fails")->pass);
  CHECK(rep.find("missing") == nullptr);

  rep.add_equality("eq", 1.0, 1.0 + 1e-12, 1e-9);
  CHECK(rep.lines.back().pass);
  rep.add("hard_fails", 5.0, 2.0, 0.0);
  CHECK_FALSE(rep.pass());
}

// ---------------------------------------------------------------------------
// Quermassintegrals, mixed volume, Brunn-Minkowski
// ---------------------------------------------------------------------------

TEST_CASE("square with square reaches the area equality") {
  const Polygon2 c = unit_square();  // perimeter 4, normals on the axes
  const Polygon2 k = unit_square();
  const Report rep = quermass_check_m1(c, k, /*expect_area_equality=*/true);
  CHECK(rep.pass());
  const BoundLine* eq = rep.find("w0_area_equality");
  REQUIRE(eq != nullptr);
  CHECK(eq->pass);
  // area(D) = l(C)^2 area(K) = 16 here.
  CHECK(rep.find("w0_area_lower")->lhs == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("perimeter line is an equality for every pair") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon2 c = random_polygon(rng, 5, 1.0);
    const Polygon2 k = random_polygon(rng, 6, 0.8);
    const Report rep = quermass_check_m1(c, k);
    const BoundLine* line = rep.find("w1_perimeter_linear");
    REQUIRE(line != nullptr);
    CHECK(line->pass);
  }
}

TEST_CASE("point bodies keep the quermass bounds trivially") {
  const Polygon2 point({Vec2{0.3, -0.2}});
  const Report rep = quermass_check_m1(unit_square(), point);
  CHECK(rep.pass());
  CHECK(rep.find("w0_area_lower")->lhs == 0.0);
}

TEST_CASE("mixed volume bound holds and is exact for invariant bodies") {
  // K a regular 64-gon and C with axis normals: D = l(C) K, so the mixed
  // volume equals l(C) area(K) exactly.
  const Polygon2 k = regular_polygon(64, 0.7);
  const Polygon2 c = unit_square();
  const Report rep = mixed_volume_check_m1(c, k);
  CHECK(rep.pass());
  const BoundLine* line = rep.find("mixed_volume_lower");
  CHECK(line->lhs == doctest::Approx(line->rhs).epsilon(1e-9));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon2 cc = random_polygon(rng, 4, 1.0);
    const Polygon2 kk = random_polygon(rng, 5, 1.0);
    CHECK(mixed_volume_check_m1(cc, kk).pass());
  }
}

TEST_CASE("brunn-minkowski superadditivity with equality at K = L") {
  const Polygon2 c = regular_polygon(3, 0.6);
  const Polygon2 k = scalene();
  const Report eq = brunn_minkowski_check_m1(c, k, k);
  CHECK(eq.pass());
  const BoundLine* line = eq.find("sqrt_area_superadditive");
  CHECK(line->lhs == doctest::Approx(line->rhs).epsilon(1e-9));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon2 cc = random_polygon(rng, 5, 0.8);
    const Polygon2 kk = random_polygon(rng, 4, 1.0);
    const Polygon2 ll = random_polygon(rng, 6, 0.7);
    CHECK(brunn_minkowski_check_m1(cc, kk, ll).pass());
  }
}

// ---------------------------------------------------------------------------
// Width / diameter chains
// ---------------------------------------------------------------------------

TEST_CASE("segment C forces equality through the planar chain") {
  const Polygon2 seg({{-0.4, 0.0}, {0.4, 0.0}});
  const Polygon2 k = scalene();
  const Report rep = width_diameter_check(seg, k);
  CHECK(rep.pass());
  REQUIRE(rep.find("segment_width_equality") != nullptr);
  CHECK(rep.find("segment_width_equality")->pass);
  CHECK(rep.find("segment_diameter_equality")->pass);
  // Soft flag is present and does not gate the verdict.
  CHECK_FALSE(rep.find("circumradius_lower")->hard);
}

TEST_CASE("planar chain holds on random pairs") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 15; ++trial) {
    const Polygon2 c = random_polygon(rng, 4 + trial % 3, 0.9);
    const Polygon2 k = random_polygon(rng, 5, 1.1);
    const Report rep = width_diameter_check(c, k);
    CHECK(rep.pass());
    CHECK(rep.find("segment_width_equality") == nullptr);
  }
}

TEST_CASE("sampled chain: square of a Reuleaux triangle is a ball") {
  const SampledSupport2 reuleaux = reuleaux_triangle(512);
  const Polygon2 c = unit_square();
  const Report rep = width_diameter_check(c, reuleaux);
  CHECK(rep.pass());
  // D is a disc of radius 2: minimal width and diameter both equal 4.
  CHECK(rep.find("width_lower")->lhs == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(rep.find("width_lower")->rhs == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(rep.find("diameter_upper")->lhs == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("C^2 chain holds for cube, cross, ball and segment C") {
  const Polygon2 square = unit_square();
  const Polygon2 seg({{-0.35, 0.0}, {0.35, 0.0}});

  const Report cube_rep = width_diameter_check(square, cube_cm(2, 0.5));
  CHECK(cube_rep.pass());
  CHECK_FALSE(cube_rep.find("circumradius_lower")->hard);

  const Report cross_rep = width_diameter_check(square, cross_polytope_cm(2, 0.6));
  CHECK(cross_rep.pass());

  const Report ball_rep = width_diameter_check(square, BallCm{2, 0.8});
  CHECK(ball_rep.pass());
  // Every width of a ball image is l(C) times the ball width.
  CHECK(ball_rep.find("width_lower")->lhs ==
        doctest::Approx(ball_rep.find("width_lower")->rhs).epsilon(1e-9));

  const Report seg_rep = width_diameter_check(seg, cube_cm(2, 0.5));
  CHECK(seg_rep.pass());
  REQUIRE(seg_rep.find("segment_width_equality") != nullptr);
  CHECK(seg_rep.find("segment_width_equality")->pass);
  CHECK(seg_rep.find("segment_diameter_equality")->pass);
}

// ---------------------------------------------------------------------------
// Smallest enclosing ball and exposed points
// ---------------------------------------------------------------------------

TEST_CASE("min enclosing ball matches known bodies") {
  {
    const auto [c, r] = min_enclosing_ball_r4(cube_cm(2, 0.3).vertices());
    CHECK(r == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(norm(c, 2) < 1e-9);
  }
  {
    const auto [c, r] = min_enclosing_ball_r4(cross_polytope_cm(2, 0.7).vertices());
    CHECK(r == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(norm(c, 2) < 1e-9);
  }
}

TEST_CASE("min enclosing ball is a correct and tight cover") {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<R4> pts(static_cast<std::size_t>(5 + trial));
    for (R4& p : pts)
      for (double& coord : p) coord = gauss(rng);
    const auto [c, r] = min_enclosing_ball_r4(pts);
    double maxdist = 0.0;
    for (const R4& p : pts) {
      const R4 diff{p[0] - c[0], p[1] - c[1], p[2] - c[2], p[3] - c[3]};
      maxdist = std::max(maxdist, norm(diff, 2));
    }
    CHECK(maxdist <= r + 1e-8);          // covers
    CHECK(maxdist >= r - 1e-8);          // some point on the boundary
  }
}

TEST_CASE("min enclosing ball agrees with the planar circle on embedded points") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Vec2> flat(12);
  std::vector<R4> lifted;
  for (Vec2& p : flat) {
    p = {unit(rng), unit(rng)};
    lifted.push_back({p.x, p.y, 0.0, 0.0});
  }
  const auto [c2, r2] = min_enclosing_circle(flat);
  const auto [c4, r4] = min_enclosing_ball_r4(lifted);
  CHECK(r4 == doctest::Approx(r2).epsilon(1e-9));
  CHECK(c4[0] == doctest::Approx(c2.x).epsilon(1e-7));
  CHECK(c4[1] == doctest::Approx(c2.y).epsilon(1e-7));
  CHECK(std::abs(c4[2]) < 1e-9);
  CHECK(std::abs(c4[3]) < 1e-9);
}

TEST_CASE("exposed points realize the support value") {
  const Polygon2 c = regular_polygon(8, 0.4, kPi / 8.0);
  const PolytopeCm k = product_of(scalene(), unit_square());
  const SupportOracleCm d = dc_polytope(c, k);
  for (const R4& u : direction_net(2, 25, 99)) {
    const R4 p = exposed_point(d, u);
    CHECK(dot(p, u, 2) == doctest::Approx(d.support(u)).epsilon(1e-11));
    const R4 q = exposed_point(k, u);
    CHECK(dot(q, u, 2) == doctest::Approx(k.support(u)).epsilon(1e-11));
  }
}

TEST_CASE("steiner point recovers translations in C^2") {
  const S3Quadrature quad = s3_quadrature(24, 32, 32);
  const R4 shift{0.3, -0.1, 0.2, 0.4};
  std::vector<R4> verts = cube_cm(2, 0.4).vertices();
  for (R4& v : verts)
    for (int i = 0; i < 4; ++i) v[i] += shift[i];
  const PolytopeCm moved(2, verts);
  const R4 s = steiner_point_c2([&moved](const R4& u) { return moved.support(u); }, quad);
  for (int i = 0; i < 4; ++i) CHECK(s[i] == doctest::Approx(shift[i]).epsilon(1e-6));

  const R4 zero = steiner_point_c2([](const R4& u) { return norm(u, 2); }, quad);
  CHECK(norm(zero, 2) < 1e-10);
}

// ---------------------------------------------------------------------------
// Membership and Monte-Carlo volume
// ---------------------------------------------------------------------------

TEST_CASE("membership program matches the exact product membership") {
  const Polygon2 c = regular_polygon(3, 0.5, kPi / 12.0);
  const Polygon2 p = scalene();
  const Polygon2 q = Polygon2({{-0.3, -0.2}, {0.4, -0.1}, {0.2, 0.5}});
  const SupportOracleCm d = dc_polytope(c, product_of(p, q));

  // Exact factorization of the image.
  const AtomicMeasure1 mu = area_measure(c);
  Polygon2 dp({Vec2{0.0, 0.0}});
  Polygon2 dq({Vec2{0.0, 0.0}});
  for (const auto& atom : mu.atoms()) {
    const std::complex<double> rho = std::polar(atom.weight, atom.theta);
    dp = minkowski_sum(dp, rotate_scale(p, rho));
    dq = minkowski_sum(dq, rotate_scale(q, rho));
  }

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(-1.2, 1.2);
  int inside_count = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const R4 x{unit(rng), unit(rng), unit(rng), unit(rng)};
    const bool via_lp = oracle_member(d, x);
    const bool via_product =
        in_polygon(dp, {x[0], x[1]}) && in_polygon(dq, {x[2], x[3]});
    CHECK(via_lp == via_product);
    inside_count += via_lp ? 1 : 0;
  }
  CHECK(inside_count > 10);  // the sample actually exercises both outcomes
  CHECK(inside_count < 240);
}

TEST_CASE("zero body membership and gates") {
  const SupportOracleCm zero(2, {});
  CHECK(oracle_member(zero, {0.0, 0.0, 0.0, 0.0}));
  CHECK_FALSE(oracle_member(zero, {0.1, 0.0, 0.0, 0.0}));
  const SupportOracleCm with_ball(2, {{1.0, 0.0, BallCm{2, 1.0}}});
  CHECK_THROWS_AS((void)oracle_member(with_ball, {0.0, 0.0, 0.0, 0.0}),
                  InvalidInput);
  CHECK_THROWS_AS((void)mc_volume_oracle(zero, 0, 7), InvalidInput);
}

TEST_CASE("cube image volume is exact and deterministic") {
  const Polygon2 c = unit_square();
  const PolytopeCm k = cube_cm(2, 0.25);
  // D is the cube of side 4 * 0.5 = 2: its support box equals the body, so
  // every sample hits and the estimate is exact.
  const VolumeReport rep = volume_check_m2(c, k, 20000, 5, std::pow(0.5, 4));
  CHECK(rep.pass());
  CHECK(rep.estimate == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(rep.three_sigma == 0.0);
  CHECK(rep.lower == doctest::Approx(16.0).epsilon(1e-12));

  const VolumeReport again = volume_check_m2(c, k, 20000, 5, std::pow(0.5, 4));
  CHECK(again.estimate == rep.estimate);  // fixed seed, fixed result
}

TEST_CASE("product image volume matches the exact product value") {
  const Polygon2 c = regular_polygon(8, 0.35, kPi / 8.0);
  const Polygon2 p = scalene();
  const Polygon2 q = unit_square();
  const PolytopeCm k = product_of(p, q);
  const SupportOracleCm d = dc_polytope(c, k);

  // The image factors, so its volume is the product of the factor areas.
  const AtomicMeasure1 mu = area_measure(c);
  Polygon2 dp({Vec2{0.0, 0.0}});
  Polygon2 dq({Vec2{0.0, 0.0}});
  for (const auto& atom : mu.atoms()) {
    const std::complex<double> rho = std::polar(atom.weight, atom.theta);
    dp = minkowski_sum(dp, rotate_scale(p, rho));
    dq = minkowski_sum(dq, rotate_scale(q, rho));
  }
  const double exact = dp.area() * dq.area();
  const McVolume mc = mc_volume_oracle(d, 60000, 21);
  CHECK(std::abs(mc.estimate - exact) <= 3.5 * mc.sigma + 1e-12);

  const VolumeReport rep = volume_check_m2(c, k, 60000, 21, p.area() * q.area());
  CHECK(rep.pass());
}

TEST_CASE("cross polytope goes through the feasibility membership") {
  const Polygon2 c = unit_square();
  const PolytopeCm k = cross_polytope_cm(2, 0.5);
  const double exact_k = 2.0 * std::pow(0.5, 4) / 3.0;
  const VolumeReport rep = volume_check_m2(c, k, 8000, 9, exact_k);
  CHECK(rep.pass());
  CHECK(rep.estimate > 0.0);
  CHECK(rep.upper >= rep.estimate - rep.three_sigma);
}

TEST_CASE("ball approximation keeps both volume bounds tight") {
  // Segment C of total length 1: the image of a symmetric body is itself.
  const Polygon2 seg({{-0.25, 0.0}, {0.25, 0.0}});
  const PolytopeCm ball = inscribed_ball_c2(8, 8, 2);
  const VolumeReport rep = volume_check_m2(seg, ball, 6000, 3);
  CHECK(rep.pass());
  constexpr double kKappa4 = kPi * kPi / 2.0;
  CHECK(rep.upper == doctest::Approx(kKappa4).epsilon(1e-9));
  // The estimate sits between the polytope volume and the ball volume.
  CHECK(rep.estimate > 0.75 * kKappa4);
  CHECK(rep.estimate < 1.02 * kKappa4);
}

TEST_CASE("segment K collapses the volume estimate to zero") {
  const Polygon2 c = unit_square();
  const PolytopeCm seg = segment_cm(2, {-0.4, -0.1, 0.2, -0.3}, {0.4, 0.1, -0.2, 0.3});
  const VolumeReport rep = volume_check_m2(c, seg, 1000, 4, 0.0);
  CHECK(rep.pass());
  CHECK(rep.estimate == 0.0);  // the image is a 2-plane, no sample can hit
  CHECK(rep.box_volume > 0.0);
  CHECK(affine_dim(dc_polytope(c, seg)) == 2);

  // A disc inside a coordinate line is flat along two axes, so even the
  // sampling box collapses and no sampling happens at all.
  const VolumeReport flat =
      volume_check_m2(c, disc_in_line_cm(2, 0, 0.8, 48), 1000, 4, 0.0);
  CHECK(flat.pass());
  CHECK(flat.estimate == 0.0);
  CHECK(flat.box_volume == 0.0);
}

// ---------------------------------------------------------------------------
// Containment
// ---------------------------------------------------------------------------

TEST_CASE("containment succeeds at the guaranteed dilate and certifies it") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon2 c = random_polygon(rng, 4, 0.8);
    const Polygon2 k = random_polygon(rng, 5, 1.0);
    const Polygon2 d = dc_planar(c, k);
    const double lambda = containment_lambda(c, k);
    const auto t = containment_after_translation(lambda, k, d);
    REQUIRE(t.has_value());
    // Verify the certificate against every facet of D.
    const AtomicMeasure1 mu = area_measure(d);
    for (const auto& atom : mu.atoms()) {
      const Vec2 u = unit_vector(atom.theta);
      CHECK(lambda * k.support(u) + t->dot(u) <= d.support(u) + 1e-7);
    }
    // A dilate wider than the image cannot fit.
    const double big = 10.0 * scalars(d).diameter / scalars(k).min_width;
    CHECK_FALSE(containment_after_translation(big, k, d).has_value());
  }
}

TEST_CASE("containment lambda for a disc-like K is near one before l(C)") {
  const Polygon2 k = regular_polygon(64, 0.5);
  const Polygon2 c = unit_square();
  const double lambda = containment_lambda(c, k);
  CHECK(lambda == doctest::Approx(4.0 * std::cos(kPi / 64.0)).epsilon(1e-9));
  const Polygon2 d = dc_planar(c, k);
  CHECK(containment_after_translation(lambda, k, d).has_value());
}

TEST_CASE("containment gates") {
  const Polygon2 seg({{0.0, 0.0}, {1.0, 0.0}});
  CHECK_THROWS_AS((void)containment_lambda(unit_square(), seg), InvalidInput);
  CHECK_THROWS_AS(
      (void)containment_after_translation(-1.0, unit_square(), unit_square()),
      InvalidInput);
}

// ---------------------------------------------------------------------------
// Fixed points and iteration
// ---------------------------------------------------------------------------

TEST_CASE("invariant bodies are fixed points, generic bodies are not") {
  const Polygon2 c4 = four_group();
  CHECK(fixed_point_defect(c4, unit_square()) <= 1e-9);
  CHECK(fixed_point_defect(c4, scalene()) > 0.01);
  CHECK(fixed_point_defect(unit_square(), regular_polygon(64, 0.7)) <= 1e-9);
}

TEST_CASE("sampled fixed point detects the disc including off-center ones") {
  const Polygon2 c = unit_square();
  CHECK(fixed_point_defect(c, sample_disc(256, 0.6)) <= 1e-9);
  // The operator kills translations, so an off-center disc still matches
  // after both sides are re-centered.
  CHECK(fixed_point_defect(c, sample_disc(256, 0.6, {0.2, -0.1})) <= 1e-9);
  const SampledSupport2 reuleaux = reuleaux_triangle(256);
  CHECK(fixed_point_defect(c, reuleaux) > 0.01);
}

TEST_CASE("C^2 fixed points: balls always, invariant discs in a line") {
  const Polygon2 octagon = regular_polygon(8, 0.4, kPi / 8.0);
  CHECK(fixed_point_defect(octagon, BallCm{2, 1.0}) <= 1e-9);
  CHECK(fixed_point_defect(octagon, disc_in_line_cm(2, 0, 0.8, 48)) <= 1e-9);
  CHECK(fixed_point_defect(octagon, cube_cm(2, 0.5)) > 0.01);
}

TEST_CASE("iterates collapse onto scaled first images under the root condition") {
  // Segment on the imaginary axis: its normals are {0, pi}, the classical
  // difference-body case with multipliers in {0, l(C)}.
  const Polygon2 seg({{0.0, -0.5}, {0.0, 0.5}});
  const Polygon2 k({{0.0, 0.0}, {0.8, 0.0}, {0.5, 0.45}});

  const IterateReport seg2 = iterate_check(seg, k, 2);
  CHECK(seg2.condition);
  CHECK(seg2.defect <= 1e-12);
  CHECK(seg2.scale == doctest::Approx(2.0));

  const IterateReport c43 = iterate_check(four_group(), k, 3);
  CHECK(c43.condition);
  CHECK(c43.defect <= 1e-8);

  const IterateReport bad = iterate_check(scalene(), k, 2);
  CHECK_FALSE(bad.condition);
  CHECK(bad.defect > 1e-3);

  // A real-axis segment rotates by i instead: D^2 = 2 i D, which the
  // root-of-unity condition correctly rejects for N = 2 but accepts at the
  // full period N = 5 (i^4 = 1).
  const Polygon2 seg_x({{-0.5, 0.0}, {0.5, 0.0}});
  const IterateReport twisted = iterate_check(seg_x, k, 2);
  CHECK_FALSE(twisted.condition);
  CHECK(twisted.defect > 1e-3);
  const IterateReport period = iterate_check(seg_x, k, 5);
  CHECK(period.condition);
  CHECK(period.defect <= 1e-8);

  CHECK_THROWS_AS((void)iterate_check(seg, k, 0), InvalidInput);
  CHECK_THROWS_AS((void)iterate_check(seg, k, 6), InvalidInput);
}

// ---------------------------------------------------------------------------
// Classification, m = 1
// ---------------------------------------------------------------------------

TEST_CASE("classification flags on structured planar bodies") {
  std::mt19937_64 rng(19);
  const Polygon2 generic_c = random_polygon(rng, 5, 1.0);

  {
    const ClassifyReport rep = classify(generic_c, regular_polygon(64, 0.5), 16, 1e-6);
    CHECK(rep.agree());
    CHECK(rep.observed.ball);
    CHECK(rep.observed.s1_invariant);
    CHECK(rep.observed.constant_width);
    CHECK(rep.observed.symmetric);
    CHECK_FALSE(rep.observed.universal);
  }
  {
    const ClassifyReport rep = classify(generic_c, random_zonogon(rng, 4, 1.0), 16, 1e-6);
    CHECK(rep.agree_geometric());
    CHECK(rep.observed.symmetric);
    CHECK_FALSE(rep.observed.ball);
  }
  {
    // A disc-like C flattens every tested coefficient of the image.
    const ClassifyReport rep = classify(regular_polygon(64, 0.5), scalene(), 16, 1e-6);
    CHECK(rep.agree());
    CHECK(rep.observed.ball);
  }
  CHECK_THROWS_AS((void)classify(generic_c, scalene(), 1, 1e-6), InvalidInput);
  CHECK_THROWS_AS((void)classify(generic_c, scalene(), 33, 1e-6), InvalidInput);
  CHECK_THROWS_AS((void)classify(generic_c, scalene(), 16, 0.0), InvalidInput);
}

TEST_CASE("sampled classification agrees with the polygon route") {
  const Polygon2 c = unit_square();
  const Polygon2 k = scalene();
  const ClassifyReport poly_rep = classify(c, k, 12, 1e-6);
  const ClassifyReport samp_rep = classify(c, sample_polygon(k, 512), 12, 1e-6);
  CHECK(poly_rep.agree());
  CHECK(samp_rep.agree_geometric());
  CHECK(samp_rep.observed.ball == poly_rep.observed.ball);
  CHECK(samp_rep.observed.symmetric == poly_rep.observed.symmetric);
}

// ---------------------------------------------------------------------------
// Classification, m = 2
// ---------------------------------------------------------------------------

TEST_CASE("C^2 classification on structured bodies") {
  ClassifyC2Options opts;
  const Polygon2 square = unit_square();

  {
    const ClassifyReport rep = classify_c2(square, BallCm{2, 0.8}, opts);
    CHECK(rep.agree());
    CHECK(rep.observed.ball);
    CHECK(rep.observed.s1_invariant);
  }
  {
    const ClassifyReport rep =
        classify_c2(square, disc_in_line_cm(2, 0, 0.8, 48), opts);
    CHECK(rep.agree());
    CHECK(rep.observed.s1_invariant);
    CHECK_FALSE(rep.observed.ball);
  }
  {
    std::mt19937_64 rng(23);
    const PolytopeCm sym = product_of(random_zonogon(rng, 2, 0.6),
                                      random_zonogon(rng, 2, 0.7));
    const ClassifyReport rep = classify_c2(square, sym, opts);
    CHECK(rep.agree());
    CHECK(rep.observed.symmetric);
    CHECK_FALSE(rep.observed.ball);
  }
  {
    std::mt19937_64 rng(29);
    const PolytopeCm generic =
        product_of(random_polygon(rng, 4, 0.7), random_polygon(rng, 3, 0.6));
    const Polygon2 tri({{0.0, 0.0}, {0.8, 0.0}, {0.0, 0.8}});
    const ClassifyReport rep = classify_c2(tri, generic, opts);
    CHECK(rep.agree_geometric());
    CHECK_FALSE(rep.observed.symmetric);
    CHECK_FALSE(rep.observed.s1_invariant);
  }
  CHECK_THROWS_AS((void)classify_c2(square, BallCm{2, 0.0}, opts), InvalidInput);
  ClassifyC2Options bad = opts;
  bad.degree_cut = 1;
  CHECK_THROWS_AS((void)classify_c2(square, BallCm{2, 1.0}, bad), InvalidInput);
}

// ---------------------------------------------------------------------------
// Non-surjectivity and dimensions
// ---------------------------------------------------------------------------

TEST_CASE("no catalogue image approximates an indecomposable triangle") {
  const NonsurjectivityReport rep = nonsurjectivity_demo();
  CHECK(rep.pass());
  CHECK(rep.best_distance > rep.threshold);
  CHECK(rep.noninjectivity_defect <= 1e-10);
  CHECK(rep.rho_commute_defect <= 1e-10);
  CHECK_FALSE(rep.best_label.empty());
}

TEST_CASE("dimension table covers all admissible configurations") {
  const std::vector<DimensionCase> table = dimension_table();
  REQUIRE(table.size() == 9);
  std::set<std::pair<int, int>> configs;
  for (const DimensionCase& dc : table) {
    CAPTURE(dc.label);
    CHECK(dc.observed == dc.expected);
    CHECK(dc.expected == 2 * (dc.l - dc.a));
    configs.insert({dc.l, dc.a});
  }
  // All six admissible (line count, invariant line count) pairs appear.
  CHECK(configs.size() == 6);
}

// ---------------------------------------------------------------------------
// Corpora
// ---------------------------------------------------------------------------

TEST_CASE("planar corpus is deterministic and structurally labelled") {
  const std::vector<PlanarPair> a = planar_corpus(7, 40);
  const std::vector<PlanarPair> b = planar_corpus(7, 40);
  REQUIRE(a.size() == 40);
  int segments = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK(approx_equal(a[i].c, b[i].c, 0.0));
    CHECK(approx_equal(a[i].k, b[i].k, 0.0));
    CHECK(a[i].c_is_segment == a[i].c.is_segment());
    CHECK(a[i].k.is_proper());
    segments += a[i].c_is_segment ? 1 : 0;
  }
  CHECK(segments >= 5);
  CHECK_THROWS_AS((void)planar_corpus(7, 5), InvalidInput);
}

TEST_CASE("planar corpus classification is robust across a tolerance band") {
  // The corpus promises that zero coefficients are structural: flags must
  // not change when the zero threshold moves by a factor of 30 either way.
  const std::vector<PlanarPair> corpus = planar_corpus(7, 40);
  for (const PlanarPair& pair : corpus) {
    const ClassifyReport mid = classify(pair.c, pair.k, 16, 1e-6);
    const ClassifyReport low = classify(pair.c, pair.k, 16, 1e-6 / 30.0);
    const ClassifyReport high = classify(pair.c, pair.k, 16, 30.0 * 1e-6);
    CAPTURE(pair.label);
    CHECK(mid.agree());
    CHECK(low.predicted == mid.predicted);
    CHECK(high.predicted == mid.predicted);
    CHECK(low.observed == mid.observed);
    CHECK(high.observed == mid.observed);
  }
}

TEST_CASE("C^2 corpus is deterministic with grid-compatible factors") {
  const std::vector<C2Pair> a = c2_corpus(7, 12);
  const std::vector<C2Pair> b = c2_corpus(7, 12);
  REQUIRE(a.size() == 12);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    // Every atom of C sits on the 48-point angular grid used by the kernel
    // quadrature, so rotated copies reuse the node set exactly.
    const AtomicMeasure1 mu = area_measure(a[i].c);
    for (const auto& atom : mu.atoms()) {
      const double steps = atom.theta / (kTau / 48.0);
      CHECK(std::abs(steps - std::round(steps)) < 1e-9);
    }
    if (const PolytopeCm* k = std::get_if<PolytopeCm>(&a[i].k)) {
      CHECK(k->vertices().size() >= 1);
    }
  }
  CHECK_THROWS_AS((void)c2_corpus(7, 3), InvalidInput);
}

TEST_CASE("C^2 corpus classification is robust across a tolerance band") {
  const std::vector<C2Pair> corpus = c2_corpus(7, 12);
  for (const C2Pair& pair : corpus) {
    ClassifyC2Options mid_opts;
    ClassifyC2Options low_opts;
    low_opts.eps = mid_opts.eps / 30.0;
    ClassifyC2Options high_opts;
    high_opts.eps = mid_opts.eps * 30.0;
    const auto run = [&](const ClassifyC2Options& o) {
      return std::visit([&](const auto& k) { return classify_c2(pair.c, k, o); },
                        pair.k);
    };
    const ClassifyReport mid = run(mid_opts);
    const ClassifyReport low = run(low_opts);
    const ClassifyReport high = run(high_opts);
    CAPTURE(pair.label);
    CHECK(mid.agree());
    CHECK(low.predicted == mid.predicted);
    CHECK(high.predicted == mid.predicted);
    CHECK(low.observed == mid.observed);
    CHECK(high.observed == mid.observed);
  }
}

// ---------------------------------------------------------------------------
// Suite driver
// ---------------------------------------------------------------------------

TEST_CASE("suite driver passes on a reduced corpus") {
  SuiteOptions opts;
  opts.planar_pairs = 16;
  opts.c2_pairs = 10;
  opts.mc_samples = 4000;
  const SuiteResult res = run_suite(opts);
  REQUIRE_FALSE(res.lines.empty());
  for (const SuiteLine& line : res.lines) {
    CAPTURE(line.name);
    CAPTURE(line.detail);
    CHECK(line.pass);
  }
  CHECK(res.pass());

  std::set<std::string> names;
  for (const SuiteLine& line : res.lines) names.insert(line.name);
  CHECK(names.count("planar/quermass") == 1);
  CHECK(names.count("planar/nonsurjectivity") == 1);
  CHECK(names.count("complex2/dimension_table") == 1);
  CHECK(names.count("complex2/volume") == 1);
  CHECK(names.count("harmonic/multiplier") == 1);
}

TEST_CASE("suite sections can run separately") {
  SuiteOptions opts;
  opts.run_planar = false;
  opts.run_complex2 = false;
  const SuiteResult res = run_suite(opts);
  for (const SuiteLine& line : res.lines)
    CHECK(line.name.substr(0, 9) == "harmonic/");
  CHECK(res.pass());
}
