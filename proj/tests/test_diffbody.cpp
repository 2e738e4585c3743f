#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "cdb/diffbody.hpp"
#include "cdb/errors.hpp"

using namespace cdb;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

Polygon2 unit_segment_c() { return Polygon2({{0.0, -0.5}, {0.0, 0.5}}); }

Polygon2 unit_square_centered() {
  return Polygon2({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
}

Polygon2 random_polygon(std::mt19937_64& rng, int npts = 8, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Vec2> pts;
  for (int i = 0; i < npts; ++i) pts.push_back({u(rng), u(rng)});
  return Polygon2(pts);
}

}  // namespace

TEST_CASE("the vertical unit segment produces the classical difference body") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 20; ++trial) {
    const Polygon2 k = random_polygon(rng, 7);
    const Polygon2 d = dc_planar(unit_segment_c(), k);
    const Polygon2 classical = minkowski_sum(k, rotate_scale(k, {-1.0, 0.0}));
    REQUIRE(d.size() == classical.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(std::abs(d.vertices()[i].x - classical.vertices()[i].x) <= 1e-12);
      CHECK(std::abs(d.vertices()[i].y - classical.vertices()[i].y) <= 1e-12);
    }
    // origin symmetry of the difference body
    for (double t : {0.0, 0.7, 1.9, 3.3, 5.1})
      CHECK(d.support(t) == doctest::Approx(d.support(t + kPi)).epsilon(1e-12));
  }
}

TEST_CASE("a single-point multiplier collapses everything to the origin") {
  const Polygon2 d = dc_planar(Polygon2({{2.0, -1.0}}), unit_square_centered());
  REQUIRE(d.is_point());
  CHECK(d.vertices()[0].norm() == doctest::Approx(0.0));

  const SupportOracleCm dc = dc_polytope(Polygon2({{2.0, -1.0}}), cube_cm(2, 1.0));
  CHECK(dc.terms().empty());
  CHECK(support_cm(dc, R4{1, 0, 0, 0}) == doctest::Approx(0.0));
  CHECK(affine_dim(dc) == 0);
}

TEST_CASE("surface area measures convolve") {
  std::mt19937_64 rng(223);
  for (int trial = 0; trial < 25; ++trial) {
    const Polygon2 c = random_polygon(rng, 6);
    const Polygon2 k = random_polygon(rng, 7);
    if (!c.is_proper() || !k.is_proper()) continue;
    const Polygon2 d = dc_planar(c, k);
    const AtomicMeasure1 direct = area_measure(d);
    const AtomicMeasure1 conv = convolve_measures(area_measure(c), area_measure(k));
    REQUIRE(direct.size() == conv.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
      CHECK(std::abs(direct.atoms()[i].theta - conv.atoms()[i].theta) <= 1e-8);
      CHECK(std::abs(direct.atoms()[i].weight - conv.atoms()[i].weight) <= 1e-8);
    }
    // perimeter is multiplicative and the atom count is at most the product
    CHECK(d.perimeter() ==
          doctest::Approx(c.perimeter() * k.perimeter()).epsilon(1e-9));
    CHECK(direct.size() <= area_measure(c).size() * area_measure(k).size());
  }
}

TEST_CASE("measure convolution is closed and mass-multiplicative") {
  std::mt19937_64 rng(227);
  for (int trial = 0; trial < 20; ++trial) {
    const AtomicMeasure1 a = area_measure(random_polygon(rng, 6));
    const AtomicMeasure1 b = area_measure(random_polygon(rng, 5));
    const AtomicMeasure1 ab = convolve_measures(a, b);
    CHECK(ab.total_mass() ==
          doctest::Approx(a.total_mass() * b.total_mass()).epsilon(1e-12));
    CHECK(ab.closure_residual() <= 1e-9);
  }
}

TEST_CASE("grid construction matches the exact polygon construction") {
  const int n = 256;
  const Polygon2 c = unit_square_centered();  // normals on every grid
  std::mt19937_64 rng(229);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon2 k = random_polygon(rng, 8);
    const SampledSupport2 ks = sample_polygon(k, n);
    const SampledSupport2 d = dc_planar_sampled(c, ks);
    const Polygon2 exact = dc_planar(c, k);
    for (int i = 0; i < n; ++i)
      CHECK(std::abs(d.at(i) - exact.support(d.grid_angle(i))) <= 1e-12);
  }
}

TEST_CASE("sampled multiplier body reproduces its discrete measure route") {
  // a square sampled on its own normal grid has the exact discrete measure,
  // so the sampled-sampled route equals the polygon route
  const int n = 128;
  const Polygon2 c = unit_square_centered();
  const SampledSupport2 cs = sample_polygon(c, n);
  std::mt19937_64 rng(233);
  const Polygon2 k = random_polygon(rng, 7);
  const SampledSupport2 ks = sample_polygon(k, n);
  const SampledSupport2 via_sampled = dc_planar_sampled(cs, ks);
  const SampledSupport2 via_polygon = dc_planar_sampled(c, ks);
  for (int i = 0; i < n; ++i)
    CHECK(via_sampled.at(i) == doctest::Approx(via_polygon.at(i)).epsilon(1e-10));
}

TEST_CASE("grid construction rejects off-grid measure atoms") {
  const Polygon2 skew({{0.0, 0.0}, {1.0, 0.0}, {0.3, 0.7}});
  const SampledSupport2 ks = sample_disc(256, 1.0);
  CHECK_THROWS_AS(dc_planar_sampled(skew, ks), ResolutionError);
}

TEST_CASE("grid construction rejects mismatched grids") {
  const SampledSupport2 a = sample_disc(128, 1.0);
  const SampledSupport2 b = sample_disc(256, 1.0);
  CHECK_THROWS_AS(dc_planar_sampled(a, b), ResolutionError);
}

TEST_CASE("construction is translation invariant in both arguments") {
  std::mt19937_64 rng(239);
  for (int trial = 0; trial < 15; ++trial) {
    const Polygon2 c = random_polygon(rng, 6);
    const Polygon2 k = random_polygon(rng, 7);
    if (!c.is_proper() || !k.is_proper()) continue;
    const Polygon2 base = dc_planar(c, k);
    const Polygon2 kt = dc_planar(c, k.translated({0.9, -2.4}));
    const Polygon2 ct = dc_planar(c.translated({-1.1, 0.6}), k);
    CHECK(hausdorff_distance(base, kt) <= 1e-9);
    CHECK(hausdorff_distance(base, ct) <= 1e-9);
  }
}

TEST_CASE("construction is linear under scaling and rotation-equivariant") {
  std::mt19937_64 rng(241);
  const Polygon2 c = random_polygon(rng, 6);
  const Polygon2 k = random_polygon(rng, 7);
  const Polygon2 base = dc_planar(c, k);
  // scaling either argument scales the result
  CHECK(hausdorff_distance(dc_planar(c, rotate_scale(k, {1.7, 0.0})),
                           rotate_scale(base, {1.7, 0.0})) <= 1e-9);
  CHECK(hausdorff_distance(dc_planar(rotate_scale(c, {0.6, 0.0}), k),
                           rotate_scale(base, {0.6, 0.0})) <= 1e-9);
  // turning either argument turns the result
  const auto phase = std::polar(1.0, 0.8);
  CHECK(hausdorff_distance(dc_planar(c, rotate_scale(k, phase)),
                           rotate_scale(base, phase)) <= 1e-9);
  CHECK(hausdorff_distance(dc_planar(rotate_scale(c, phase), k),
                           rotate_scale(base, phase)) <= 1e-9);
}

TEST_CASE("construction is Minkowski-additive and monotone in the body") {
  std::mt19937_64 rng(251);
  for (int trial = 0; trial < 10; ++trial) {
    const Polygon2 c = random_polygon(rng, 5);
    const Polygon2 k1 = random_polygon(rng, 6);
    const Polygon2 k2 = random_polygon(rng, 6);
    if (!c.is_proper()) continue;
    const Polygon2 sum = dc_planar(c, minkowski_sum(k1, k2));
    const Polygon2 split = minkowski_sum(dc_planar(c, k1), dc_planar(c, k2));
    CHECK(hausdorff_distance(sum, split) <= 1e-9);

    // k1 is contained in the hull of k1 and k2; supports must dominate
    std::vector<Vec2> merged = k1.vertices();
    for (const Vec2& v : k2.vertices()) merged.push_back(v);
    const Polygon2 big(merged);
    const Polygon2 dsmall = dc_planar(c, k1);
    const Polygon2 dbig = dc_planar(c, big);
    for (int t = 0; t < 64; ++t) {
      const double th = kTwoPi * t / 64;
      CHECK(dsmall.support(th) <= dbig.support(th) + 1e-10);
    }
  }
}

TEST_CASE("both orders of the construction agree up to translation") {
  std::mt19937_64 rng(257);
  for (int trial = 0; trial < 15; ++trial) {
    const Polygon2 c = random_polygon(rng, 6);
    const Polygon2 k = random_polygon(rng, 7);
    if (!c.is_proper() || !k.is_proper()) continue;
    const auto [dck, dkc] = commute_m1(c, k);
    CHECK(hausdorff_distance(steiner_centered(dck), steiner_centered(dkc)) <= 1e-9);
  }
}

TEST_CASE("steiner centering zeroes the first coefficient and is idempotent") {
  std::mt19937_64 rng(263);
  const Polygon2 p = random_polygon(rng, 8).translated({3.0, -1.5});
  const Polygon2 centered = steiner_centered(p);
  const Spectrum s = fourier_support(centered, 2, Spectrum::Convention::kRaw);
  CHECK(std::abs(s.at(1)) <= 1e-12);
  CHECK(hausdorff_distance(steiner_centered(centered), centered) <= 1e-12);
}

TEST_CASE("a disc multiplier produces a disc of perimeter-scaled radius") {
  std::mt19937_64 rng(269);
  for (int m : {1, 2}) {
    const Polygon2 c = random_polygon(rng, 6);
    if (!c.is_proper()) continue;
    const SupportOracleCm d = dc_polytope(c, BallCm{m, 0.75});
    CHECK(d.total_weight() == doctest::Approx(c.perimeter()).epsilon(1e-12));
    const auto net = direction_net(m, 40, 5u);
    for (const R4& u : net)
      CHECK(support_cm(d, u) ==
            doctest::Approx(0.75 * c.perimeter()).epsilon(1e-12));
    CHECK(s1_invariance_defect(d, 16) <= 1e-12);
  }
}

TEST_CASE("oracle construction matches a manual term-by-term sum") {
  std::mt19937_64 rng(271);
  const Polygon2 c = random_polygon(rng, 6);
  const PolytopeCm k = cube_cm(2, 0.9);
  const SupportOracleCm d = dc_polytope(c, k);
  const AtomicMeasure1 mu = area_measure(c);
  REQUIRE(d.terms().size() == mu.size());
  const auto net = direction_net(2, 60, 9u);
  for (const R4& u : net) {
    double manual = 0.0;
    for (const auto& a : mu.atoms())
      manual += a.weight *
                support_cm(k, complex_scale_point(u, 2, std::polar(1.0, -a.theta)));
    CHECK(support_cm(d, u) == doctest::Approx(manual).epsilon(1e-12));
  }
}

TEST_CASE("segment bodies reduce to planar difference bodies in the line") {
  std::mt19937_64 rng(277);
  for (int m : {1, 2}) {
    for (int trial = 0; trial < 8; ++trial) {
      const Polygon2 c = random_polygon(rng, 6);
      if (!c.is_proper()) continue;
      R4 u{};
      std::uniform_real_distribution<double> ur(-1.0, 1.0);
      double n2 = 0.0;
      for (int dd = 0; dd < 2 * m; ++dd) {
        u[static_cast<std::size_t>(dd)] = ur(rng);
        n2 += u[static_cast<std::size_t>(dd)] * u[static_cast<std::size_t>(dd)];
      }
      if (n2 < 1e-4) continue;
      const double a = -0.4, b = 1.1;
      const SupportOracleCm d = dc_segment(c, a, b, u, m);
      const PolytopeCm icu = ic_times_u(c, u, m);
      const auto net = direction_net(m, 50, 11u);
      for (const R4& w : net) {
        R4 neg{};
        for (int dd = 0; dd < 2 * m; ++dd) neg[static_cast<std::size_t>(dd)] = -w[static_cast<std::size_t>(dd)];
        const double width = support_cm(icu, w) + support_cm(icu, neg);
        CHECK(support_cm(d, w) == doctest::Approx((b - a) * width).epsilon(1e-9));
      }
    }
  }
  CHECK_THROWS_AS(dc_segment(unit_square_centered(), 1.0, 1.0, R4{1, 0, 0, 0}, 1),
                  InvalidInput);
}

TEST_CASE("dimension drops follow the complexity of the body") {
  const Polygon2 c = unit_square_centered();
  // line segment: real dimension 1, no complex line inside
  CHECK(affine_dim(dc_polytope(c, segment_cm(2, R4{-1, 0, 0, 0}, R4{1, 0, 0, 0}))) == 2);
  // totally real square: dimension 2, still no complex line
  const PolytopeCm real_square(
      2, {R4{-1, 0, -1, 0}, R4{1, 0, -1, 0}, R4{1, 0, 1, 0}, R4{-1, 0, 1, 0}}, false);
  CHECK(affine_dim(dc_polytope(c, real_square)) == 4);
  // a disc inside a complex line: dimension 2 containing a complex line
  CHECK(affine_dim(dc_polytope(c, disc_in_line_cm(2, 0, 1.0, 64))) == 2);
  // three real dimensions, one complex line inside
  const PolytopeCm prism(2,
                         {R4{-1, -1, -1, 0}, R4{1, -1, -1, 0}, R4{1, 1, -1, 0},
                          R4{-1, 1, -1, 0}, R4{-1, -1, 1, 0}, R4{1, -1, 1, 0},
                          R4{1, 1, 1, 0}, R4{-1, 1, 1, 0}},
                         false);
  CHECK(affine_dim(prism) == 3);
  CHECK(affine_dim(dc_polytope(c, prism)) == 4);
  // the full cube: dimension 4 with two complex lines
  CHECK(affine_dim(dc_polytope(c, cube_cm(2, 1.0))) == 4);
}

TEST_CASE("empty inputs are rejected") {
  CHECK_THROWS_AS(dc_planar(Polygon2(), unit_square_centered()), InvalidInput);
  CHECK_THROWS_AS(dc_planar(unit_square_centered(), Polygon2()), InvalidInput);
}
