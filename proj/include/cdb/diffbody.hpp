#pragma once

#include <utility>

#include "cdb/complexspace.hpp"
#include "cdb/planar.hpp"

namespace cdb {

// D_C K = sum_i s_i alpha_i K over the atoms (theta_i, s_i) of the surface
// area measure of C, kept in exact oracle form. A single-point C yields the
// zero body (empty term list, support identically 0).
SupportOracleCm dc_polytope(const Polygon2& c, const PolytopeCm& k);
SupportOracleCm dc_polytope(const Polygon2& c, const BallCm& k);

// Exact planar construction: iterated Minkowski sums of rotated scaled
// copies of K, one per atom of S(C, .).
Polygon2 dc_planar(const Polygon2& c, const Polygon2& k);

// Grid construction: h_D[k] = sum_i s_i h_K[k - shift_i]. C's atoms must
// lie on the grid (within 1e-9 of a grid angle); a sampled C contributes
// its discrete area measure, making the integral a circular convolution.
SampledSupport2 dc_planar_sampled(const Polygon2& c, const SampledSupport2& k);
SampledSupport2 dc_planar_sampled(const SampledSupport2& c, const SampledSupport2& k);

// Convolution of measures on the circle: atoms (t_i + s_j, w_i * v_j),
// merged at angular tolerance 1e-9. Realizes the surface area measure of
// D_C K from those of C and K in the plane.
AtomicMeasure1 convolve_measures(const AtomicMeasure1& sc, const AtomicMeasure1& sk);

// D_C of the segment [a u, b u]; equal, as a body, to (b - a) times the
// classical difference body of the planar set (iC) u inside the complex
// line spanned by u.
SupportOracleCm dc_segment(const Polygon2& c, double a, double b, const R4& u, int m);

// The polytope {(i c) u : c in C} used by the segment closed form.
PolytopeCm ic_times_u(const Polygon2& c, const R4& u, int m);

// Both orders of the planar construction; they agree up to translation.
std::pair<Polygon2, Polygon2> commute_m1(const Polygon2& c, const Polygon2& k);

// Translate so the Steiner point sits at the origin.
Polygon2 steiner_centered(const Polygon2& p);

}  // namespace cdb
