#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "cdb/complexspace.hpp"
#include "cdb/planar.hpp"

namespace cdb {

// Orthogonal polynomial Q_degree(a, b, t) on [0, 1] under the weight
// t^a (1 - t)^b dt, normalized so Q(1) = 1. Built by Gram-Schmidt over the
// monomials with exact rational moments, then evaluated in floating point;
// the degree is capped at 8 to keep the monomial-basis coefficients well
// conditioned.
class OrthoPolyQ {
 public:
  OrthoPolyQ(int a, int b, int degree);

  int a() const { return a_; }
  int b() const { return b_; }
  int degree() const { return degree_; }
  const std::vector<double>& coefficients() const { return coef_; }
  double operator()(double t) const;

 private:
  int a_;
  int b_;
  int degree_;
  std::vector<double> coef_;  // monomial basis, coef_[p] multiplies t^p
};

// Disk polynomial
//   P_{k,l}(z) = z^{k-l} Q_{min(k,l)}(|k-l|, b, |z|^2)        for k >= l,
//   P_{k,l}(z) = conj(z)^{l-k} Q_{min(k,l)}(|k-l|, b, |z|^2)  otherwise,
// with b = m - 2 (so b = 0 on S^3). Satisfies P_{k,l}(1) = 1 and
// P_{k,l}(conj z) = conj(P_{k,l}(z)).
class DiskPolynomial {
 public:
  DiskPolynomial(int k, int l, int b = 0);

  int k() const { return k_; }
  int l() const { return l_; }
  std::complex<double> operator()(std::complex<double> z) const;

 private:
  int k_;
  int l_;
  OrthoPolyQ q_;
};

std::complex<double> disk_poly_eval(int k, int l, std::complex<double> z, int b = 0);

// lambda_{k,l} = sum_i s_i e^{-i (k-l) theta_i} over the atoms of S(C, .).
// The value depends only on k - l, which the storage makes structural.
class MultiplierTable {
 public:
  MultiplierTable(const Polygon2& c, int k_max);

  int k_max() const { return k_max_; }
  std::complex<double> at(int k, int l) const;
  std::complex<double> at_difference(int d) const;

 private:
  int k_max_;
  std::vector<std::complex<double>> by_diff_;  // index d + k_max_
};

// Max over |j| <= J of |c_j(h_D) - lambda_j c_j(h_K)| in the
// multiplier-normalized convention, where D is the planar construction
// D_C K. The polygon overload uses exact arc-integral spectra; the sampled
// overload evaluates the rotation sum through band-limited interpolation
// and takes a plain DFT, so both sides come from independent routes.
double planar_multiplier_check(const Polygon2& c, const Polygon2& k, int j_max);
double planar_multiplier_check(const Polygon2& c, const SampledSupport2& k, int j_max);

// Max over a deterministic set of unit u in S^3 of
//   |sum_i s_i Y(e^{-i theta_i} u) - lambda_{k,l} Y(u)|,
// where Y(v) = P_{k,l}((v, e)) for a fixed unit pole e. The moving point
// sits in the first (linear) slot of the Hermitian pairing: that is the
// orientation under which Y(alpha v) = alpha^k conj(alpha)^l Y(v) for
// unimodular alpha, making Y an eigenfunction.
double eigenfunction_check(const Polygon2& c, int k, int l, int trials);

// Relative finite-difference Laplacian residual of the degree-(k+l)
// homogeneous extension p(x) = |x|^{k+l} P_{k,l}((x/|x|, e)) at 20
// deterministic points in the annulus 0.5 <= |x| <= 1.5.
double harmonicity_check(int k, int l, double step);

// Product quadrature on S^3 = {(sqrt(t) e^{i theta}, sqrt(1-t) e^{i xi})}:
// Gauss-Legendre nodes in t on [0, 1], uniform grids in theta and xi.
// Weights sum to the sphere measure 2 pi^2.
struct S3Quadrature {
  std::vector<R4> nodes;
  std::vector<double> weights;
};

S3Quadrature s3_quadrature(int n_r = 48, int n_theta = 64, int n_xi = 64);

// G_{k,l}[f](u) = int P_{k,l}((u, v)) f(v) dsigma(v) by quadrature. Only
// ratios of kernel components are contractual; the absolute normalization
// of the projection is never needed.
std::complex<double> kernel_component(const std::function<double(const R4&)>& f,
                                      int k, int l, const R4& u,
                                      const S3Quadrature& quad);

// Gauss-Legendre nodes and weights on [0, 1]; exact for polynomial degree
// 2n - 1. Exposed for reuse in volume quadratures.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n);

}  // namespace cdb
