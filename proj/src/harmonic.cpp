#include "cdb/harmonic.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "cdb/diffbody.hpp"
#include "cdb/errors.hpp"

namespace cdb {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// int_0^1 t^{p+a} (1-t)^b dt = (p+a)! b! / (p+a+b+1)!  (exact)
Rational beta_moment(int p, int a, int b) {
  return Rational(factorial(p + a) * factorial(b), factorial(p + a + b + 1));
}

Rational weighted_dot(const std::vector<Rational>& f, const std::vector<Rational>& g,
                      int a, int b) {
  Rational acc = 0;
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (f[p] == 0) continue;
    for (std::size_t q = 0; q < g.size(); ++q) {
      if (g[q] == 0) continue;
      acc += f[p] * g[q] * beta_moment(static_cast<int>(p + q), a, b);
    }
  }
  return acc;
}

}  // namespace

OrthoPolyQ::OrthoPolyQ(int a, int b, int degree) : a_(a), b_(b), degree_(degree) {
  if (a < 0 || b < 0) throw InvalidInput("ortho poly: negative weight exponent");
  if (degree < 0) throw InvalidInput("ortho poly: negative degree");
  if (degree > 8)
    throw InvalidInput("ortho poly: degree above 8 unsupported (conditioning)");
  std::vector<std::vector<Rational>> basis;
  basis.reserve(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j <= degree; ++j) {
    std::vector<Rational> q(static_cast<std::size_t>(j) + 1, 0);
    q[static_cast<std::size_t>(j)] = 1;
    for (int i = 0; i < j; ++i) {
      const Rational coef = weighted_dot(q, basis[static_cast<std::size_t>(i)], a, b) /
                            weighted_dot(basis[static_cast<std::size_t>(i)],
                                         basis[static_cast<std::size_t>(i)], a, b);
      for (std::size_t t = 0; t < basis[static_cast<std::size_t>(i)].size(); ++t)
        q[t] -= coef * basis[static_cast<std::size_t>(i)][t];
    }
    basis.push_back(std::move(q));
  }
  std::vector<Rational>& q = basis.back();
  Rational at_one = 0;
  for (const Rational& c : q) at_one += c;
  coef_.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    coef_[i] = Rational(q[i] / at_one).convert_to<double>();
}

double OrthoPolyQ::operator()(double t) const {
  double acc = 0.0;
  for (std::size_t i = coef_.size(); i-- > 0;) acc = acc * t + coef_[i];
  return acc;
}

DiskPolynomial::DiskPolynomial(int k, int l, int b)
    : k_(k), l_(l), q_(std::abs(k - l), b, std::min(k, l)) {
  if (k < 0 || l < 0) throw InvalidInput("disk polynomial: negative bi-degree");
}

std::complex<double> DiskPolynomial::operator()(std::complex<double> z) const {
  if (std::abs(z) > 1.0 + 1e-12)
    throw InvalidInput("disk polynomial: argument outside the closed unit disc");
  const int d = k_ - l_;
  const std::complex<double> base = d >= 0 ? z : std::conj(z);
  std::complex<double> phase{1.0, 0.0};
  for (int i = 0; i < std::abs(d); ++i) phase *= base;
  return phase * q_(std::norm(z));
}

std::complex<double> disk_poly_eval(int k, int l, std::complex<double> z, int b) {
  return DiskPolynomial(k, l, b)(z);
}

MultiplierTable::MultiplierTable(const Polygon2& c, int k_max) : k_max_(k_max) {
  if (k_max < 0) throw InvalidInput("multiplier table: negative order");
  by_diff_.assign(2 * static_cast<std::size_t>(k_max) + 1, {0.0, 0.0});
  const AtomicMeasure1 mu = area_measure(c);
  for (int d = -k_max; d <= k_max; ++d) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& atom : mu.atoms())
      acc += atom.weight * std::polar(1.0, -d * atom.theta);
    by_diff_[static_cast<std::size_t>(d + k_max)] = acc;
  }
}

std::complex<double> MultiplierTable::at(int k, int l) const {
  if (k < 0 || l < 0 || k > k_max_ || l > k_max_)
    throw InvalidInput("multiplier table: order out of range");
  return at_difference(k - l);
}

std::complex<double> MultiplierTable::at_difference(int d) const {
  if (d < -k_max_ || d > k_max_)
    throw InvalidInput("multiplier table: difference out of range");
  return by_diff_[static_cast<std::size_t>(d + k_max_)];
}

double planar_multiplier_check(const Polygon2& c, const Polygon2& k, int j_max) {
  const Polygon2 d = dc_planar(c, k);
  const Spectrum sd = fourier_support(d, j_max, Spectrum::Convention::kMultiplier);
  const Spectrum sk = fourier_support(k, j_max, Spectrum::Convention::kMultiplier);
  const MultiplierTable table(c, j_max);
  double worst = 0.0;
  for (int j = -j_max; j <= j_max; ++j)
    worst = std::max(worst, std::abs(sd.at(j) - table.at_difference(j) * sk.at(j)));
  return worst;
}

double planar_multiplier_check(const Polygon2& c, const SampledSupport2& k, int j_max) {
  const int n = k.n();
  if (n < 4 * j_max)
    throw ResolutionError("planar_multiplier_check: grid too coarse for cutoff");
  const AtomicMeasure1 mu = area_measure(c);
  // rotation sum through the interpolant, sampled back onto the grid
  std::vector<double> hd(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double theta = k.grid_angle(i);
    double acc = 0.0;
    for (const auto& atom : mu.atoms()) acc += atom.weight * k.support(theta - atom.theta);
    hd[static_cast<std::size_t>(i)] = acc;
  }
  const Spectrum sk = fourier_support(k, j_max, Spectrum::Convention::kMultiplier);
  const MultiplierTable table(c, j_max);
  double worst = 0.0;
  for (int j = -j_max; j <= j_max; ++j) {
    std::complex<double> cj{0.0, 0.0};
    for (int i = 0; i < n; ++i)
      cj += hd[static_cast<std::size_t>(i)] * std::polar(1.0, -j * k.grid_angle(i));
    cj *= kTwoPi / n;
    worst = std::max(worst, std::abs(cj - table.at_difference(j) * sk.at(j)));
  }
  return worst;
}

namespace {

// Fixed unit pole away from the coordinate axes so that no tested kernel
// degenerates.
R4 unit_pole() {
  R4 e{0.6, 0.2, -0.3, 0.7};
  const double n = norm(e, 2);
  for (double& c : e) c /= n;
  return e;
}

}  // namespace

double eigenfunction_check(const Polygon2& c, int k, int l, int trials) {
  if (k < 0 || l < 0 || k > 6 || l > 6)
    throw InvalidInput("eigenfunction_check: bi-degree out of the tested range");
  if (trials <= 0) throw InvalidInput("eigenfunction_check: needs trials >= 1");
  const AtomicMeasure1 mu = area_measure(c);
  const DiskPolynomial p(k, l);
  const R4 e = unit_pole();
  auto y = [&](const R4& v) { return p(hermitian_pair(v, e, 2)); };
  std::complex<double> lambda{0.0, 0.0};
  for (const auto& atom : mu.atoms())
    lambda += atom.weight * std::polar(1.0, -(k - l) * atom.theta);
  const auto net = direction_net(2, trials, 46090817u);
  double worst = 0.0;
  for (const R4& u : net) {
    std::complex<double> acted{0.0, 0.0};
    for (const auto& atom : mu.atoms())
      acted += atom.weight * y(complex_scale_point(u, 2, std::polar(1.0, -atom.theta)));
    worst = std::max(worst, std::abs(acted - lambda * y(u)));
  }
  return worst;
}

double harmonicity_check(int k, int l, double step) {
  if (k < 0 || l < 0 || k > 4 || l > 4)
    throw InvalidInput("harmonicity_check: bi-degree out of the tested range");
  if (!(step > 0.0)) throw InvalidInput("harmonicity_check: step must be positive");
  const DiskPolynomial pkl(k, l);
  const R4 e = unit_pole();
  const int deg = k + l;
  auto p = [&](const R4& x) -> std::complex<double> {
    const double r = norm(x, 2);
    R4 u = x;
    for (double& c : u) c /= r;
    return std::pow(r, deg) * pkl(hermitian_pair(u, e, 2));
  };
  std::mt19937_64 rng(77230114u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> rad(0.5, 1.5);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    R4 x{};
    double n2 = 0.0;
    for (int d = 0; d < 4; ++d) {
      x[static_cast<std::size_t>(d)] = gauss(rng);
      n2 += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
    }
    if (n2 < 1e-12) continue;
    const double scale = rad(rng) / std::sqrt(n2);
    for (double& c : x) c *= scale;
    const std::complex<double> center = p(x);
    std::complex<double> lap{0.0, 0.0};
    double magnitude = 0.0;
    for (int d = 0; d < 4; ++d) {
      R4 hi = x;
      R4 lo = x;
      hi[static_cast<std::size_t>(d)] += step;
      lo[static_cast<std::size_t>(d)] -= step;
      const std::complex<double> second = (p(hi) - 2.0 * center + p(lo)) / (step * step);
      lap += second;
      magnitude += std::abs(second);
    }
    const double r = norm(x, 2);
    const double denom = magnitude + std::abs(center) / (r * r) + 1e-12;
    worst = std::max(worst, std::abs(lap) / denom);
  }
  return worst;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n) {
  if (n < 1) throw InvalidInput("gauss_legendre_01: needs at least one node");
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the classic cosine initial guess
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0;
      double p1 = t;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = 0.5 * (t + 1.0);
    // weight 2 / ((1 - t^2) P'^2) on [-1, 1], halved by the interval map
    w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return {std::move(x), std::move(w)};
}

S3Quadrature s3_quadrature(int n_r, int n_theta, int n_xi) {
  if (n_r < 8 || n_theta < 8 || n_xi < 8)
    throw InvalidInput("s3_quadrature: sizes must be at least 8");
  const auto [t_nodes, t_weights] = gauss_legendre_01(n_r);
  S3Quadrature quad;
  quad.nodes.reserve(static_cast<std::size_t>(n_r) * n_theta * n_xi);
  quad.weights.reserve(quad.nodes.capacity());
  // dsigma_3 = (1/2) dt dtheta dxi on [0,1] x [0,2pi)^2
  const double angular = (kTwoPi / n_theta) * (kTwoPi / n_xi) * 0.5;
  for (int ir = 0; ir < n_r; ++ir) {
    const double t = t_nodes[static_cast<std::size_t>(ir)];
    const double r = std::sqrt(t);
    const double q = std::sqrt(1.0 - t);
    const double wt = t_weights[static_cast<std::size_t>(ir)] * angular;
    for (int it = 0; it < n_theta; ++it) {
      const double theta = kTwoPi * it / n_theta;
      const double rc = r * std::cos(theta);
      const double rs = r * std::sin(theta);
      for (int ix = 0; ix < n_xi; ++ix) {
        const double xi = kTwoPi * ix / n_xi;
        quad.nodes.push_back({rc, rs, q * std::cos(xi), q * std::sin(xi)});
        quad.weights.push_back(wt);
      }
    }
  }
  return quad;
}

std::complex<double> kernel_component(const std::function<double(const R4&)>& f,
                                      int k, int l, const R4& u,
                                      const S3Quadrature& quad) {
  if (quad.nodes.size() != quad.weights.size() || quad.nodes.empty())
    throw InvalidInput("kernel_component: malformed quadrature");
  const DiskPolynomial p(k, l);
  const double nu = norm(u, 2);
  if (!(nu > 0.0)) throw InvalidInput("kernel_component: zero direction");
  R4 un = u;
  for (double& c : un) c /= nu;
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < quad.nodes.size(); ++i)
    acc += quad.weights[i] * p(hermitian_pair(un, quad.nodes[i], 2)) * f(quad.nodes[i]);
  return acc;
}

}  // namespace cdb
