#include "cdb/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "cdb/errors.hpp"

namespace cdb::lp {
namespace {

// Dense simplex tableau. Columns: n structural, m artificial, then the
// right-hand side; one objective row on top of m constraint rows.
class Tableau {
 public:
  Tableau(const Problem& p, double tol) : m_(p.m), n_(p.n), tol_(tol) {
    ncols_ = n_ + m_ + 1;
    t_.assign(static_cast<std::size_t>(m_ + 1) * ncols_, 0.0);
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const double sign = p.b[i] < 0.0 ? -1.0 : 1.0;
      double* row = row_ptr(i + 1);
      for (int j = 0; j < n_; ++j) row[j] = sign * p.a[static_cast<std::size_t>(i) * n_ + j];
      row[n_ + i] = 1.0;
      row[ncols_ - 1] = sign * p.b[i];
      basis_[i] = n_ + i;
    }
    // Phase-1 objective: minimize the sum of artificials. Start from the
    // phase-1 costs (1 on each artificial) and price out the artificial
    // basis so reduced costs are consistent and the RHS tracks -objective.
    double* obj = row_ptr(0);
    for (int i = 0; i < m_; ++i) obj[n_ + i] = 1.0;
    for (int i = 1; i <= m_; ++i) {
      const double* row = row_ptr(i);
      for (int j = 0; j < ncols_; ++j) obj[j] -= row[j];
    }
  }

  // Runs Bland pivoting until optimality; pivots only among columns < limit.
  // Returns false when the objective is unbounded below.
  bool iterate(int column_limit) {
    for (;;) {
      const double* obj = row_ptr(0);
      int enter = -1;
      for (int j = 0; j < column_limit; ++j) {
        if (obj[j] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 1; i <= m_; ++i) {
        const double* row = row_ptr(i);
        if (row[enter] > tol_) {
          const double ratio = row[ncols_ - 1] / row[enter];
          if (ratio < best_ratio - tol_ ||
              (ratio < best_ratio + tol_ &&
               (leave < 0 || basis_[i - 1] < basis_[leave - 1]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int prow, int pcol) {
    double* row = row_ptr(prow);
    const double inv = 1.0 / row[pcol];
    for (int j = 0; j < ncols_; ++j) row[j] *= inv;
    row[pcol] = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == prow) continue;
      double* r = row_ptr(i);
      const double f = r[pcol];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols_; ++j) r[j] -= f * row[j];
      r[pcol] = 0.0;
    }
    basis_[prow - 1] = pcol;
  }

  double objective() const { return -t_[ncols_ - 1]; }

  // Replaces the objective row with the given structural costs, priced out
  // against the current basis (costs of artificial columns are zero; they
  // are excluded from pivoting in phase 2 anyway).
  void load_costs(const std::vector<double>& c) {
    double* obj = row_ptr(0);
    std::fill(obj, obj + ncols_, 0.0);
    for (int j = 0; j < n_; ++j) obj[j] = c[j];
    for (int i = 1; i <= m_; ++i) {
      const int b = basis_[i - 1];
      const double cb = b < n_ ? c[b] : 0.0;
      if (cb == 0.0) continue;
      const double* row = row_ptr(i);
      for (int j = 0; j < ncols_; ++j) obj[j] -= cb * row[j];
    }
  }

  // Pivots basic artificial variables out of the basis where a structural
  // column is available; leaves redundant rows as they are.
  void expel_artificials() {
    for (int i = 1; i <= m_; ++i) {
      if (basis_[i - 1] < n_) continue;
      const double* row = row_ptr(i);
      for (int j = 0; j < n_; ++j) {
        if (std::abs(row[j]) > 1e3 * tol_) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  const std::vector<int>& basis() const { return basis_; }

  std::vector<double> extract_x() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = t_[static_cast<std::size_t>(i + 1) * ncols_ + ncols_ - 1];
    }
    return x;
  }

 private:
  double* row_ptr(int i) { return t_.data() + static_cast<std::size_t>(i) * ncols_; }
  const double* row_ptr(int i) const {
    return t_.data() + static_cast<std::size_t>(i) * ncols_;
  }

  int m_;
  int n_;
  int ncols_;
  double tol_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

}  // namespace

Solution solve(const Problem& p, double tol) {
  if (p.m <= 0 || p.n <= 0 || p.a.size() != static_cast<std::size_t>(p.m) * p.n ||
      p.b.size() != static_cast<std::size_t>(p.m) ||
      p.c.size() != static_cast<std::size_t>(p.n)) {
    throw InvalidInput("lp::solve: inconsistent problem dimensions");
  }
  Tableau t(p, tol);
  Solution sol;
  if (!t.iterate(p.n + p.m)) {
    // Phase 1 is bounded below by zero, so this cannot trigger; guard anyway.
    sol.status = Status::kInfeasible;
    return sol;
  }
  if (t.objective() > 1e3 * tol) {
    sol.status = Status::kInfeasible;
    return sol;
  }
  t.expel_artificials();
  t.load_costs(p.c);
  if (!t.iterate(p.n)) {
    sol.status = Status::kUnbounded;
    return sol;
  }
  sol.status = Status::kOptimal;
  sol.objective = t.objective();
  sol.x = t.extract_x();
  sol.basis = t.basis();
  return sol;
}

bool feasible(const Problem& p, double tol) {
  Problem q = p;
  std::fill(q.c.begin(), q.c.end(), 0.0);
  return solve(q, tol).status == Status::kOptimal;
}

IneqResult maximize_inequality_form(int k, std::span<const double> rows,
                                    std::span<const double> rhs,
                                    std::span<const double> obj, double tol) {
  const int e = static_cast<int>(rhs.size());
  if (k <= 0 || e <= 0 || rows.size() != static_cast<std::size_t>(e) * k ||
      obj.size() != static_cast<std::size_t>(k)) {
    throw InvalidInput("lp::maximize_inequality_form: inconsistent dimensions");
  }
  // Dual of max obj.y s.t. rows.y <= rhs (y free):
  //   min rhs.lambda  s.t.  rows^T lambda = obj, lambda >= 0.
  Problem dual;
  dual.m = k;
  dual.n = e;
  dual.a.assign(static_cast<std::size_t>(k) * e, 0.0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < k; ++j)
      dual.a[static_cast<std::size_t>(j) * e + i] = rows[static_cast<std::size_t>(i) * k + j];
  dual.b.assign(obj.begin(), obj.end());
  dual.c.assign(rhs.begin(), rhs.end());

  IneqResult res;
  const Solution ds = solve(dual, tol);
  if (ds.status == Status::kInfeasible) {
    res.status = Status::kUnbounded;  // dual infeasible => primal unbounded
    return res;
  }
  if (ds.status == Status::kUnbounded) {
    res.status = Status::kInfeasible;  // dual unbounded => primal infeasible
    return res;
  }
  res.status = Status::kOptimal;
  res.objective = ds.objective;

  // Recover y from the tight constraints named by the optimal dual basis:
  // rows[b].y = rhs[b] for each structural basic column b. The basis matrix
  // is square and invertible, so Gaussian elimination suffices.
  std::vector<double> sys(static_cast<std::size_t>(k) * (k + 1), 0.0);
  int nb = 0;
  for (int b : ds.basis) {
    if (b < 0 || b >= e || nb >= k) continue;
    for (int j = 0; j < k; ++j) sys[static_cast<std::size_t>(nb) * (k + 1) + j] = rows[static_cast<std::size_t>(b) * k + j];
    sys[static_cast<std::size_t>(nb) * (k + 1) + k] = rhs[b];
    ++nb;
  }
  // Pad (degenerate bases) with zero rows; elimination then leaves free
  // coordinates at zero, which is a valid point of the optimal face.
  std::vector<double> y(k, 0.0);
  // Gaussian elimination with partial pivoting on the nb x k system.
  std::vector<int> colof(k, -1);
  int r = 0;
  for (int col = 0; col < k && r < nb; ++col) {
    int piv = -1;
    double best = 1e-11;
    for (int i = r; i < nb; ++i) {
      const double v = std::abs(sys[static_cast<std::size_t>(i) * (k + 1) + col]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv < 0) continue;
    for (int j = 0; j <= k; ++j)
      std::swap(sys[static_cast<std::size_t>(r) * (k + 1) + j], sys[static_cast<std::size_t>(piv) * (k + 1) + j]);
    const double inv = 1.0 / sys[static_cast<std::size_t>(r) * (k + 1) + col];
    for (int j = 0; j <= k; ++j) sys[static_cast<std::size_t>(r) * (k + 1) + j] *= inv;
    for (int i = 0; i < nb; ++i) {
      if (i == r) continue;
      const double f = sys[static_cast<std::size_t>(i) * (k + 1) + col];
      if (f == 0.0) continue;
      for (int j = 0; j <= k; ++j)
        sys[static_cast<std::size_t>(i) * (k + 1) + j] -= f * sys[static_cast<std::size_t>(r) * (k + 1) + j];
    }
    colof[col] = r;
    ++r;
  }
  for (int col = 0; col < k; ++col)
    if (colof[col] >= 0) y[col] = sys[static_cast<std::size_t>(colof[col]) * (k + 1) + k];
  res.y = std::move(y);
  return res;
}

}  // namespace cdb::lp
