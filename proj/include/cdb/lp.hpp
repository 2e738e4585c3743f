#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cdb::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

// Standard-form linear program: min c.x subject to A x = b, x >= 0.
// A is row-major, m rows by n columns.
struct Problem {
  int m = 0;
  int n = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<int> basis;  // basic column per row (may include artificials)
};

// Dense two-phase simplex with Bland's anti-cycling rule.
Solution solve(const Problem& p, double tol = 1e-9);

// Phase-1 feasibility of A x = b, x >= 0.
bool feasible(const Problem& p, double tol = 1e-9);

struct IneqResult {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> y;
};

// Maximizes obj.y over the polyhedron {y : rows[i].y <= rhs[i]} with y free
// of sign, few variables, many constraints. Solved through the dual
// standard-form program (k rows, one column per constraint); the optimal y
// is recovered from the tight constraints of the optimal dual basis.
IneqResult maximize_inequality_form(int k, std::span<const double> rows,
                                    std::span<const double> rhs,
                                    std::span<const double> obj,
                                    double tol = 1e-9);

}  // namespace cdb::lp
