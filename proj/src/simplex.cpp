#include "simplex.hpp"

#include <cstddef>
#include <stdexcept>

namespace tropca::detail {

namespace {
constexpr double kPivTol = 1e-9;
}

LpResult solve_min_ge(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b,
                      const std::vector<double>& c) {
  const size_t m = a.size();     // primal constraints = dual variables
  const size_t n = c.size();     // primal variables = dual constraints
  for (double ci : c)
    if (ci < 0.0)
      throw std::invalid_argument("solve_min_ge: requires c >= 0");

  // Maximization tableau for the dual: rows = dual constraints (one per
  // primal variable), columns = m dual vars, n slacks, rhs.
  const size_t width = m + n + 1;
  std::vector<std::vector<double>> t(n + 1, std::vector<double>(width, 0.0));
  for (size_t r = 0; r < n; ++r) {
    for (size_t j = 0; j < m; ++j) t[r][j] = a[j][r];  // A transpose
    t[r][m + r] = 1.0;
    t[r][width - 1] = c[r];
  }
  for (size_t j = 0; j < m; ++j) t[n][j] = -b[j];

  std::vector<size_t> basis(n);
  for (size_t r = 0; r < n; ++r) basis[r] = m + r;

  LpResult res;
  const size_t max_pivots = 50000 + 200 * (m + n);
  // Dantzig pricing, falling back to Bland's rule if the pivot count grows
  // enough to suggest cycling.
  const size_t bland_after = 2 * (m + n) + 200;
  for (size_t iter = 0; iter < max_pivots; ++iter) {
    size_t enter = width - 1;
    if (iter < bland_after) {
      double most = -kPivTol;
      for (size_t j = 0; j + 1 < width; ++j) {
        if (t[n][j] < most) {
          most = t[n][j];
          enter = j;
        }
      }
    } else {
      for (size_t j = 0; j + 1 < width; ++j) {
        if (t[n][j] < -kPivTol) {
          enter = j;
          break;
        }
      }
    }
    if (enter == width - 1) {
      res.optimal = true;
      break;
    }
    // Ratio test; Bland tie-break on the leaving basis variable index.
    size_t leave = n;
    double best_ratio = 0.0;
    for (size_t r = 0; r < n; ++r) {
      if (t[r][enter] > kPivTol) {
        const double ratio = t[r][width - 1] / t[r][enter];
        if (leave == n || ratio < best_ratio - kPivTol ||
            (ratio < best_ratio + kPivTol && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave == n) return res;  // dual unbounded: primal infeasible
    const double piv = t[leave][enter];
    for (size_t j = 0; j < width; ++j) t[leave][j] /= piv;
    for (size_t r = 0; r <= n; ++r) {
      if (r == leave) continue;
      const double f = t[r][enter];
      if (f == 0.0) continue;
      for (size_t j = 0; j < width; ++j) t[r][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (!res.optimal) return res;

  res.objective = t[n][width - 1];
  res.x.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const double v = t[n][m + i];
    res.x[i] = v > 0.0 ? v : 0.0;
  }
  return res;
}

}  // namespace tropca::detail
