#include "hungarian.hpp"

#include <limits>

namespace tropca::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MaxAssignment solve_max_assignment(const TropMatrix& a, int forbid_row,
                                   int forbid_col) {
  const int n = a.rows();
  MaxAssignment out;
  if (n == 0 || a.cols() != n) return out;

  // Minimize cost = -value with shortest augmenting paths and potentials.
  // 1-based arrays; column 0 is the virtual start of each augmenting path.
  auto cost = [&](int i, int j) -> double {
    if (i == forbid_row && j == forbid_col) return kInf;
    const TropScalar s = a.at(i, j);
    return s.is_neg_inf() ? kInf : -s.value();
  };

  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<int> match(static_cast<size_t>(n) + 1, 0);  // col -> row
  std::vector<int> way(static_cast<size_t>(n) + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n) + 1, kInf);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    do {
      used[static_cast<size_t>(j0)] = true;
      const int i0 = match[static_cast<size_t>(j0)];
      double delta = kInf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double c = cost(i0 - 1, j - 1);
        if (c < kInf) {
          const double cur = c - u[static_cast<size_t>(i0)] -
                             v[static_cast<size_t>(j)];
          if (cur < minv[static_cast<size_t>(j)]) {
            minv[static_cast<size_t>(j)] = cur;
            way[static_cast<size_t>(j)] = j0;
          }
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      if (j1 < 0 || delta == kInf) return out;  // no finite augmenting path
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(match[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<size_t>(j0)];
      match[static_cast<size_t>(j0)] = match[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  out.perm.assign(static_cast<size_t>(n), -1);
  for (int j = 1; j <= n; ++j)
    out.perm[static_cast<size_t>(match[static_cast<size_t>(j)] - 1)] = j - 1;
  // row-order summation keeps the value bitwise comparable across solvers
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    total += a.at(i, out.perm[static_cast<size_t>(i)]).value();
  out.value = total;
  out.feasible = true;
  return out;
}

}  // namespace tropca::detail
