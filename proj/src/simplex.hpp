#ifndef TROPCA_SRC_SIMPLEX_HPP
#define TROPCA_SRC_SIMPLEX_HPP

#include <vector>

namespace tropca::detail {

/// min c'x subject to A x >= b, x >= 0, with c >= 0.
///
/// Solved as the dual max b'y, A'y <= c, y >= 0, whose origin is feasible
/// because c is nonnegative; the primal solution is read off the final
/// tableau. Dense, Bland's rule. Sized for cutting-plane use: a few hundred
/// rows of A and a few hundred variables.
struct LpResult {
  bool optimal = false;
  double objective = 0.0;
  std::vector<double> x;
};

LpResult solve_min_ge(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b,
                      const std::vector<double>& c);

}  // namespace tropca::detail

#endif  // TROPCA_SRC_SIMPLEX_HPP
