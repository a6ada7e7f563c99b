#ifndef TROPCA_SRC_HUNGARIAN_HPP
#define TROPCA_SRC_HUNGARIAN_HPP

#include <vector>

#include "tropca/trop_core.hpp"

namespace tropca::detail {

struct MaxAssignment {
  bool feasible = false;
  double value = 0.0;
  std::vector<int> perm;  // row i -> column perm[i]
};

/// Max-weight perfect assignment on a square tropical matrix. Entries equal
/// to -inf are forbidden arcs; (forbid_row, forbid_col), if nonnegative,
/// forbids one extra arc. Hungarian algorithm with potentials, O(n^3).
MaxAssignment solve_max_assignment(const TropMatrix& a, int forbid_row = -1,
                                   int forbid_col = -1);

}  // namespace tropca::detail

#endif  // TROPCA_SRC_HUNGARIAN_HPP
