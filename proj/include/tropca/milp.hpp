#ifndef TROPCA_MILP_HPP
#define TROPCA_MILP_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tropca/polytope.hpp"
#include "tropca/trop_core.hpp"

namespace tropca {

/// Mixed-integer encoding of the three-vertex polytope fit:
///   minimize sum_i Delta_i
/// with Delta_i >= +-(d_i(k) - d'_i(k) - d_i(l) + d'_i(l)) over pairs k < l,
/// d'_i(k) >= lam_p_i + Dp_k with big-M activation y (at most two y per
/// (i,k) may be slack, so at least one bound is tight), and
/// d_i(k) >= lam_p_i + Dp_k with big-M activation z (at most e-1 z per
/// (p,i), so each lambda attains its defining minimum). Variables Dp_1 are
/// pinned to 0 to fix the projective gauge.
///
/// Naming: Dp_k, dprime_i_k, lam_p_i, Delta_i, y_p_i_k, z_p_i_k, 1-based.
struct MilpConstraint {
  std::string name;
  std::map<std::string, double> coefs;
  char sense = 'G';  // 'G' >=, 'L' <=, 'E' ==
  double rhs = 0.0;

  bool operator==(const MilpConstraint&) const = default;
};

struct MilpBound {
  bool free = false;
  bool fixed = false;
  double value = 0.0;  // for fixed

  bool operator==(const MilpBound&) const = default;
};

struct MilpModel {
  int n = 0;  // data points
  int e = 0;  // ambient dimension
  double big_m = 0.0;
  std::vector<std::string> var_order;           // deterministic emit order
  std::map<std::string, double> objective;
  std::vector<MilpConstraint> constraints;
  std::map<std::string, MilpBound> bounds;  // default bound is [0, inf)
  std::set<std::string> binaries;
  /// Instance data, kept so candidate solutions can be verified.
  std::vector<std::vector<double>> data;
};

/// Build the s = 3 model for n >= 3 data points. Big-M constants default to
/// 4 * (coordinate range of the data) + 1.
MilpModel build_model(std::span<const TropPoint> data);

/// CPLEX-style LP text: Minimize / Subject To / Bounds / Binary / End.
void export_lp(const MilpModel& model, std::ostream& os);
void export_lp_file(const MilpModel& model, const std::string& path);

/// Reader for the exported subset of the LP format; round-trips export_lp.
/// The parsed model carries no instance data (n, e are recovered from the
/// variable names).
MilpModel parse_lp(std::istream& is);

/// Structural equality: variables, objective, constraints, bounds and
/// binaries agree; instance data is ignored.
bool structurally_equal(const MilpModel& a, const MilpModel& b, double tol);

struct CheckResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<std::string> violations;
};

/// Evaluate a full variable assignment against every constraint, bound and
/// integrality requirement within tol.
CheckResult check_solution(const MilpModel& model,
                           const std::map<std::string, double>& assignment,
                           double tol = 1e-6);

/// Assignment realizing a given polytope: vertices are gauge-normalized,
/// lambdas and projections follow the projection formula, and Delta_i is
/// the attained distance, so the objective equals the hull distance.
std::map<std::string, double> assignment_from_polytope(
    const MilpModel& model, const TropPolytope& p);

/// Vertices D^(1..3) read back out of an assignment.
TropPolytope decode_polytope(const MilpModel& model,
                             const std::map<std::string, double>& assignment);

}  // namespace tropca

#endif  // TROPCA_MILP_HPP
