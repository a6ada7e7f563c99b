#ifndef TROPCA_FITTING_HPP
#define TROPCA_FITTING_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tropca/linspace.hpp"
#include "tropca/polytope.hpp"
#include "tropca/trop_core.hpp"

namespace tropca {

struct SearchConfig {
  enum class Mode { sample, enumerate };
  int convergence_window = 100;     // proposals without improvement
  long max_iterations = 100000;     // hard stop for sample mode
  std::uint64_t rng_seed = 0;       // ignored in enumerate mode
  Mode mode = Mode::sample;
};

struct FitResult {
  std::variant<std::monostate, TropLinearSpace, TropPolytope> model;
  std::vector<int> generating_indices;  // data indices spanning the model
  double total_distance = 0.0;
  double proportion_r = 0.0;
  std::vector<TropPoint> projections;
  std::vector<double> per_point_distance;
  /// sample mode only: incumbent distance after each proposal
  std::vector<double> incumbent_history;
  long iterations_run = 0;
  bool converged = false;

  bool is_stiefel() const {
    return std::holds_alternative<TropLinearSpace>(model);
  }
};

/// Exact best-fit hyperplane for exactly e points in R^e/R1. The optimal
/// total distance equals the tropical volume of the point matrix, and one
/// optimum is spanned by e-1 of the points: after reordering rows so the
/// best permutation is the identity, drop the lowest row where the runner-up
/// permutation disagrees.
std::pair<TropHyperplane, double> best_fit_hyperplane_exact(
    const TropMatrix& points);

/// Minimizer of the summed tropical distance to the data and its optimum
/// value, via the linear program
///   min sum_i delta_i, delta_i >= (x_k - x_l) - (d_i(k) - d_i(l)),
/// with x_1 pinned to 0. The minimizer need not be unique; only the value
/// is pinned by the contract.
std::pair<TropPoint, double> fermat_weber(std::span<const TropPoint> points);

/// Second-order (and general s) tropical PCA over Stiefel spaces spanned by
/// data tuples. sample mode follows the incumbent chain; enumerate mode
/// scans all C(n,s) tuples (OpenMP, deterministic reduction).
FitResult fit_stiefel_pca(std::span<const TropPoint> data, int s,
                          const SearchConfig& cfg);

/// Same search over tropical polytopes with Eq.-style projections.
FitResult fit_polytope_pca(std::span<const TropPoint> data, int s,
                           const SearchConfig& cfg);

/// Serial reference scans for the enumerate mode, kept for testing.
FitResult fit_stiefel_pca_enumerate_serial(std::span<const TropPoint> data,
                                           int s);
FitResult fit_polytope_pca_enumerate_serial(std::span<const TropPoint> data,
                                            int s);

/// Proportion-of-variance statistic
///   r = sum_i d(pi_bar, proj_i) / (sum_i d(data_i, proj_i) + sum_i d(pi_bar, proj_i))
/// where pi_bar is a Fermat-Weber point of the projections. Zero when the
/// denominator vanishes (all projections identical to the data and to each
/// other).
double proportion_of_variance(std::span<const TropPoint> data,
                              std::span<const TropPoint> projections);

}  // namespace tropca

#endif  // TROPCA_FITTING_HPP
