#ifndef TROPCA_POLYTOPE_HPP
#define TROPCA_POLYTOPE_HPP

#include <span>
#include <vector>

#include "tropca/trop_core.hpp"

namespace tropca {

/// Tropical convex hull of finitely many points, kept as its (possibly
/// redundant) generating vertices.
class TropPolytope {
 public:
  explicit TropPolytope(std::vector<TropPoint> vertices);

  int dim() const { return vertices_[0].dim(); }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<TropPoint>& vertices() const { return vertices_; }

 private:
  std::vector<TropPoint> vertices_;
};

/// Nearest-point map onto the hull: max_k (lambda_k + v_k) with
/// lambda_k = min_t (x_t - v_k(t)). The output is a closest hull point
/// under the tropical metric and is dominated by x coordinatewise.
TropPoint project(const TropPolytope& p, const TropPoint& x);

/// Distance-zero membership test.
bool contains(const TropPolytope& p, const TropPoint& x, double tol = kTieTol);

/// Sum of projection distances over a dataset; OpenMP over points with a
/// deterministic serial accumulation. The serial variant is the reference.
double hull_distance(const TropPolytope& p, std::span<const TropPoint> data);
double hull_distance_serial(const TropPolytope& p,
                            std::span<const TropPoint> data);

std::vector<TropPoint> project_many(const TropPolytope& p,
                                    std::span<const TropPoint> data);
std::vector<TropPoint> project_many_serial(const TropPolytope& p,
                                           std::span<const TropPoint> data);

}  // namespace tropca

#endif  // TROPCA_POLYTOPE_HPP
