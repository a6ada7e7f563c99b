#ifndef TROPCA_LINSPACE_HPP
#define TROPCA_LINSPACE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "tropca/trop_core.hpp"

namespace tropca {

/// Colexicographic rank/unrank for d-subsets of {0,...,e-1}.
class SubsetIndexer {
 public:
  SubsetIndexer(int e, int d);

  int e() const { return e_; }
  int d() const { return d_; }
  std::uint64_t size() const { return size_; }

  /// Rank of a strictly increasing subset.
  std::uint64_t rank(std::span<const int> subset) const;
  /// Inverse of rank; out must have length d.
  void unrank(std::uint64_t r, std::span<int> out) const;

  std::uint64_t binomial(int n, int k) const;

 private:
  int e_, d_;
  std::uint64_t size_;
  std::vector<std::uint64_t> choose_;  // (e_+1) x (d_+2) table
  int choose_cols_;
};

/// Supported Pluecker sizes are capped so projection loops stay tractable.
inline constexpr std::uint64_t kMaxPluckerSize = 1'000'000;

/// Valuation of the d-subsets of [e]: the data of a tropical linear space.
/// Values are stored in colexicographic subset order.
class PluckerVector {
 public:
  PluckerVector(int e, int d);

  int e() const { return indexer_.e(); }
  int d() const { return indexer_.d(); }
  std::uint64_t size() const { return indexer_.size(); }
  const SubsetIndexer& indexer() const { return indexer_; }

  /// Value on an unordered subset; duplicates collapse below size d and give
  /// -inf by convention.
  TropScalar at(std::span<const int> subset) const;
  void set(std::span<const int> subset, TropScalar v);

  TropScalar at_rank(std::uint64_t r) const { return values_[r]; }
  void set_rank(std::uint64_t r, TropScalar v) { values_[r] = v; }

  /// Exchange relation: for every (d-1)-subset sigma and (d+1)-subset tau,
  /// max_i p(sigma u {tau_i}) + p(tau - {tau_i}) is attained at least twice.
  bool satisfies_exchange(double tol = kTieTol) const;

  /// Text form: header "e d", then one line per subset
  /// "<indices> <value>" with -inf spelled "-inf".
  void save(std::ostream& os) const;
  static PluckerVector load(std::istream& is);

  bool operator==(const PluckerVector& o) const;

 private:
  SubsetIndexer indexer_;
  std::vector<TropScalar> values_;
};

/// Tropical linear space L_p: x lies in L_p iff for every (d+1)-subset tau
/// the maximum of p(tau - {tau_i}) + x_{tau_i} is attained at least twice.
class TropLinearSpace {
 public:
  explicit TropLinearSpace(PluckerVector p);

  int ambient_dim() const { return plucker_.e(); }
  int rank() const { return plucker_.d(); }
  const PluckerVector& plucker() const { return plucker_; }

 private:
  PluckerVector plucker_;
};

/// Pluecker vector of the maximal tropical minors of a d x e matrix.
PluckerVector stiefel_plucker(const TropMatrix& a);

/// Stiefel tropical linear space spanned by the rows of a d x e matrix.
TropLinearSpace stiefel_space(const TropMatrix& a);

bool contains(const TropLinearSpace& l, const TropPoint& x,
              double tol = kTieTol);

/// Nearest point of L to u (blue rule). Returns the representative produced
/// by the closed form; together with red_residual it satisfies u = w + v
/// coordinatewise, not just projectively.
TropPoint blue_project(const TropLinearSpace& l, const TropPoint& u);

/// Coordinatewise gap between u and its projection (red rule). Entries are
/// >= 0 and u - red_residual is the blue-rule projection.
std::vector<double> red_residual(const TropLinearSpace& l, const TropPoint& u);

double distance_to_linspace(const TropLinearSpace& l, const TropPoint& u);

/// Batch projection of many points; OpenMP over points.
std::vector<TropPoint> blue_project_many(const TropLinearSpace& l,
                                         std::span<const TropPoint> pts);
std::vector<TropPoint> blue_project_many_serial(const TropLinearSpace& l,
                                                std::span<const TropPoint> pts);

/// Sum of distances from the data points to L; OpenMP over points with a
/// deterministic serial accumulation.
double linspace_distance_sum(const TropLinearSpace& l,
                             std::span<const TropPoint> pts);
double linspace_distance_sum_serial(const TropLinearSpace& l,
                                    std::span<const TropPoint> pts);

/// Tropical hyperplane, stored through the coefficients of its linear
/// functional: x lies on it iff max_i (normal_i + x_i) is attained at least
/// twice. Identical to the rank-(e-1) space with p([e]-{i}) = normal_i; the
/// apex is -normal up to normalization.
class TropHyperplane {
 public:
  explicit TropHyperplane(std::vector<double> normal);
  static TropHyperplane from_apex(const TropPoint& apex);

  int dim() const { return static_cast<int>(normal_.size()); }
  const std::vector<double>& normal() const { return normal_; }
  TropPoint apex() const;

  TropLinearSpace as_linear_space() const;

  /// Distance from x: gap between the largest and second-largest value of
  /// normal_i + x_i (single red-rule pass).
  double gap(const TropPoint& x) const;
  bool contains(const TropPoint& x, double tol = kTieTol) const;

 private:
  std::vector<double> normal_;
};

/// Hyperplane spanned by the e-1 rows of an (e-1) x e matrix: coefficient i
/// is the tropical determinant of the matrix with column i deleted.
TropHyperplane hyperplane_from_points(const TropMatrix& a);

}  // namespace tropca

#endif  // TROPCA_LINSPACE_HPP
