#ifndef TROPCA_TROP_CORE_HPP
#define TROPCA_TROP_CORE_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropca {

// Tie tolerance for "maximum attained at least twice" style tests.
inline constexpr double kTieTol = 1e-9;

/// Scalar of the max-plus semiring (R u {-inf}, max, +).
/// The additive identity -inf is a tagged sentinel, not a large negative
/// double, so absorption under tropical multiplication is exact.
class TropScalar {
 public:
  constexpr TropScalar() : value_(0.0), finite_(true) {}
  constexpr TropScalar(double v) : value_(v), finite_(true) {}

  static constexpr TropScalar neg_inf() {
    TropScalar s;
    s.finite_ = false;
    s.value_ = 0.0;
    return s;
  }

  bool is_neg_inf() const { return !finite_; }
  bool finite() const { return finite_; }

  double value() const {
    if (!finite_) throw std::logic_error("TropScalar: value() on -inf");
    return value_;
  }

  bool operator==(const TropScalar& o) const {
    if (finite_ != o.finite_) return false;
    return !finite_ || value_ == o.value_;
  }

 private:
  double value_;
  bool finite_;
};

/// Tropical addition: max, with -inf as identity.
inline TropScalar oplus(TropScalar a, TropScalar b) {
  if (a.is_neg_inf()) return b;
  if (b.is_neg_inf()) return a;
  return a.value() >= b.value() ? a : b;
}

/// Tropical multiplication: +, with -inf absorbing.
inline TropScalar otimes(TropScalar a, TropScalar b) {
  if (a.is_neg_inf() || b.is_neg_inf()) return TropScalar::neg_inf();
  return TropScalar(a.value() + b.value());
}

/// Point of the tropical projective torus R^e/R1, all coordinates finite.
/// The stored representative is arbitrary; normalized() pins coords[0] == 0
/// so equality testing and file dumps are deterministic.
class TropPoint {
 public:
  explicit TropPoint(std::vector<double> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
  const std::vector<double>& coords() const { return coords_; }

  /// Canonical representative: subtract coords[0] from every coordinate.
  TropPoint normalized() const;
  /// Representative shifted by lambda * (1,...,1).
  TropPoint shifted(double lambda) const;

  bool operator==(const TropPoint& o) const { return coords_ == o.coords_; }

 private:
  std::vector<double> coords_;
};

/// Tropical distance max_{i<j} |v_i - w_i - v_j + w_j|, the generalized
/// Hilbert projective metric. Invariant under shifts by R1 on either side.
double trop_distance(const TropPoint& v, const TropPoint& w);

/// Rectangular matrix over the tropical semiring. Rows with all-finite
/// entries can be read back as points of the torus.
class TropMatrix {
 public:
  TropMatrix(int rows, int cols, TropScalar fill = TropScalar::neg_inf());
  /// Build from finite entries, one inner vector per row.
  static TropMatrix from_rows(const std::vector<std::vector<double>>& rows);
  /// Rows are the given torus points.
  static TropMatrix from_points(std::span<const TropPoint> pts);
  /// Tropical identity: 0 on the diagonal, -inf elsewhere.
  static TropMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  TropScalar at(int i, int j) const { return data_[idx(i, j)]; }
  void set(int i, int j, TropScalar v) { data_[idx(i, j)] = v; }

  bool all_finite() const;
  TropPoint row_point(int i) const;
  TropMatrix transposed() const;
  /// Submatrix keeping the given column indices, in order.
  TropMatrix select_columns(std::span<const int> cols) const;
  /// Submatrix dropping a single row.
  TropMatrix drop_row(int row) const;

  bool operator==(const TropMatrix& o) const = default;

 private:
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(cols_) +
           static_cast<size_t>(j);
  }
  int rows_, cols_;
  std::vector<TropScalar> data_;
};

/// Tropical matrix product, (A (x) C)_{ij} = max_l (A_{il} + C_{lj}).
TropMatrix trop_matmul(const TropMatrix& a, const TropMatrix& c);

/// Best and second-best permutation sums of a square tropical matrix.
struct AssignmentResult {
  double best_value = 0.0;
  std::vector<int> best_perm;    // row i -> column best_perm[i]
  double second_value = 0.0;     // max over all permutations != best_perm
  std::vector<int> second_perm;  // attains second_value, differs from best
};

/// Thrown when no permutation avoids a -inf entry.
struct DegenerateMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tropical determinant max_sigma sum_i A[i, sigma(i)] together with the
/// runner-up over the remaining permutations. Solved as a max-weight
/// assignment; the runner-up comes from e re-solves, each forbidding one
/// arc of the optimal permutation. Requires e >= 2.
AssignmentResult trop_det(const TropMatrix& a);

/// Tropical determinant value only; accepts 1x1 matrices.
double trop_det_value(const TropMatrix& a);

/// Gap between the best and second-best permutation sums (Def: tropical
/// volume). Zero exactly when the matrix is tropically singular.
double trop_volume(const TropMatrix& a);

/// True iff the tropical determinant is attained by two distinct
/// permutations within tol.
bool is_trop_singular(const TropMatrix& a, double tol = kTieTol);

/// True iff the dissimilarity matrix D satisfies all triangle inequalities,
/// tested tropically as -D (x) -D == -D entrywise.
bool is_metric(const TropMatrix& d, double tol = kTieTol);

}  // namespace tropca

#endif  // TROPCA_TROP_CORE_HPP
