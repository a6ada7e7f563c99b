#include "tropca/trop_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hungarian.hpp"

namespace tropca {

TropPoint::TropPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    throw std::invalid_argument("TropPoint: dimension must be >= 2");
  for (double c : coords_) {
    if (!std::isfinite(c))
      throw std::invalid_argument("TropPoint: coordinates must be finite");
  }
}

TropPoint TropPoint::normalized() const { return shifted(-coords_[0]); }

TropPoint TropPoint::shifted(double lambda) const {
  std::vector<double> c(coords_);
  for (double& x : c) x += lambda;
  return TropPoint(std::move(c));
}

double trop_distance(const TropPoint& v, const TropPoint& w) {
  if (v.dim() != w.dim())
    throw std::invalid_argument("trop_distance: dimension mismatch");
  // max_i (v_i - w_i) + max_j (w_j - v_j), equal to the pairwise form.
  double hi = v[0] - w[0];
  double lo = hi;
  for (int i = 1; i < v.dim(); ++i) {
    const double d = v[i] - w[i];
    hi = std::max(hi, d);
    lo = std::min(lo, d);
  }
  return hi - lo;
}

TropMatrix::TropMatrix(int rows, int cols, TropScalar fill)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("TropMatrix: negative shape");
  data_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill);
}

TropMatrix TropMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("TropMatrix: no rows");
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows[0].size());
  TropMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
      throw std::invalid_argument("TropMatrix: ragged rows");
    for (int j = 0; j < c; ++j)
      m.set(i, j, TropScalar(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]));
  }
  return m;
}

TropMatrix TropMatrix::from_points(std::span<const TropPoint> pts) {
  if (pts.empty()) throw std::invalid_argument("TropMatrix: no points");
  const int c = pts[0].dim();
  TropMatrix m(static_cast<int>(pts.size()), c);
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const TropPoint& p = pts[static_cast<size_t>(i)];
    if (p.dim() != c)
      throw std::invalid_argument("TropMatrix: mixed point dimensions");
    for (int j = 0; j < c; ++j) m.set(i, j, TropScalar(p[j]));
  }
  return m;
}

TropMatrix TropMatrix::identity(int n) {
  TropMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, TropScalar(0.0));
  return m;
}

bool TropMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const TropScalar& s) { return s.finite(); });
}

TropPoint TropMatrix::row_point(int i) const {
  std::vector<double> c(static_cast<size_t>(cols_));
  for (int j = 0; j < cols_; ++j) c[static_cast<size_t>(j)] = at(i, j).value();
  return TropPoint(std::move(c));
}

TropMatrix TropMatrix::transposed() const {
  TropMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

TropMatrix TropMatrix::select_columns(std::span<const int> cols) const {
  TropMatrix s(rows_, static_cast<int>(cols.size()));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
      s.set(i, j, at(i, cols[static_cast<size_t>(j)]));
  return s;
}

TropMatrix TropMatrix::drop_row(int row) const {
  TropMatrix s(rows_ - 1, cols_);
  for (int i = 0, k = 0; i < rows_; ++i) {
    if (i == row) continue;
    for (int j = 0; j < cols_; ++j) s.set(k, j, at(i, j));
    ++k;
  }
  return s;
}

TropMatrix trop_matmul(const TropMatrix& a, const TropMatrix& c) {
  if (a.cols() != c.rows())
    throw std::invalid_argument("trop_matmul: shape mismatch");
  TropMatrix out(a.rows(), c.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) {
      TropScalar acc = TropScalar::neg_inf();
      for (int l = 0; l < a.cols(); ++l)
        acc = oplus(acc, otimes(a.at(i, l), c.at(l, j)));
      out.set(i, j, acc);
    }
  }
  return out;
}

namespace {

void require_square_with_finite_rows(const TropMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("trop_det: matrix must be square");
  for (int i = 0; i < a.rows(); ++i) {
    bool any = false;
    for (int j = 0; j < a.cols(); ++j) any = any || a.at(i, j).finite();
    if (!any)
      throw DegenerateMatrixError("trop_det: row " + std::to_string(i) +
                                  " has no finite entry");
  }
}

// Direct enumeration for tiny sizes; cheaper than the general solver and
// exercised constantly by the Pluecker builders.
detail::MaxAssignment tiny_max_assignment(const TropMatrix& a, int forbid_row,
                                          int forbid_col) {
  const int n = a.rows();
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  detail::MaxAssignment best;
  do {
    double total = 0.0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const int j = perm[static_cast<size_t>(i)];
      if (i == forbid_row && j == forbid_col) ok = false;
      else if (a.at(i, j).is_neg_inf()) ok = false;
      else total += a.at(i, j).value();
    }
    if (ok && (!best.feasible || total > best.value)) {
      best.feasible = true;
      best.value = total;
      best.perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

detail::MaxAssignment max_assignment(const TropMatrix& a, int forbid_row = -1,
                                     int forbid_col = -1) {
  if (a.rows() <= 4) return tiny_max_assignment(a, forbid_row, forbid_col);
  return detail::solve_max_assignment(a, forbid_row, forbid_col);
}

}  // namespace

double trop_det_value(const TropMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("trop_det_value: matrix must be square");
  if (a.rows() == 1) {
    if (a.at(0, 0).is_neg_inf())
      throw DegenerateMatrixError("trop_det_value: 1x1 -inf matrix");
    return a.at(0, 0).value();
  }
  require_square_with_finite_rows(a);
  const detail::MaxAssignment best = max_assignment(a);
  if (!best.feasible)
    throw DegenerateMatrixError("trop_det_value: no finite permutation");
  return best.value;
}

AssignmentResult trop_det(const TropMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("trop_det: matrix must be square");
  if (a.rows() < 2)
    throw std::invalid_argument("trop_det: second-best needs size >= 2");
  require_square_with_finite_rows(a);

  const detail::MaxAssignment best = max_assignment(a);
  if (!best.feasible)
    throw DegenerateMatrixError("trop_det: no finite permutation");

  // Every permutation other than the optimum disagrees with it somewhere,
  // so forbidding one optimal arc at a time sweeps all of them.
  detail::MaxAssignment second;
  for (int i = 0; i < a.rows(); ++i) {
    const detail::MaxAssignment cand =
        max_assignment(a, i, best.perm[static_cast<size_t>(i)]);
    if (cand.feasible && (!second.feasible || cand.value > second.value))
      second = cand;
  }
  if (!second.feasible)
    throw DegenerateMatrixError("trop_det: no second finite permutation");

  AssignmentResult r;
  r.best_value = best.value;
  r.best_perm = best.perm;
  r.second_value = second.value;
  r.second_perm = second.perm;
  return r;
}

double trop_volume(const TropMatrix& a) {
  if (!a.all_finite())
    throw std::invalid_argument("trop_volume: entries must be finite");
  const AssignmentResult r = trop_det(a);
  return r.best_value - r.second_value;
}

bool is_trop_singular(const TropMatrix& a, double tol) {
  const AssignmentResult r = trop_det(a);
  return r.best_value - r.second_value <= tol;
}

bool is_metric(const TropMatrix& d, double tol) {
  if (d.rows() != d.cols())
    throw std::invalid_argument("is_metric: matrix must be square");
  const int m = d.rows();
  for (int i = 0; i < m; ++i) {
    if (d.at(i, i).is_neg_inf() || std::abs(d.at(i, i).value()) > tol)
      throw std::invalid_argument("is_metric: diagonal must be zero");
    for (int j = 0; j < m; ++j) {
      if (d.at(i, j).is_neg_inf())
        throw std::invalid_argument("is_metric: entries must be finite");
      if (std::abs(d.at(i, j).value() - d.at(j, i).value()) > tol)
        throw std::invalid_argument("is_metric: matrix must be symmetric");
    }
  }
  TropMatrix neg(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) neg.set(i, j, TropScalar(-d.at(i, j).value()));
  const TropMatrix sq = trop_matmul(neg, neg);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (std::abs(sq.at(i, j).value() - neg.at(i, j).value()) > tol)
        return false;
  return true;
}

}  // namespace tropca
