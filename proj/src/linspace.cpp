#include "tropca/linspace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tropca {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SubsetIndexer::SubsetIndexer(int e, int d) : e_(e), d_(d) {
  if (e < 1 || d < 1 || d > e)
    throw std::invalid_argument("SubsetIndexer: need 1 <= d <= e");
  choose_cols_ = d + 2;
  choose_.assign(static_cast<size_t>(e + 1) * static_cast<size_t>(choose_cols_),
                 0);
  for (int n = 0; n <= e; ++n) {
    for (int k = 0; k <= std::min(n, d + 1); ++k) {
      std::uint64_t v;
      if (k == 0) {
        v = 1;
      } else {
        v = choose_[static_cast<size_t>(n - 1) * choose_cols_ + k - 1] +
            choose_[static_cast<size_t>(n - 1) * choose_cols_ + k];
      }
      choose_[static_cast<size_t>(n) * choose_cols_ + k] = v;
    }
  }
  size_ = binomial(e, d);
}

std::uint64_t SubsetIndexer::binomial(int n, int k) const {
  if (k < 0 || k > n) return 0;
  return choose_[static_cast<size_t>(n) * choose_cols_ + k];
}

std::uint64_t SubsetIndexer::rank(std::span<const int> subset) const {
  if (static_cast<int>(subset.size()) != d_)
    throw std::invalid_argument("SubsetIndexer::rank: wrong subset size");
  std::uint64_t r = 0;
  for (int k = 0; k < d_; ++k) {
    const int s = subset[static_cast<size_t>(k)];
    if (s < 0 || s >= e_ || (k > 0 && s <= subset[static_cast<size_t>(k - 1)]))
      throw std::invalid_argument("SubsetIndexer::rank: not increasing");
    r += binomial(s, k + 1);
  }
  return r;
}

void SubsetIndexer::unrank(std::uint64_t r, std::span<int> out) const {
  if (static_cast<int>(out.size()) != d_)
    throw std::invalid_argument("SubsetIndexer::unrank: wrong output size");
  for (int k = d_ - 1; k >= 0; --k) {
    int s = k;  // smallest candidate for position k
    while (binomial(s + 1, k + 1) <= r) ++s;
    out[static_cast<size_t>(k)] = s;
    r -= binomial(s, k + 1);
  }
}

PluckerVector::PluckerVector(int e, int d) : indexer_(e, d) {
  if (indexer_.size() > kMaxPluckerSize)
    throw std::invalid_argument("PluckerVector: C(e,d) exceeds supported size");
  values_.assign(indexer_.size(), TropScalar::neg_inf());
}

TropScalar PluckerVector::at(std::span<const int> subset) const {
  std::vector<int> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    return TropScalar::neg_inf();  // collapses below size d
  return values_[indexer_.rank(s)];
}

void PluckerVector::set(std::span<const int> subset, TropScalar v) {
  std::vector<int> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  values_[indexer_.rank(s)] = v;
}

bool PluckerVector::satisfies_exchange(double tol) const {
  const int e = indexer_.e();
  const int d = indexer_.d();
  if (d + 1 > e) return true;  // no (d+1)-subsets
  const SubsetIndexer sig(e, std::max(1, d - 1));
  const SubsetIndexer tau_idx(e, d + 1);
  std::vector<int> sigma(static_cast<size_t>(std::max(1, d - 1)));
  std::vector<int> tau(static_cast<size_t>(d + 1));
  std::vector<int> tmp;
  const bool has_sigma = d >= 2;
  const std::uint64_t n_sigma = has_sigma ? sig.size() : 1;

  for (std::uint64_t si = 0; si < n_sigma; ++si) {
    if (has_sigma) sig.unrank(si, sigma);
    for (std::uint64_t ti = 0; ti < tau_idx.size(); ++ti) {
      tau_idx.unrank(ti, tau);
      double best = -kInf, second = -kInf;
      for (int i = 0; i <= d; ++i) {
        // p(sigma u {tau_i}) + p(tau - {tau_i})
        tmp.clear();
        if (has_sigma) tmp.assign(sigma.begin(), sigma.end());
        tmp.push_back(tau[static_cast<size_t>(i)]);
        const TropScalar a = at(tmp);
        tmp.clear();
        for (int j = 0; j <= d; ++j)
          if (j != i) tmp.push_back(tau[static_cast<size_t>(j)]);
        const TropScalar b = values_[indexer_.rank(tmp)];
        if (a.is_neg_inf() || b.is_neg_inf()) continue;
        const double v = a.value() + b.value();
        if (v > best) {
          second = best;
          best = v;
        } else if (v > second) {
          second = v;
        }
      }
      if (best == -kInf) continue;  // all terms -inf: nothing to attain
      if (best - second > tol) return false;
    }
  }
  return true;
}

void PluckerVector::save(std::ostream& os) const {
  os << indexer_.e() << ' ' << indexer_.d() << '\n';
  std::vector<int> subset(static_cast<size_t>(indexer_.d()));
  for (std::uint64_t r = 0; r < indexer_.size(); ++r) {
    indexer_.unrank(r, subset);
    for (int k = 0; k < indexer_.d(); ++k)
      os << subset[static_cast<size_t>(k)] << ' ';
    const TropScalar v = values_[r];
    if (v.is_neg_inf()) {
      os << "-inf\n";
    } else {
      char buf[32];
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v.value());
      os.write(buf, ptr - buf);
      os << '\n';
    }
  }
}

PluckerVector PluckerVector::load(std::istream& is) {
  int e = 0, d = 0;
  if (!(is >> e >> d))
    throw std::runtime_error("PluckerVector::load: bad header");
  PluckerVector p(e, d);
  std::vector<int> subset(static_cast<size_t>(d));
  for (std::uint64_t r = 0; r < p.size(); ++r) {
    for (int k = 0; k < d; ++k)
      if (!(is >> subset[static_cast<size_t>(k)]))
        throw std::runtime_error("PluckerVector::load: truncated file");
    std::string tok;
    if (!(is >> tok)) throw std::runtime_error("PluckerVector::load: truncated file");
    if (tok == "-inf") {
      p.set(subset, TropScalar::neg_inf());
    } else {
      p.set(subset, TropScalar(std::stod(tok)));
    }
  }
  return p;
}

bool PluckerVector::operator==(const PluckerVector& o) const {
  return e() == o.e() && d() == o.d() && values_ == o.values_;
}

TropLinearSpace::TropLinearSpace(PluckerVector p) : plucker_(std::move(p)) {}

PluckerVector stiefel_plucker(const TropMatrix& a) {
  const int d = a.rows();
  const int e = a.cols();
  if (d >= e)
    throw std::invalid_argument("stiefel_plucker: need d < e");
  PluckerVector p(e, d);
  const SubsetIndexer& idx = p.indexer();
  std::vector<int> subset(static_cast<size_t>(d));
  for (std::uint64_t r = 0; r < idx.size(); ++r) {
    idx.unrank(r, subset);
    const TropMatrix sub = a.select_columns(subset);
    try {
      p.set_rank(r, TropScalar(trop_det_value(sub)));
    } catch (const DegenerateMatrixError&) {
      p.set_rank(r, TropScalar::neg_inf());
    }
  }
  return p;
}

TropLinearSpace stiefel_space(const TropMatrix& a) {
  return TropLinearSpace(stiefel_plucker(a));
}

bool contains(const TropLinearSpace& l, const TropPoint& x, double tol) {
  const PluckerVector& p = l.plucker();
  const int e = p.e();
  const int d = p.d();
  if (x.dim() != e)
    throw std::invalid_argument("contains: dimension mismatch");
  if (d + 1 > e) return true;
  const SubsetIndexer tau_idx(e, d + 1);
  std::vector<int> tau(static_cast<size_t>(d + 1));
  std::vector<int> rest(static_cast<size_t>(d));
  for (std::uint64_t ti = 0; ti < tau_idx.size(); ++ti) {
    tau_idx.unrank(ti, tau);
    double best = -kInf, second = -kInf;
    for (int i = 0; i <= d; ++i) {
      rest.clear();
      for (int j = 0; j <= d; ++j)
        if (j != i) rest.push_back(tau[static_cast<size_t>(j)]);
      const TropScalar pv = p.at(rest);
      if (pv.is_neg_inf()) continue;
      const double v = pv.value() + x[tau[static_cast<size_t>(i)]];
      if (v > best) {
        second = best;
        best = v;
      } else if (v > second) {
        second = v;
      }
    }
    if (best == -kInf) continue;
    if (best - second > tol) return false;
  }
  return true;
}

TropPoint blue_project(const TropLinearSpace& l, const TropPoint& u) {
  const PluckerVector& p = l.plucker();
  const int e = p.e();
  const int d = p.d();
  if (u.dim() != e)
    throw std::invalid_argument("blue_project: dimension mismatch");

  // For each (d-1)-subset tau, let q_j = p(tau u {j}) for j outside tau and
  // m = min_j (u_j - q_j). Coordinate i of the answer is the maximum of
  // q_i + m over the taus avoiding i; the inner j-range includes j = i.
  std::vector<double> w(static_cast<size_t>(e), -kInf);
  const SubsetIndexer& full = p.indexer();

  const int td = d - 1;
  std::vector<int> tau(static_cast<size_t>(std::max(td, 1)));
  std::vector<std::uint64_t> prefix(static_cast<size_t>(td + 1), 0);
  std::vector<std::uint64_t> suffix(static_cast<size_t>(td + 1), 0);
  std::vector<double> q(static_cast<size_t>(e), 0.0);
  std::vector<bool> q_finite(static_cast<size_t>(e), false);

  const SubsetIndexer tau_idx(e, std::max(td, 1));
  const std::uint64_t n_tau = td >= 1 ? tau_idx.size() : 1;

  for (std::uint64_t tr = 0; tr < n_tau; ++tr) {
    if (td >= 1) tau_idx.unrank(tr, std::span<int>(tau.data(), static_cast<size_t>(td)));
    // rank(tau u {j}) = prefix[t] + C(j, t+1) + suffix[t], with t the count
    // of tau members below j
    prefix[0] = 0;
    for (int k = 0; k < td; ++k)
      prefix[static_cast<size_t>(k + 1)] =
          prefix[static_cast<size_t>(k)] +
          full.binomial(tau[static_cast<size_t>(k)], k + 1);
    suffix[static_cast<size_t>(td)] = 0;
    for (int k = td - 1; k >= 0; --k)
      suffix[static_cast<size_t>(k)] =
          suffix[static_cast<size_t>(k + 1)] +
          full.binomial(tau[static_cast<size_t>(k)], k + 2);

    double m = kInf;
    int t = 0;
    for (int j = 0; j < e; ++j) {
      if (t < td && tau[static_cast<size_t>(t)] == j) {
        ++t;
        q_finite[static_cast<size_t>(j)] = false;
        continue;
      }
      const std::uint64_t rank =
          prefix[static_cast<size_t>(t)] + full.binomial(j, t + 1) +
          suffix[static_cast<size_t>(t)];
      const TropScalar val = p.at_rank(rank);
      if (val.is_neg_inf()) {
        q_finite[static_cast<size_t>(j)] = false;  // +inf term, never the min
        continue;
      }
      q[static_cast<size_t>(j)] = val.value();
      q_finite[static_cast<size_t>(j)] = true;
      m = std::min(m, u[j] - val.value());
    }
    if (m == kInf) continue;  // every touching Pluecker value is -inf
    for (int j = 0; j < e; ++j) {
      if (!q_finite[static_cast<size_t>(j)]) continue;
      w[static_cast<size_t>(j)] =
          std::max(w[static_cast<size_t>(j)], q[static_cast<size_t>(j)] + m);
    }
  }
  for (int i = 0; i < e; ++i) {
    if (w[static_cast<size_t>(i)] == -kInf)
      throw std::invalid_argument(
          "blue_project: all Pluecker values touching coordinate " +
          std::to_string(i) + " are -inf");
  }
  return TropPoint(std::move(w));
}

std::vector<double> red_residual(const TropLinearSpace& l, const TropPoint& u) {
  const PluckerVector& p = l.plucker();
  const int e = p.e();
  const int d = p.d();
  if (u.dim() != e)
    throw std::invalid_argument("red_residual: dimension mismatch");
  std::vector<double> v(static_cast<size_t>(e), 0.0);
  if (d + 1 > e) return v;

  const SubsetIndexer tau_idx(e, d + 1);
  std::vector<int> tau(static_cast<size_t>(d + 1));
  std::vector<int> rest(static_cast<size_t>(d));
  for (std::uint64_t ti = 0; ti < tau_idx.size(); ++ti) {
    tau_idx.unrank(ti, tau);
    double best = -kInf, second = -kInf;
    int arg = -1;
    for (int i = 0; i <= d; ++i) {
      rest.clear();
      for (int j = 0; j <= d; ++j)
        if (j != i) rest.push_back(tau[static_cast<size_t>(j)]);
      const TropScalar pv = p.at(rest);
      if (pv.is_neg_inf()) continue;
      const double val = pv.value() + u[tau[static_cast<size_t>(i)]];
      if (val > best) {
        second = best;
        best = val;
        arg = tau[static_cast<size_t>(i)];
      } else if (val > second) {
        second = val;
      }
    }
    if (arg < 0 || second == -kInf) continue;
    const double gamma = best - second;
    if (gamma > kTieTol)  // unique maximum only
      v[static_cast<size_t>(arg)] = std::max(v[static_cast<size_t>(arg)], gamma);
  }
  return v;
}

double distance_to_linspace(const TropLinearSpace& l, const TropPoint& u) {
  return trop_distance(u, blue_project(l, u));
}

std::vector<TropPoint> blue_project_many_serial(const TropLinearSpace& l,
                                                std::span<const TropPoint> pts) {
  std::vector<TropPoint> out;
  out.reserve(pts.size());
  for (const TropPoint& p : pts) out.push_back(blue_project(l, p));
  return out;
}

std::vector<TropPoint> blue_project_many(const TropLinearSpace& l,
                                         std::span<const TropPoint> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<TropPoint> out(static_cast<size_t>(n),
                             TropPoint(std::vector<double>(2, 0.0)));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = blue_project(l, pts[static_cast<size_t>(i)]);
  return out;
}

double linspace_distance_sum_serial(const TropLinearSpace& l,
                                    std::span<const TropPoint> pts) {
  std::vector<double> per(pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    per[i] = trop_distance(pts[i], blue_project(l, pts[i]));
  double total = 0.0;
  for (double d : per) total += d;
  return total;
}

double linspace_distance_sum(const TropLinearSpace& l,
                             std::span<const TropPoint> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> per(static_cast<size_t>(n), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const TropPoint& p = pts[static_cast<size_t>(i)];
    per[static_cast<size_t>(i)] = trop_distance(p, blue_project(l, p));
  }
  // deterministic accumulation order regardless of thread schedule
  double total = 0.0;
  for (double d : per) total += d;
  return total;
}

TropHyperplane::TropHyperplane(std::vector<double> normal)
    : normal_(std::move(normal)) {
  if (normal_.size() < 2)
    throw std::invalid_argument("TropHyperplane: dimension must be >= 2");
  for (double c : normal_)
    if (!std::isfinite(c))
      throw std::invalid_argument("TropHyperplane: coefficients must be finite");
}

TropHyperplane TropHyperplane::from_apex(const TropPoint& apex) {
  std::vector<double> n(static_cast<size_t>(apex.dim()));
  for (int i = 0; i < apex.dim(); ++i) n[static_cast<size_t>(i)] = -apex[i];
  return TropHyperplane(std::move(n));
}

TropPoint TropHyperplane::apex() const {
  std::vector<double> c(normal_.size());
  for (size_t i = 0; i < normal_.size(); ++i) c[i] = -normal_[i];
  return TropPoint(std::move(c)).normalized();
}

TropLinearSpace TropHyperplane::as_linear_space() const {
  const int e = dim();
  PluckerVector p(e, e - 1);
  std::vector<int> subset;
  for (int i = 0; i < e; ++i) {
    subset.clear();
    for (int j = 0; j < e; ++j)
      if (j != i) subset.push_back(j);
    p.set(subset, TropScalar(normal_[static_cast<size_t>(i)]));
  }
  return TropLinearSpace(std::move(p));
}

double TropHyperplane::gap(const TropPoint& x) const {
  if (x.dim() != dim())
    throw std::invalid_argument("TropHyperplane::gap: dimension mismatch");
  double best = -kInf, second = -kInf;
  for (int i = 0; i < dim(); ++i) {
    const double v = normal_[static_cast<size_t>(i)] + x[i];
    if (v > best) {
      second = best;
      best = v;
    } else if (v > second) {
      second = v;
    }
  }
  return best - second;
}

bool TropHyperplane::contains(const TropPoint& x, double tol) const {
  return gap(x) <= tol;
}

TropHyperplane hyperplane_from_points(const TropMatrix& a) {
  const int e = a.cols();
  if (a.rows() != e - 1)
    throw std::invalid_argument("hyperplane_from_points: need (e-1) x e");
  std::vector<double> normal(static_cast<size_t>(e));
  std::vector<int> keep;
  for (int i = 0; i < e; ++i) {
    keep.clear();
    for (int j = 0; j < e; ++j)
      if (j != i) keep.push_back(j);
    normal[static_cast<size_t>(i)] = trop_det_value(a.select_columns(keep));
  }
  return TropHyperplane(std::move(normal));
}

}  // namespace tropca
