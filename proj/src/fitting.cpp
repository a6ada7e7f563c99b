#include "tropca/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

#include "simplex.hpp"
#include "tropca/rng.hpp"

namespace tropca {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::pair<TropHyperplane, double> best_fit_hyperplane_exact(
    const TropMatrix& points) {
  const int e = points.cols();
  if (points.rows() != e)
    throw std::invalid_argument("best_fit_hyperplane_exact: need e x e");
  if (!points.all_finite())
    throw std::invalid_argument("best_fit_hyperplane_exact: finite entries only");

  const AssignmentResult det = trop_det(points);
  std::vector<int> inv(static_cast<size_t>(e));
  for (int k = 0; k < e; ++k)
    inv[static_cast<size_t>(det.best_perm[static_cast<size_t>(k)])] = k;

  // With rows reordered so the best permutation is the identity, the
  // runner-up moves some index; drop the lowest such row and span the rest.
  int drop = -1;
  for (int j = 0; j < e; ++j) {
    const int row = inv[static_cast<size_t>(j)];
    if (det.second_perm[static_cast<size_t>(row)] != j) {
      drop = row;
      break;
    }
  }
  if (drop < 0)
    throw std::logic_error("best_fit_hyperplane_exact: identical permutations");

  const TropHyperplane h = hyperplane_from_points(points.drop_row(drop));
  std::vector<double> per(static_cast<size_t>(e));
  for (int i = 0; i < e; ++i)
    per[static_cast<size_t>(i)] = h.gap(points.row_point(i));
  double total = 0.0;
  for (double g : per) total += g;
  return {h, total};
}

namespace {

struct FwCut {
  int i, k, l;  // delta_i >= (x_k - x_l) - (d_i(k) - d_i(l))
  auto operator<=>(const FwCut&) const = default;
};

// Maximizing ordered pair of (x - d_i); defines both the distance and the
// next cut.
FwCut arg_pair(const TropPoint& x, const TropPoint& di, int i) {
  int k = 0, l = 0;
  double hi = x[0] - di[0], lo = hi;
  for (int t = 1; t < x.dim(); ++t) {
    const double v = x[t] - di[t];
    if (v > hi) {
      hi = v;
      k = t;
    }
    if (v < lo) {
      lo = v;
      l = t;
    }
  }
  return {i, k, l};
}

}  // namespace

std::pair<TropPoint, double> fermat_weber(std::span<const TropPoint> points) {
  if (points.empty())
    throw std::invalid_argument("fermat_weber: empty input");
  const int e = points[0].dim();
  for (const TropPoint& p : points)
    if (p.dim() != e)
      throw std::invalid_argument("fermat_weber: dimension mismatch");
  const int n = static_cast<int>(points.size());
  if (n == 1) return {points[0].normalized(), 0.0};

  // Variables: delta_0..delta_{n-1}, then p_k, q_k for k = 1..e-1 with
  // x_k = p_k - q_k and x_0 = 0.
  const int nvars = n + 2 * (e - 1);
  std::vector<double> cost(static_cast<size_t>(nvars), 0.0);
  for (int i = 0; i < n; ++i) cost[static_cast<size_t>(i)] = 1.0;

  auto cut_row = [&](const FwCut& c) {
    std::vector<double> row(static_cast<size_t>(nvars), 0.0);
    row[static_cast<size_t>(c.i)] = 1.0;
    if (c.k > 0) {
      row[static_cast<size_t>(n + 2 * (c.k - 1))] -= 1.0;
      row[static_cast<size_t>(n + 2 * (c.k - 1) + 1)] += 1.0;
    }
    if (c.l > 0) {
      row[static_cast<size_t>(n + 2 * (c.l - 1))] += 1.0;
      row[static_cast<size_t>(n + 2 * (c.l - 1) + 1)] -= 1.0;
    }
    return row;
  };
  auto cut_rhs = [&](const FwCut& c) {
    const TropPoint& d = points[static_cast<size_t>(c.i)];
    return d[c.l] - d[c.k];
  };

  std::vector<FwCut> cuts;
  std::set<FwCut> seen;
  const TropPoint origin(std::vector<double>(static_cast<size_t>(e), 0.0));
  for (int i = 0; i < n; ++i) {
    const FwCut c = arg_pair(origin, points[static_cast<size_t>(i)], i);
    if (c.k != c.l && seen.insert(c).second) cuts.push_back(c);
  }
  if (cuts.empty()) {  // all points are multiples of 1: x = 0 is optimal
    return {origin, 0.0};
  }

  std::vector<double> xbest(static_cast<size_t>(e), 0.0);
  const int max_rounds = 200;
  for (int round = 0; round < max_rounds; ++round) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(cuts.size());
    for (const FwCut& c : cuts) {
      a.push_back(cut_row(c));
      b.push_back(cut_rhs(c));
    }
    const detail::LpResult lp = detail::solve_min_ge(a, b, cost);
    if (!lp.optimal)
      throw std::runtime_error("fermat_weber: LP solve failed");

    std::vector<double> x(static_cast<size_t>(e), 0.0);
    for (int k = 1; k < e; ++k)
      x[static_cast<size_t>(k)] = lp.x[static_cast<size_t>(n + 2 * (k - 1))] -
                                  lp.x[static_cast<size_t>(n + 2 * (k - 1) + 1)];
    xbest = x;
    const TropPoint xp(x);

    // Cuts only accumulate, so the loop terminates: the pool of ordered
    // pairs per point is finite.
    bool added = false;
    for (int i = 0; i < n; ++i) {
      const double truth = trop_distance(xp, points[static_cast<size_t>(i)]);
      if (truth > lp.x[static_cast<size_t>(i)] + 1e-9) {
        const FwCut c = arg_pair(xp, points[static_cast<size_t>(i)], i);
        if (seen.insert(c).second) {
          cuts.push_back(c);
          added = true;
        }
      }
    }
    if (!added) break;
  }

  const TropPoint xp(xbest);
  double value = 0.0;
  for (const TropPoint& p : points) value += trop_distance(xp, p);
  return {xp, value};
}

double proportion_of_variance(std::span<const TropPoint> data,
                              std::span<const TropPoint> projections) {
  if (data.empty() || data.size() != projections.size())
    throw std::invalid_argument("proportion_of_variance: length mismatch");
  const TropPoint pibar = fermat_weber(projections).first;
  double num = 0.0, resid = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    num += trop_distance(pibar, projections[i]);
    resid += trop_distance(data[i], projections[i]);
  }
  const double den = num + resid;
  if (den <= 1e-15) return 0.0;
  return std::clamp(num / den, 0.0, 1.0);
}

namespace {

// Total model distance of the tuple of data points at the given indices.
double eval_tuple_stiefel(std::span<const TropPoint> data,
                          std::span<const int> idx, bool parallel) {
  std::vector<TropPoint> gen;
  gen.reserve(idx.size());
  for (int i : idx) gen.push_back(data[static_cast<size_t>(i)]);
  const TropLinearSpace l = stiefel_space(TropMatrix::from_points(gen));
  return parallel ? linspace_distance_sum(l, data)
                  : linspace_distance_sum_serial(l, data);
}

double eval_tuple_polytope(std::span<const TropPoint> data,
                           std::span<const int> idx, bool parallel) {
  std::vector<TropPoint> gen;
  gen.reserve(idx.size());
  for (int i : idx) gen.push_back(data[static_cast<size_t>(i)]);
  const TropPolytope p(std::move(gen));
  return parallel ? hull_distance(p, data) : hull_distance_serial(p, data);
}

FitResult finish_fit(std::span<const TropPoint> data, std::vector<int> idx,
                     bool stiefel, long iterations, bool converged) {
  std::vector<TropPoint> gen;
  gen.reserve(idx.size());
  for (int i : idx) gen.push_back(data[static_cast<size_t>(i)]);

  FitResult r;
  if (stiefel) {
    TropLinearSpace l = stiefel_space(TropMatrix::from_points(gen));
    r.projections = blue_project_many(l, data);
    r.model = std::move(l);
  } else {
    TropPolytope p(std::move(gen));
    r.projections = project_many(p, data);
    r.model = std::move(p);
  }
  r.generating_indices = std::move(idx);
  r.per_point_distance.resize(data.size());
  for (size_t i = 0; i < data.size(); ++i)
    r.per_point_distance[i] = trop_distance(data[i], r.projections[i]);
  r.total_distance = 0.0;
  for (double d : r.per_point_distance) r.total_distance += d;
  r.proportion_r = proportion_of_variance(data, r.projections);
  r.iterations_run = iterations;
  r.converged = converged;
  return r;
}

FitResult fit_enumerate(std::span<const TropPoint> data, int s, bool stiefel,
                        bool parallel) {
  const int n = static_cast<int>(data.size());
  const SubsetIndexer tuples(n, s);
  const std::int64_t total = static_cast<std::int64_t>(tuples.size());

  double best_dist = kInf;
  std::int64_t best_rank = -1;

  if (parallel) {
#pragma omp parallel
    {
      double loc_dist = kInf;
      std::int64_t loc_rank = -1;
      std::vector<int> idx(static_cast<size_t>(s));
#pragma omp for schedule(dynamic, 16) nowait
      for (std::int64_t r = 0; r < total; ++r) {
        tuples.unrank(static_cast<std::uint64_t>(r), idx);
        const double d = stiefel ? eval_tuple_stiefel(data, idx, false)
                                 : eval_tuple_polytope(data, idx, false);
        if (d < loc_dist || (d == loc_dist && r < loc_rank)) {
          loc_dist = d;
          loc_rank = r;
        }
      }
#pragma omp critical
      {
        if (loc_rank >= 0 &&
            (loc_dist < best_dist ||
             (loc_dist == best_dist && loc_rank < best_rank))) {
          best_dist = loc_dist;
          best_rank = loc_rank;
        }
      }
    }
  } else {
    std::vector<int> idx(static_cast<size_t>(s));
    for (std::int64_t r = 0; r < total; ++r) {
      tuples.unrank(static_cast<std::uint64_t>(r), idx);
      const double d = stiefel ? eval_tuple_stiefel(data, idx, false)
                               : eval_tuple_polytope(data, idx, false);
      if (d < best_dist) {
        best_dist = d;
        best_rank = r;
      }
    }
  }

  std::vector<int> idx(static_cast<size_t>(s));
  tuples.unrank(static_cast<std::uint64_t>(best_rank), idx);
  return finish_fit(data, idx, stiefel, total, true);
}

FitResult fit_sample(std::span<const TropPoint> data, int s, bool stiefel,
                     const SearchConfig& cfg) {
  const int n = static_cast<int>(data.size());
  Rng rng(cfg.rng_seed);

  std::vector<int> incumbent(static_cast<size_t>(s));
  for (int i = 0; i < s; ++i) incumbent[static_cast<size_t>(i)] = i;
  double inc_dist = stiefel ? eval_tuple_stiefel(data, incumbent, true)
                            : eval_tuple_polytope(data, incumbent, true);

  long iters = 0;
  int no_improve = 0;
  std::vector<double> history;
  while (iters < cfg.max_iterations && no_improve < cfg.convergence_window) {
    const std::vector<int> prop = rng.sample_without_replacement(n, s);
    const double d = stiefel ? eval_tuple_stiefel(data, prop, true)
                             : eval_tuple_polytope(data, prop, true);
    ++iters;
    if (d < inc_dist) {
      inc_dist = d;
      incumbent = prop;
      no_improve = 0;
    } else {
      ++no_improve;  // ties keep the incumbent
    }
    history.push_back(inc_dist);
  }

  FitResult r = finish_fit(data, incumbent, stiefel, iters,
                           no_improve >= cfg.convergence_window);
  r.incumbent_history = std::move(history);
  return r;
}

FitResult fit_dispatch(std::span<const TropPoint> data, int s, bool stiefel,
                       const SearchConfig& cfg) {
  const int n = static_cast<int>(data.size());
  if (s < 2) throw std::invalid_argument("fit: s must be >= 2");
  if (n < s) throw std::invalid_argument("fit: fewer data points than s");
  if (cfg.convergence_window < 1)
    throw std::invalid_argument("fit: convergence_window must be >= 1");
  if (stiefel && s >= data[0].dim())
    throw std::invalid_argument("fit: Stiefel rank must be below the dimension");
  if (cfg.mode == SearchConfig::Mode::enumerate)
    return fit_enumerate(data, s, stiefel, true);
  return fit_sample(data, s, stiefel, cfg);
}

}  // namespace

FitResult fit_stiefel_pca(std::span<const TropPoint> data, int s,
                          const SearchConfig& cfg) {
  return fit_dispatch(data, s, true, cfg);
}

FitResult fit_polytope_pca(std::span<const TropPoint> data, int s,
                           const SearchConfig& cfg) {
  return fit_dispatch(data, s, false, cfg);
}

FitResult fit_stiefel_pca_enumerate_serial(std::span<const TropPoint> data,
                                           int s) {
  return fit_enumerate(data, s, true, false);
}

FitResult fit_polytope_pca_enumerate_serial(std::span<const TropPoint> data,
                                            int s) {
  return fit_enumerate(data, s, false, false);
}

}  // namespace tropca
