#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tropca/fitting.hpp"
#include "tropca/linspace.hpp"
#include "tropca/phylo.hpp"
#include "tropca/polytope.hpp"
#include "tropca/rng.hpp"
#include "tropca/simulate.hpp"

using namespace tropca;

namespace {

const TropMatrix kFourPoints = TropMatrix::from_rows(
    {{0, -2, -2}, {0, -1, 2}, {0, 2, -1}, {0, 2, 2}});

const TropMatrix kGapPoints = TropMatrix::from_rows(
    {{0, -1, -3}, {0, 2, -2}, {0, 3, 1}, {0, -3, -1}});

// total distance of the best line over an apex grid, three coordinates
double apex_grid_best(const TropMatrix& pts, double lo, double hi, double step) {
  double best = std::numeric_limits<double>::infinity();
  const int cells = static_cast<int>(std::lround((hi - lo) / step));
  for (int ia = 0; ia <= cells; ++ia) {
    const double a = lo + ia * step;
    for (int ib = 0; ib <= cells; ++ib) {
      const double b = lo + ib * step;
      double total = 0.0;
      for (int r = 0; r < pts.rows(); ++r) {
        const double v0 = pts.at(r, 0).value();
        const double v1 = pts.at(r, 1).value() - a;
        const double v2 = pts.at(r, 2).value() - b;
        double m0 = v0, m1;
        if (v1 > m0) {
          m1 = m0;
          m0 = v1;
        } else {
          m1 = v1;
        }
        if (v2 > m0) {
          m1 = m0;
          m0 = v2;
        } else if (v2 > m1) {
          m1 = v2;
        }
        total += m0 - m1;
      }
      best = std::min(best, total);
    }
  }
  return best;
}

std::vector<TropPoint> matrix_points(const TropMatrix& m) {
  std::vector<TropPoint> out;
  for (int i = 0; i < m.rows(); ++i) out.push_back(m.row_point(i));
  return out;
}

}  // namespace

TEST_CASE("exact hyperplane fit equals the volume on the worked triple") {
  const TropMatrix rows =
      TropMatrix::from_rows({{0, -2, -2}, {0, -1, 2}, {0, 2, -1}});
  const auto [h, dist] = best_fit_hyperplane_exact(rows);
  CHECK(dist == doctest::Approx(4.0));
  CHECK(dist == doctest::Approx(trop_volume(rows)));
  int on = 0;
  for (int i = 0; i < 3; ++i)
    if (h.gap(rows.row_point(i)) <= 1e-9) ++on;
  CHECK(on == 2);  // spanned by two of the points
}

TEST_CASE("points already on a line fit exactly") {
  // third row is a tropical combination of the first two
  const TropMatrix rows =
      TropMatrix::from_rows({{0, 1, 2}, {0, -1, 3}, {1, 2, 4}});
  REQUIRE(is_trop_singular(rows));
  const auto [h, dist] = best_fit_hyperplane_exact(rows);
  CHECK(dist <= 1e-9);
  for (int i = 0; i < 3; ++i) CHECK(h.gap(rows.row_point(i)) <= 1e-9);
}

TEST_CASE("exact fit distance equals the volume at random") {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const int e = 3 + rng.uniform_index(3);
    const TropMatrix pts = oracles::random_matrix(rng, e, e, -3, 3);
    const auto [h, dist] = best_fit_hyperplane_exact(pts);
    CHECK(dist == doctest::Approx(trop_volume(pts)).epsilon(1e-9));
    double recomputed = 0.0;
    for (int i = 0; i < e; ++i) recomputed += h.gap(pts.row_point(i));
    CHECK(recomputed == doctest::Approx(dist).epsilon(1e-12));
  }
}

TEST_CASE("exact fit matches the apex grid on small instances") {
  Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    const TropMatrix pts = oracles::random_matrix(rng, 3, 3, -1.5, 1.5);
    const auto [h, dist] = best_fit_hyperplane_exact(pts);
    const double grid = apex_grid_best(pts, -6.0, 6.0, 0.01);
    CHECK(std::abs(grid - dist) <= 0.02);
  }
}

TEST_CASE("four-point gap: subset volumes undershoot the grid optimum") {
  // best three-row volume is 2, yet the best line costs 3
  double best_subset = 0.0;
  for (int skip = 0; skip < 4; ++skip)
    best_subset = std::max(best_subset, trop_volume(kGapPoints.drop_row(skip)));
  CHECK(best_subset == doctest::Approx(2.0));

  const double grid = apex_grid_best(kGapPoints, -6.0, 6.0, 0.01);
  CHECK(grid == doctest::Approx(3.0).epsilon(0.01));

  // no line through two data points beats the free optimum
  double best_pair = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const TropMatrix two = TropMatrix::from_rows(
          {matrix_points(kGapPoints)[static_cast<size_t>(i)].coords(),
           matrix_points(kGapPoints)[static_cast<size_t>(j)].coords()});
      const TropHyperplane h = hyperplane_from_points(two);
      double total = 0.0;
      for (int r = 0; r < 4; ++r) total += h.gap(kGapPoints.row_point(r));
      best_pair = std::min(best_pair, total);
    }
  }
  CHECK(best_pair >= grid - 0.02);
  // the optimum cost strictly exceeds every three-row volume, so the
  // volume construction does not extend past n == e
  CHECK(best_subset < best_pair - 0.5);
}

TEST_CASE("restriction to data points can be suboptimal") {
  // zeroth-order fit: the free minimizer attains 7, no data point does
  const std::vector<TropPoint> pts = {
      TropPoint({0, -2, -2}), TropPoint({0, -1, 2}), TropPoint({0, 2, -1})};
  const double free_opt = fermat_weber(pts).second;
  double best_data = std::numeric_limits<double>::infinity();
  for (const TropPoint& c : pts) {
    double total = 0.0;
    for (const TropPoint& p : pts) total += trop_distance(c, p);
    best_data = std::min(best_data, total);
  }
  CHECK(free_opt == doctest::Approx(7.0).epsilon(1e-6));
  CHECK(best_data == doctest::Approx(8.0));
  CHECK(best_data > free_opt + 0.5);
}

TEST_CASE("fermat-weber point of the worked triple") {
  const std::vector<TropPoint> pts = {
      TropPoint({0, -2, -2}), TropPoint({0, -1, 2}), TropPoint({0, 2, -1})};
  const auto [x, value] = fermat_weber(pts);
  CHECK(value == doctest::Approx(7.0).epsilon(1e-6));
  double attained = 0.0;
  for (const TropPoint& p : pts) attained += trop_distance(x, p);
  CHECK(attained == doctest::Approx(value).epsilon(1e-9));
  // the known witness achieves the same value
  double witness = 0.0;
  for (const TropPoint& p : pts) witness += trop_distance(TropPoint({0, -1, -1}), p);
  CHECK(witness == doctest::Approx(7.0));
}

TEST_CASE("fermat-weber reduces to the data for one point") {
  const auto [x, value] = fermat_weber(std::vector<TropPoint>{TropPoint({3, 5, 1})});
  CHECK(value == 0.0);
  CHECK(trop_distance(x, TropPoint({3, 5, 1})) <= 1e-12);
}

TEST_CASE("fermat-weber matches a grid search") {
  Rng rng(23);
  for (int t = 0; t < 25; ++t) {
    std::vector<TropPoint> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(oracles::random_point(rng, 3, -2, 2));
    const auto [x, value] = fermat_weber(pts);
    double grid = std::numeric_limits<double>::infinity();
    for (double a = -3.0; a <= 3.0; a += 0.005) {
      for (double b = -3.0; b <= 3.0; b += 0.005) {
        double total = 0.0;
        for (const TropPoint& p : pts)
          total += trop_distance(TropPoint({0, a, b}), p);
        grid = std::min(grid, total);
      }
    }
    CHECK(value <= grid + 1e-9);
    CHECK(grid <= value + 1e-2);
  }
}

TEST_CASE("fermat-weber of identical points is that point") {
  const std::vector<TropPoint> pts(4, TropPoint({1, 2, 3, 4}));
  const auto [x, value] = fermat_weber(pts);
  CHECK(value <= 1e-9);
  CHECK(trop_distance(x, pts[0]) <= 1e-9);
}

TEST_CASE("stiefel pca keeps generators at distance zero") {
  Rng rng(24);
  std::vector<TropPoint> data;
  for (int i = 0; i < 3; ++i) data.push_back(oracles::random_point(rng, 6, -3, 3));
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::enumerate;
  const FitResult r = fit_stiefel_pca(data, 3, cfg);
  CHECK(r.total_distance <= 1e-9);
  CHECK(r.generating_indices == std::vector<int>{0, 1, 2});
  CHECK(r.converged);
}

TEST_CASE("data-spanned lines respect the volume lower bound") {
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::enumerate;
  const auto data = matrix_points(kFourPoints);
  const FitResult r = fit_stiefel_pca(data, 2, cfg);
  // any line is at least tropical-volume-far from the four points
  CHECK(r.total_distance >= 4.0 - 1e-9);
  CHECK(r.iterations_run == 6);  // C(4,2)
}

TEST_CASE("sampling never beats enumeration") {
  Rng rng(25);
  std::vector<TropPoint> data;
  for (int i = 0; i < 15; ++i) data.push_back(oracles::random_point(rng, 6, -4, 4));
  SearchConfig enum_cfg;
  enum_cfg.mode = SearchConfig::Mode::enumerate;
  SearchConfig sample_cfg;
  sample_cfg.mode = SearchConfig::Mode::sample;
  sample_cfg.convergence_window = 40;
  sample_cfg.rng_seed = 99;
  const FitResult full = fit_stiefel_pca(data, 3, enum_cfg);
  const FitResult sampled = fit_stiefel_pca(data, 3, sample_cfg);
  CHECK(sampled.total_distance >= full.total_distance - 1e-12);
  CHECK(full.converged);
}

TEST_CASE("polytope pca finds covering triples") {
  Rng rng(26);
  std::vector<TropPoint> verts;
  for (int i = 0; i < 3; ++i) verts.push_back(oracles::random_point(rng, 4, -3, 3));
  std::vector<TropPoint> data = verts;
  for (int i = 0; i < 5; ++i) {
    std::vector<double> c(4, -std::numeric_limits<double>::infinity());
    for (const TropPoint& v : verts) {
      const double a = rng.uniform01() * 4 - 2;
      for (int t = 0; t < 4; ++t)
        c[static_cast<size_t>(t)] = std::max(c[static_cast<size_t>(t)], a + v[t]);
    }
    data.emplace_back(c);
  }
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::enumerate;
  const FitResult r = fit_polytope_pca(data, 3, cfg);
  CHECK(r.total_distance <= 1e-9);
  CHECK(r.proportion_r == doctest::Approx(1.0));
}

TEST_CASE("six tree vectors: enumeration equals the triple scan") {
  const std::vector<TropPoint> six = {
      TropPoint({0.69089925, 7.022836, 7.022836}),
      TropPoint({0.53495974, 1.641369, 1.641369}),
      TropPoint({0.02082164, 3.101557, 3.101557}),
      TropPoint({0.23519336, 3.968678, 3.968678}),
      TropPoint({0.19730562, 5.960980, 5.960980}),
      TropPoint({0.73804678, 1.090399, 1.090399})};
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::enumerate;
  const FitResult r = fit_polytope_pca(six, 3, cfg);
  CHECK(r.iterations_run == 20);  // C(6,3)
  double manual = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) {
        const TropPolytope p(std::vector<TropPoint>{six[static_cast<size_t>(a)],
                                                    six[static_cast<size_t>(b)],
                                                    six[static_cast<size_t>(c)]});
        manual = std::min(manual, hull_distance_serial(p, six));
      }
  CHECK(r.total_distance == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("stiefel dominates the polytope on the same generators") {
  Rng rng(27);
  for (int t = 0; t < 30; ++t) {
    std::vector<TropPoint> data;
    for (int i = 0; i < 8; ++i) data.push_back(oracles::random_point(rng, 5, -4, 4));
    std::vector<TropPoint> gens(data.begin(), data.begin() + 3);
    const TropLinearSpace l = stiefel_space(TropMatrix::from_points(gens));
    const TropPolytope p(gens);
    CHECK(linspace_distance_sum(l, data) <= hull_distance(p, data) + 1e-9);
  }
}

TEST_CASE("proportion of variance edge cases") {
  Rng rng(28);
  std::vector<TropPoint> data;
  for (int i = 0; i < 5; ++i) data.push_back(oracles::random_point(rng, 3, -3, 3));
  // perfect fit with non-identical projections
  CHECK(proportion_of_variance(data, data) == doctest::Approx(1.0));
  // all projections identical
  const std::vector<TropPoint> collapsed(5, TropPoint({0, 1, 2}));
  CHECK(proportion_of_variance(data, collapsed) == doctest::Approx(0.0));

  // denominator identity on a fitted instance
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::enumerate;
  const FitResult r = fit_polytope_pca(data, 3, cfg);
  const TropPoint pibar = fermat_weber(r.projections).first;
  double num = 0.0, resid = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    num += trop_distance(pibar, r.projections[i]);
    resid += trop_distance(data[i], r.projections[i]);
  }
  if (num + resid > 0)
    CHECK(r.proportion_r == doctest::Approx(num / (num + resid)).epsilon(1e-9));
  CHECK(r.proportion_r >= 0.0);
  CHECK(r.proportion_r <= 1.0);
}

TEST_CASE("sample mode is deterministic and monotone") {
  Rng rng(29);
  std::vector<TropPoint> data;
  for (int i = 0; i < 12; ++i) data.push_back(oracles::random_point(rng, 4, -4, 4));
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::sample;
  cfg.convergence_window = 30;
  cfg.rng_seed = 1234;
  const FitResult a = fit_polytope_pca(data, 3, cfg);
  const FitResult b = fit_polytope_pca(data, 3, cfg);
  CHECK(a.total_distance == b.total_distance);
  CHECK(a.generating_indices == b.generating_indices);
  CHECK(a.iterations_run == b.iterations_run);
  CHECK(a.proportion_r == b.proportion_r);
  for (size_t i = 1; i < a.incumbent_history.size(); ++i)
    CHECK(a.incumbent_history[i] <= a.incumbent_history[i - 1] + 1e-15);
  CHECK(a.converged);

  cfg.max_iterations = 5;  // cap reached before the window closes
  const FitResult c = fit_polytope_pca(data, 3, cfg);
  CHECK_FALSE(c.converged);
  CHECK(c.iterations_run == 5);
}

TEST_CASE("enumerate mode matches its serial reference") {
  Rng rng(30);
  std::vector<TropPoint> data;
  for (int i = 0; i < 10; ++i) data.push_back(oracles::random_point(rng, 5, -3, 3));
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::enumerate;
  const FitResult par_s = fit_stiefel_pca(data, 3, cfg);
  const FitResult ser_s = fit_stiefel_pca_enumerate_serial(data, 3);
  CHECK(par_s.total_distance == ser_s.total_distance);
  CHECK(par_s.generating_indices == ser_s.generating_indices);
  const FitResult par_p = fit_polytope_pca(data, 3, cfg);
  const FitResult ser_p = fit_polytope_pca_enumerate_serial(data, 3);
  CHECK(par_p.total_distance == ser_p.total_distance);
  CHECK(par_p.generating_indices == ser_p.generating_indices);
}

TEST_CASE("fit preconditions") {
  std::vector<TropPoint> data = {TropPoint({0, 1, 2}), TropPoint({0, 2, 1})};
  SearchConfig cfg;
  CHECK_THROWS_AS(fit_polytope_pca(data, 3, cfg), std::invalid_argument);
  CHECK_THROWS_AS(fit_polytope_pca(data, 1, cfg), std::invalid_argument);
  cfg.convergence_window = 0;
  data.push_back(TropPoint({1, 0, 0}));
  CHECK_THROWS_AS(fit_polytope_pca(data, 3, cfg), std::invalid_argument);
  // a rank-3 span needs more than three coordinates
  SearchConfig ok;
  CHECK_THROWS_AS(fit_stiefel_pca(data, 3, ok), std::invalid_argument);
}
