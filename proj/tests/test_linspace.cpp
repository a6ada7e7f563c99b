#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "tropca/linspace.hpp"
#include "tropca/rng.hpp"

using namespace tropca;

namespace {

const TropMatrix kLineGens = TropMatrix::from_rows({{0, 2, 4}, {0, -1, -3}});

TropLinearSpace random_stiefel(Rng& rng, int d, int e) {
  return stiefel_space(oracles::random_matrix(rng, d, e, -4, 4));
}

}  // namespace

TEST_CASE("subset indexer ranks colexicographically") {
  const SubsetIndexer idx(6, 3);
  CHECK(idx.size() == 20);
  std::vector<int> subset(3);
  std::uint64_t r = 0;
  std::vector<std::vector<int>> seen;
  for (; r < idx.size(); ++r) {
    idx.unrank(r, subset);
    CHECK(idx.rank(subset) == r);
    seen.push_back(subset);
  }
  CHECK(seen.front() == std::vector<int>{0, 1, 2});
  CHECK(seen.back() == std::vector<int>{3, 4, 5});
  // colex: last element dominates the order
  for (size_t i = 1; i < seen.size(); ++i) {
    const auto& a = seen[i - 1];
    const auto& b = seen[i];
    CHECK(std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend()));
  }
}

TEST_CASE("pluecker size cap") {
  CHECK_THROWS_AS(PluckerVector(50, 10), std::invalid_argument);
}

TEST_CASE("stiefel pluecker of the worked 2x3 example") {
  const PluckerVector p = stiefel_plucker(kLineGens);
  CHECK(p.at(std::vector<int>{0, 1}).value() == doctest::Approx(2.0));
  CHECK(p.at(std::vector<int>{0, 2}).value() == doctest::Approx(4.0));
  CHECK(p.at(std::vector<int>{1, 2}).value() == doctest::Approx(3.0));
  CHECK(p.satisfies_exchange());
}

TEST_CASE("stiefel with one row is the row itself") {
  const TropMatrix a = TropMatrix::from_rows({{1.5, -2.0, 0.25, 7.0}});
  const PluckerVector p = stiefel_plucker(a);
  for (int i = 0; i < 4; ++i)
    CHECK(p.at(std::vector<int>{i}).value() ==
          doctest::Approx(a.at(0, i).value()));
}

TEST_CASE("stiefel pluecker matches minor enumeration") {
  Rng rng(8);
  const TropMatrix a = oracles::random_matrix(rng, 3, 6, -5, 5);
  const PluckerVector p = stiefel_plucker(a);
  const SubsetIndexer idx(6, 3);
  std::vector<int> subset(3);
  for (std::uint64_t r = 0; r < idx.size(); ++r) {
    idx.unrank(r, subset);
    const auto brute = oracles::brute_trop_det(a.select_columns(subset));
    REQUIRE(brute.has_value());
    CHECK(p.at_rank(r).value() == brute->best);
  }
  CHECK(p.satisfies_exchange());
  CHECK_THROWS_AS(stiefel_plucker(oracles::random_matrix(rng, 4, 4, 0, 1)),
                  std::invalid_argument);
}

TEST_CASE("exchange validator rejects corrupted vectors") {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const int e = 4 + rng.uniform_index(2);
    const int d = 2;
    PluckerVector p = stiefel_plucker(oracles::random_matrix(rng, d, e, -4, 4));
    CHECK(p.satisfies_exchange());
    const std::uint64_t r = rng.uniform_int(p.size());
    p.set_rank(r, TropScalar(p.at_rank(r).value() + 50.0));
    CHECK_FALSE(p.satisfies_exchange());
  }
}

TEST_CASE("blue and red rules on the worked example") {
  const TropLinearSpace l(stiefel_plucker(kLineGens));
  const TropPoint u({1, -2, 3});

  const TropPoint w = blue_project(l, u);
  REQUIRE(w.dim() == 3);
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(2.0).epsilon(1e-12));

  const std::vector<double> v = red_residual(l, u);
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(0.0));
  CHECK(v[2] == doctest::Approx(1.0));

  for (int i = 0; i < 3; ++i)
    CHECK(u[i] == doctest::Approx(w[i] + v[static_cast<size_t>(i)]).epsilon(1e-12));

  CHECK(distance_to_linspace(l, u) == doctest::Approx(1.0));
  CHECK_FALSE(contains(l, u));
  // generator rows lie in their own span
  CHECK(contains(l, kLineGens.row_point(0)));
  CHECK(contains(l, kLineGens.row_point(1)));
}

TEST_CASE("projection is idempotent and certifies membership") {
  Rng rng(31);
  for (int t = 0; t < 150; ++t) {
    const int e = 4 + rng.uniform_index(3);
    const int d = 2 + rng.uniform_index(2);
    const TropLinearSpace l = random_stiefel(rng, d, e);
    const TropPoint u = oracles::random_point(rng, e, -6, 6);
    const TropPoint w = blue_project(l, u);
    CHECK(contains(l, w));
    const TropPoint w2 = blue_project(l, w);
    CHECK(trop_distance(w, w2) <= 1e-9);
    // membership agrees with the distance criterion
    CHECK(contains(l, u) == (distance_to_linspace(l, u) <= kTieTol));
    // red rule reconstructs u exactly
    const std::vector<double> v = red_residual(l, u);
    for (int i = 0; i < e; ++i) {
      CHECK(v[static_cast<size_t>(i)] >= 0.0);
      CHECK(u[i] == doctest::Approx(w[i] + v[static_cast<size_t>(i)]).epsilon(1e-12));
    }
    // members have no residual
    const std::vector<double> vw = red_residual(l, w);
    for (int i = 0; i < e; ++i) CHECK(vw[static_cast<size_t>(i)] <= 1e-9);
  }
}

TEST_CASE("random members are tropical combinations of projections") {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    const int e = 4;
    const TropLinearSpace l = random_stiefel(rng, 2, e);
    const TropPoint x = blue_project(l, oracles::random_point(rng, e, -5, 5));
    const TropPoint y = blue_project(l, oracles::random_point(rng, e, -5, 5));
    const double a = rng.uniform01() * 4 - 2;
    const double b = rng.uniform01() * 4 - 2;
    std::vector<double> combo(static_cast<size_t>(e));
    for (int i = 0; i < e; ++i)
      combo[static_cast<size_t>(i)] = std::max(a + x[i], b + y[i]);
    CHECK(contains(l, TropPoint(combo), 1e-8));
  }
}

TEST_CASE("blue projection matches a dense ray search on lines") {
  Rng rng(33);
  for (int t = 0; t < 20; ++t) {
    const TropMatrix gens = oracles::random_matrix(rng, 2, 3, -3, 3);
    const TropLinearSpace l = stiefel_space(gens);
    const TropPoint u = oracles::random_point(rng, 3, -3, 3);
    const double opt = distance_to_linspace(l, u);

    // a rank-2 space in three coordinates is a line with an apex; walk its
    // three rays
    const TropHyperplane h = hyperplane_from_points(gens);
    const TropPoint apex = h.apex();
    double best = trop_distance(u, apex);
    const double step = 1e-3;
    for (int ray = 0; ray < 3; ++ray) {
      for (double s = step; s <= 20.0; s += step) {
        std::vector<double> p = apex.coords();
        p[static_cast<size_t>(ray)] -= s;
        best = std::min(best, trop_distance(u, TropPoint(p)));
      }
    }
    CHECK(opt <= best + 1e-9);
    CHECK(best <= opt + 5 * step);
  }
}

TEST_CASE("hyperplane through e-1 points") {
  const TropMatrix rows = TropMatrix::from_rows({{0, -1, 2}, {0, 2, -1}});
  const TropHyperplane h = hyperplane_from_points(rows);
  CHECK(h.contains(rows.row_point(0)));
  CHECK(h.contains(rows.row_point(1)));
  const TropPoint apex = h.apex();
  CHECK(apex[0] == doctest::Approx(0.0));
  CHECK(apex[1] == doctest::Approx(2.0));
  CHECK(apex[2] == doctest::Approx(2.0));

  // duplicated rows still span a hyperplane containing them
  const TropMatrix dup = TropMatrix::from_rows({{0, 1, 2}, {0, 1, 2}});
  const TropHyperplane hd = hyperplane_from_points(dup);
  CHECK(hd.contains(dup.row_point(0)));

  // the functional-gap distance agrees with the generic machinery
  Rng rng(55);
  for (int t = 0; t < 50; ++t) {
    const TropMatrix m = oracles::random_matrix(rng, 3, 4, -4, 4);
    const TropHyperplane hp = hyperplane_from_points(m);
    const TropLinearSpace ls = hp.as_linear_space();
    const TropPoint u = oracles::random_point(rng, 4, -5, 5);
    CHECK(hp.gap(u) == doctest::Approx(distance_to_linspace(ls, u)).epsilon(1e-9));
  }
}

TEST_CASE("pluecker text round trip") {
  Rng rng(66);
  PluckerVector p = stiefel_plucker(oracles::random_matrix(rng, 2, 5, -3, 3));
  p.set_rank(3, TropScalar::neg_inf());
  std::stringstream ss;
  p.save(ss);
  const PluckerVector q = PluckerVector::load(ss);
  CHECK(p == q);
}

TEST_CASE("span of members can leave a line") {
  const TropHyperplane origin_line = TropHyperplane::from_apex(TropPoint({0, 0, 0}));
  const TropLinearSpace lp = origin_line.as_linear_space();
  const TropPoint d1({0, -1, 0});
  const TropPoint d2({0, -2, 0});
  CHECK(contains(lp, d1));
  CHECK(contains(lp, d2));

  const TropLinearSpace lq = stiefel_space(TropMatrix::from_points(
      std::vector<TropPoint>{d1, d2}));
  Rng rng(77);
  bool escaped = false;
  for (int t = 0; t < 50 && !escaped; ++t) {
    const TropPoint sample = blue_project(lq, oracles::random_point(rng, 3, -4, 4));
    escaped = distance_to_linspace(lp, sample) > kTieTol;
  }
  CHECK(escaped);
}

TEST_CASE("malformed spaces are rejected") {
  PluckerVector p(3, 2);  // all -inf
  CHECK_THROWS_AS(blue_project(TropLinearSpace(p), TropPoint({0, 1, 2})),
                  std::invalid_argument);
  const TropLinearSpace l(stiefel_plucker(kLineGens));
  CHECK_THROWS_AS(blue_project(l, TropPoint({0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(contains(l, TropPoint({0, 1})), std::invalid_argument);
}

TEST_CASE("parallel distance kernels match the serial reference") {
  Rng rng(88);
  const TropLinearSpace l = random_stiefel(rng, 3, 8);
  std::vector<TropPoint> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(oracles::random_point(rng, 8, -5, 5));
  CHECK(linspace_distance_sum(l, pts) == linspace_distance_sum_serial(l, pts));
  const auto par = blue_project_many(l, pts);
  const auto ser = blue_project_many_serial(l, pts);
  REQUIRE(par.size() == ser.size());
  for (size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}
