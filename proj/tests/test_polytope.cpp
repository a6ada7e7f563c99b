#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tropca/linspace.hpp"
#include "tropca/phylo.hpp"
#include "tropca/polytope.hpp"
#include "tropca/rng.hpp"
#include "tropca/simulate.hpp"

using namespace tropca;

namespace {

TropPolytope random_polytope(Rng& rng, int s, int e) {
  std::vector<TropPoint> v;
  for (int i = 0; i < s; ++i) v.push_back(oracles::random_point(rng, e, -4, 4));
  return TropPolytope(std::move(v));
}

TropPoint random_combination(Rng& rng, const TropPolytope& p) {
  std::vector<double> c(static_cast<size_t>(p.dim()),
                        -std::numeric_limits<double>::infinity());
  for (const TropPoint& v : p.vertices()) {
    const double a = rng.uniform01() * 8 - 4;
    for (int t = 0; t < p.dim(); ++t)
      c[static_cast<size_t>(t)] = std::max(c[static_cast<size_t>(t)], a + v[t]);
  }
  return TropPoint(std::move(c));
}

const std::vector<TropPoint> kSixTrees = {
    TropPoint({0.69089925, 7.022836, 7.022836}),
    TropPoint({0.53495974, 1.641369, 1.641369}),
    TropPoint({0.02082164, 3.101557, 3.101557}),
    TropPoint({0.23519336, 3.968678, 3.968678}),
    TropPoint({0.19730562, 5.960980, 5.960980}),
    TropPoint({0.73804678, 1.090399, 1.090399})};

const TropPolytope kFittedTriangle(std::vector<TropPoint>{
    TropPoint({1, 1.352352, 1.352352}), TropPoint({1, 2.106409, 2.106409}),
    TropPoint({1, 7.331937, 7.331937})});

}  // namespace

TEST_CASE("vertices are fixed points") {
  Rng rng(1);
  const TropPolytope p = random_polytope(rng, 4, 5);
  for (const TropPoint& v : p.vertices()) {
    CHECK(trop_distance(project(p, v), v) <= 1e-12);
    CHECK(contains(p, v));
  }
}

TEST_CASE("fitted triangle covers all six tree vectors") {
  for (const TropPoint& d : kSixTrees)
    CHECK(trop_distance(d, project(kFittedTriangle, d)) <= 1e-4);
  CHECK(hull_distance(kFittedTriangle, kSixTrees) <= 1e-4);
}

TEST_CASE("projection beats sampled hull points") {
  Rng rng(2);
  const TropPolytope p = random_polytope(rng, 3, 3);
  const TropPoint d = oracles::random_point(rng, 3, -6, 6);
  const double opt = trop_distance(d, project(p, d));
  for (int t = 0; t < 10000; ++t) {
    const TropPoint q = random_combination(rng, p);
    CHECK(opt <= trop_distance(d, q) + 1e-12);
  }
}

TEST_CASE("membership by distance") {
  Rng rng(3);
  const TropPolytope p = random_polytope(rng, 3, 4);
  for (int t = 0; t < 200; ++t)
    CHECK(contains(p, random_combination(rng, p), 1e-9));
  CHECK_FALSE(contains(p, TropPoint({100, -100, 0, 0})));
}

TEST_CASE("projection is idempotent and projective") {
  Rng rng(4);
  for (int t = 0; t < 300; ++t) {
    const int e = 3 + rng.uniform_index(4);
    const TropPolytope p = random_polytope(rng, 3, e);
    const TropPoint x = oracles::random_point(rng, e, -8, 8);
    const TropPoint px = project(p, x);
    CHECK(trop_distance(project(p, px), px) <= 1e-12);
    const double lam = rng.uniform01() * 10 - 5;
    const TropPoint shifted = project(p, x.shifted(lam));
    for (int i = 0; i < e; ++i)
      CHECK(shifted[i] == doctest::Approx(px[i] + lam).epsilon(1e-12));
  }
}

TEST_CASE("hull is inside the stiefel span of the same points") {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const int e = 4;
    std::vector<TropPoint> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(oracles::random_point(rng, e, -4, 4));
    const TropPolytope p(gens);
    const TropLinearSpace l = stiefel_space(TropMatrix::from_points(gens));
    const TropPoint x = oracles::random_point(rng, e, -6, 6);
    CHECK(distance_to_linspace(l, x) <=
          trop_distance(x, project(p, x)) + kTieTol);
  }
}

TEST_CASE("projections of ultrametric hulls stay ultrametric") {
  SimConfig cfg;
  cfg.num_trees = 9;
  cfg.num_leaves = 5;
  cfg.mode = SimConfig::Mode::kingman;
  cfg.rng_seed = 6;
  const std::vector<PhyloTree> trees = simulate_trees(cfg);
  std::vector<TropPoint> verts;
  for (int i = 0; i < 3; ++i)
    verts.push_back(cophenetic_vector(trees[static_cast<size_t>(i)]).point);
  const TropPolytope p(verts);
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    const TropPoint q = oracles::random_point(rng, p.dim(), 0, 6);
    CHECK(is_ultrametric(project(p, q)));
  }
}

TEST_CASE("hull distance equals a direct per-point recomputation") {
  const std::vector<TropPoint> pts = {
      TropPoint({0, -2, -2}), TropPoint({0, -1, 2}), TropPoint({0, 2, -1}),
      TropPoint({0, 2, 2})};
  const TropPolytope p(std::vector<TropPoint>(pts.begin(), pts.begin() + 3));
  double manual = 0.0;
  for (const TropPoint& d : pts) {
    // lambda_k = min(d - v_k); projection = max_k (lambda_k + v_k)
    std::vector<double> proj(3, -std::numeric_limits<double>::infinity());
    for (const TropPoint& v : p.vertices()) {
      double lam = d[0] - v[0];
      for (int i = 1; i < 3; ++i) lam = std::min(lam, d[i] - v[i]);
      for (int i = 0; i < 3; ++i)
        proj[static_cast<size_t>(i)] = std::max(proj[static_cast<size_t>(i)], lam + v[i]);
    }
    manual += trop_distance(d, TropPoint(proj));
  }
  CHECK(hull_distance(p, pts) == doctest::Approx(manual).epsilon(1e-12));
  CHECK(hull_distance(p, p.vertices()) == doctest::Approx(0.0));
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(TropPolytope(std::vector<TropPoint>{}), std::invalid_argument);
  Rng rng(8);
  const TropPolytope p = random_polytope(rng, 3, 3);
  CHECK_THROWS_AS(project(p, TropPoint({0, 1, 2, 3})), std::invalid_argument);
  CHECK_THROWS_AS(hull_distance(p, std::vector<TropPoint>{}),
                  std::invalid_argument);
}

TEST_CASE("parallel hull kernels match the serial reference") {
  Rng rng(9);
  const TropPolytope p = random_polytope(rng, 3, 10);
  std::vector<TropPoint> data;
  for (int i = 0; i < 64; ++i) data.push_back(oracles::random_point(rng, 10, -5, 5));
  CHECK(hull_distance(p, data) == hull_distance_serial(p, data));
  const auto par = project_many(p, data);
  const auto ser = project_many_serial(p, data);
  REQUIRE(par.size() == ser.size());
  for (size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
}
