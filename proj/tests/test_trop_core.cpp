#include "doctest.h"
#include "oracles.hpp"
#include "tropca/rng.hpp"
#include "tropca/trop_core.hpp"

using namespace tropca;

TEST_CASE("semiring identities") {
  const TropScalar ninf = TropScalar::neg_inf();
  CHECK(oplus(ninf, TropScalar(3.5)) == TropScalar(3.5));
  CHECK(oplus(TropScalar(-2.0), ninf) == TropScalar(-2.0));
  CHECK(otimes(TropScalar(0.0), TropScalar(7.25)) == TropScalar(7.25));
  CHECK(otimes(ninf, TropScalar(4.0)).is_neg_inf());
  CHECK(otimes(TropScalar(4.0), ninf).is_neg_inf());

  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const TropScalar a(rng.uniform01() * 10 - 5);
    const TropScalar b(rng.uniform01() * 10 - 5);
    const TropScalar c(rng.uniform01() * 10 - 5);
    CHECK(oplus(a, b) == oplus(b, a));
    CHECK(otimes(a, b) == otimes(b, a));
    CHECK(oplus(oplus(a, b), c) == oplus(a, oplus(b, c)));
    CHECK(otimes(otimes(a, b), c).value() ==
          doctest::Approx(otimes(a, otimes(b, c)).value()).epsilon(1e-12));
  }
}

TEST_CASE("tropical distance on tree vectors") {
  const TropPoint v({4, 4, 2});
  // one tree pulls a pair apart by 2, the other pulls a different pair by 2
  CHECK(trop_distance(v, TropPoint({2, 4, 4})) == doctest::Approx(4.0));
  // when only one side disagrees the distance is that single gap
  CHECK(trop_distance(v, TropPoint({2, 4, 2})) == doctest::Approx(2.0));
  CHECK(trop_distance(v, v) == 0.0);
  CHECK(trop_distance(TropPoint({0, -2, -2}), TropPoint({0, 2, 2})) ==
        doctest::Approx(oracles::pairwise_distance(TropPoint({0, -2, -2}),
                                                   TropPoint({0, 2, 2}))));
  CHECK(trop_distance(TropPoint({0, -2, -2}), TropPoint({0, 2, 2})) ==
        doctest::Approx(4.0));
  CHECK_THROWS_AS(trop_distance(v, TropPoint({0, 1})), std::invalid_argument);
}

TEST_CASE("tropical distance is a projective metric") {
  Rng rng(22);
  for (int t = 0; t < 500; ++t) {
    const int e = 2 + rng.uniform_index(6);
    const TropPoint x = oracles::random_point(rng, e, -5, 5);
    const TropPoint y = oracles::random_point(rng, e, -5, 5);
    const TropPoint z = oracles::random_point(rng, e, -5, 5);
    CHECK(trop_distance(x, y) == doctest::Approx(oracles::pairwise_distance(x, y)));
    CHECK(trop_distance(x, y) == doctest::Approx(trop_distance(y, x)));
    CHECK(trop_distance(x, z) <= trop_distance(x, y) + trop_distance(y, z) + 1e-12);
    const double lam = rng.uniform01() * 20 - 10;
    CHECK(trop_distance(x.shifted(lam), y) ==
          doctest::Approx(trop_distance(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("matrix product") {
  TropMatrix c(2, 3);
  Rng rng(3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) c.set(i, j, TropScalar(rng.uniform01() * 4 - 2));
  CHECK(trop_matmul(TropMatrix::identity(2), c) == c);

  TropMatrix a(2, 2);
  a.set(0, 0, 0.0);
  a.set(0, 1, 1.0);
  a.set(1, 0, TropScalar::neg_inf());
  a.set(1, 1, 0.0);
  TropMatrix b(2, 1);
  b.set(0, 0, 0.0);
  b.set(1, 0, 2.0);
  const TropMatrix ab = trop_matmul(a, b);
  CHECK(ab.at(0, 0) == TropScalar(3.0));
  CHECK(ab.at(1, 0) == TropScalar(2.0));

  // idempotence of -D for the distances of an equidistant 3-leaf tree
  const TropMatrix d = TropMatrix::from_rows({{0, 4, 4}, {4, 0, 2}, {4, 2, 0}});
  TropMatrix nd(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) nd.set(i, j, TropScalar(-d.at(i, j).value()));
  CHECK(trop_matmul(nd, nd) == nd);

  CHECK_THROWS_AS(trop_matmul(a, TropMatrix(3, 1)), std::invalid_argument);
}

TEST_CASE("determinant of 2x2 minors") {
  CHECK(trop_det(TropMatrix::from_rows({{0, 2}, {0, -1}})).best_value ==
        doctest::Approx(2.0));
  CHECK(trop_det(TropMatrix::from_rows({{2, 4}, {-1, -3}})).best_value ==
        doctest::Approx(3.0));
}

TEST_CASE("determinant matches exhaustive enumeration") {
  Rng rng(404);
  for (int t = 0; t < 500; ++t) {
    const int e = 2 + rng.uniform_index(6);  // up to 7
    TropMatrix a = oracles::random_matrix(rng, e, e, -6, 6);
    // sprinkle some forbidden arcs while keeping rows feasible
    if (t % 3 == 0) {
      for (int i = 0; i < e; ++i)
        if (rng.uniform01() < 0.3)
          a.set(i, rng.uniform_index(e - 1), TropScalar::neg_inf());
    }
    const auto brute = oracles::brute_trop_det(a);
    if (!brute || brute->second_perm.empty()) {
      CHECK_THROWS_AS(trop_det(a), DegenerateMatrixError);
      continue;
    }
    const AssignmentResult r = trop_det(a);
    CHECK(r.best_value == brute->best);
    CHECK(r.second_value == brute->second);
    CHECK(r.best_perm != r.second_perm);
    CHECK(r.second_value <= r.best_value);
    double check = 0.0;
    for (int i = 0; i < e; ++i)
      check += a.at(i, r.best_perm[static_cast<size_t>(i)]).value();
    CHECK(check == doctest::Approx(r.best_value).epsilon(1e-12));
    check = 0.0;
    for (int i = 0; i < e; ++i)
      check += a.at(i, r.second_perm[static_cast<size_t>(i)]).value();
    CHECK(check == doctest::Approx(r.second_value).epsilon(1e-12));
  }
}

TEST_CASE("degenerate matrices are signaled") {
  TropMatrix a(2, 2);
  a.set(0, 0, TropScalar(0.0));
  a.set(0, 1, TropScalar::neg_inf());
  a.set(1, 0, TropScalar(0.0));
  a.set(1, 1, TropScalar::neg_inf());
  CHECK_THROWS_AS(trop_det(a), DegenerateMatrixError);  // no finite matching
  TropMatrix b(2, 2, TropScalar::neg_inf());
  CHECK_THROWS_AS(trop_det(b), DegenerateMatrixError);  // empty row
}

TEST_CASE("volume of known point triples") {
  const TropMatrix first3 =
      TropMatrix::from_rows({{0, -2, -2}, {0, -1, 2}, {0, 2, -1}});
  CHECK(trop_volume(first3) == doctest::Approx(4.0));

  const TropMatrix dup =
      TropMatrix::from_rows({{0, 1, 2}, {3, -1, 0}, {0, 1, 2}});
  CHECK(trop_volume(dup) == doctest::Approx(0.0));

  // the largest three-row volume of this four-point configuration is 2
  const std::vector<std::vector<double>> rows = {
      {0, -1, -3}, {0, 2, -2}, {0, 3, 1}, {0, -3, -1}};
  double best = 0.0;
  for (int skip = 0; skip < 4; ++skip) {
    std::vector<std::vector<double>> sel;
    for (int i = 0; i < 4; ++i)
      if (i != skip) sel.push_back(rows[static_cast<size_t>(i)]);
    best = std::max(best, trop_volume(TropMatrix::from_rows(sel)));
  }
  CHECK(best == doctest::Approx(2.0));
}

TEST_CASE("volume invariances") {
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    const int e = 2 + rng.uniform_index(4);
    const TropMatrix a = oracles::random_matrix(rng, e, e, -4, 4);
    const double vol = trop_volume(a);
    CHECK(vol >= 0.0);
    CHECK(trop_volume(a.transposed()) == doctest::Approx(vol).epsilon(1e-12));
    TropMatrix shifted = a;
    const int row = rng.uniform_index(e);
    const double c = rng.uniform01() * 8 - 4;
    for (int j = 0; j < e; ++j)
      shifted.set(row, j, TropScalar(a.at(row, j).value() + c));
    CHECK(trop_volume(shifted) == doctest::Approx(vol).epsilon(1e-9));
  }
}

TEST_CASE("singularity test") {
  CHECK(is_trop_singular(TropMatrix::from_rows({{0, 1}, {0, 1}})));
  CHECK_FALSE(is_trop_singular(TropMatrix::from_rows({{0, 2}, {0, -1}})));

  // third row built as a tropical combination of the first two
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const TropMatrix base = oracles::random_matrix(rng, 2, 3, -4, 4);
    const double a = rng.uniform01() * 4 - 2;
    const double b = rng.uniform01() * 4 - 2;
    std::vector<std::vector<double>> rows;
    rows.push_back({base.at(0, 0).value(), base.at(0, 1).value(), base.at(0, 2).value()});
    rows.push_back({base.at(1, 0).value(), base.at(1, 1).value(), base.at(1, 2).value()});
    std::vector<double> mix(3);
    for (int j = 0; j < 3; ++j)
      mix[static_cast<size_t>(j)] =
          std::max(a + base.at(0, j).value(), b + base.at(1, j).value());
    rows.push_back(mix);
    CHECK(is_trop_singular(TropMatrix::from_rows(rows)));
  }
}

TEST_CASE("metric recognition") {
  CHECK(is_metric(TropMatrix::from_rows({{0, 4, 4}, {4, 0, 2}, {4, 2, 0}})));
  CHECK_FALSE(is_metric(TropMatrix::from_rows({{0, 1, 10}, {1, 0, 1}, {10, 1, 0}})));
  CHECK_THROWS_AS(is_metric(TropMatrix::from_rows({{0, 1}, {2, 0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(is_metric(TropMatrix::from_rows({{1, 1}, {1, 0}})),
                  std::invalid_argument);

  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    const int m = 3 + rng.uniform_index(4);
    TropMatrix d(m, m);
    for (int i = 0; i < m; ++i) {
      d.set(i, i, TropScalar(0.0));
      for (int j = i + 1; j < m; ++j) {
        const double v = rng.uniform01() * 3 + 0.1;
        d.set(i, j, TropScalar(v));
        d.set(j, i, TropScalar(v));
      }
    }
    CHECK(is_metric(d) == oracles::triangle_metric(d));
  }
}
