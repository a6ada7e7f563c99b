// Timings for the OpenMP kernels against their serial references on
// synthetic ultrametric data (8 leaves, e = 28).

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tropca/fitting.hpp"
#include "tropca/linspace.hpp"
#include "tropca/phylo.hpp"
#include "tropca/polytope.hpp"
#include "tropca/simulate.hpp"

using namespace tropca;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

}  // namespace

int main() {
  SimConfig cfg;
  cfg.num_trees = 2000;
  cfg.num_leaves = 8;
  cfg.mode = SimConfig::Mode::msc;
  cfg.species_tree = default_species_tree_8();
  cfg.rng_seed = 20240801;
  const std::vector<PhyloTree> trees = simulate_trees(cfg);
  std::vector<TropPoint> data;
  for (const PhyloTree& t : trees) data.push_back(cophenetic_vector(t).point);
  const std::vector<TropPoint> small(data.begin(), data.begin() + 60);

  std::vector<TropPoint> gens(data.begin(), data.begin() + 3);
  const TropPolytope poly(gens);
  const TropLinearSpace space = stiefel_space(TropMatrix::from_points(gens));

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("dataset: %zu simulated trees, dimension %d\n\n", data.size(),
              data[0].dim());
  std::printf("%-36s %10s %10s %8s\n", "kernel", "serial ms", "omp ms",
              "speedup");

  auto row = [&](const char* name, auto&& serial_fn, auto&& parallel_fn,
                 int reps) {
    double v1 = 0.0, v2 = 0.0;
    const double ts = time_best_of(reps, [&] { v1 = serial_fn(); });
    const double tp = time_best_of(reps, [&] { v2 = parallel_fn(); });
    std::printf("%-36s %10.3f %10.3f %7.2fx  (agree: %s)\n", name, ts, tp,
                ts / tp, v1 == v2 ? "yes" : "NO");
  };

  row(
      "hull_distance, n=60",
      [&] { return hull_distance_serial(poly, small); },
      [&] { return hull_distance(poly, small); }, 20);
  row(
      "hull_distance, n=2000",
      [&] { return hull_distance_serial(poly, data); },
      [&] { return hull_distance(poly, data); }, 10);
  row(
      "blue-rule distance sum, n=60",
      [&] { return linspace_distance_sum_serial(space, small); },
      [&] { return linspace_distance_sum(space, small); }, 5);
  row(
      "blue-rule distance sum, n=2000",
      [&] { return linspace_distance_sum_serial(space, data); },
      [&] { return linspace_distance_sum(space, data); }, 3);

  FitResult f1, f2;
  const double t_en_s = time_best_of(
      1, [&] { f1 = fit_polytope_pca_enumerate_serial(small, 3); });
  SearchConfig sc;
  sc.mode = SearchConfig::Mode::enumerate;
  const double t_en_p =
      time_best_of(1, [&] { f2 = fit_polytope_pca(small, 3, sc); });
  std::printf("%-36s %10.3f %10.3f %7.2fx  (agree: %s)\n",
              "polytope fit, enumerate C(60,3)", t_en_s, t_en_p,
              t_en_s / t_en_p,
              f1.total_distance == f2.total_distance &&
                      f1.generating_indices == f2.generating_indices
                  ? "yes"
                  : "NO");

  const std::vector<TropPoint> tiny(data.begin(), data.begin() + 30);
  FitResult g1, g2;
  const double t_es_s = time_best_of(
      1, [&] { g1 = fit_stiefel_pca_enumerate_serial(tiny, 3); });
  const double t_es_p =
      time_best_of(1, [&] { g2 = fit_stiefel_pca(tiny, 3, sc); });
  std::printf("%-36s %10.3f %10.3f %7.2fx  (agree: %s)\n",
              "stiefel fit, enumerate C(30,3)", t_es_s, t_es_p, t_es_s / t_es_p,
              g1.total_distance == g2.total_distance &&
                      g1.generating_indices == g2.generating_indices
                  ? "yes"
                  : "NO");
  return 0;
}
