#ifndef TROPCA_SIMULATE_HPP
#define TROPCA_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tropca/phylo.hpp"

namespace tropca {

/// Gene-tree simulator configuration. Branch lengths are coalescent units
/// (population size 1); msc mode needs an equidistant species tree whose
/// depth is measured in the same units.
struct SimConfig {
  enum class Mode { kingman, msc };
  int num_trees = 1;
  int num_leaves = 3;
  std::optional<PhyloTree> species_tree;  // required iff mode == msc
  Mode mode = Mode::kingman;
  std::uint64_t rng_seed = 0;
};

/// n rooted equidistant trees. kingman: one exchangeable population,
/// pairwise merge rate C(k,2). msc: lineages coalesce only inside species
/// branches; leftovers coalesce above the species root. Tree i draws from
/// an independent stream derived from rng_seed and i, so generation order
/// does not matter.
std::vector<PhyloTree> simulate_trees(const SimConfig& cfg);

/// Eight-taxon species tree of depth 10 with groups {g,c}, {h,f} and
/// {a,b,d,e} used by the pipeline defaults.
PhyloTree default_species_tree_8();

/// Expected coalescent tree height sum_{k=2..m} 2/(k(k-1)) = 2(1 - 1/m).
double kingman_expected_height(int m);

}  // namespace tropca

#endif  // TROPCA_SIMULATE_HPP
