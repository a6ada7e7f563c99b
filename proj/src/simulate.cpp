#include "tropca/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "tropca/rng.hpp"

namespace tropca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Work-in-progress gene tree: nodes carry heights; branch lengths are
// height differences filled in at the end.
struct GeneForest {
  std::vector<PhyloNode> nodes;
  std::vector<double> height;

  int add_leaf(const std::string& label) {
    nodes.emplace_back();
    nodes.back().label = label;
    height.push_back(0.0);
    return static_cast<int>(nodes.size()) - 1;
  }

  int merge(int a, int b, double h) {
    nodes.emplace_back();
    const int id = static_cast<int>(nodes.size()) - 1;
    height.push_back(h);
    nodes[static_cast<size_t>(id)].children = {a, b};
    nodes[static_cast<size_t>(a)].parent = id;
    nodes[static_cast<size_t>(b)].parent = id;
    return id;
  }

  PhyloTree finish(int root) {
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].parent >= 0)
        nodes[i].length = height[static_cast<size_t>(nodes[i].parent)] - height[i];
    }
    return PhyloTree(std::move(nodes), root, false);
  }
};

// Coalesce the pool between heights t0 and t1 (t1 may be +inf); merge times
// are exponential with rate C(k,2).
void evolve(GeneForest& forest, std::vector<int>& pool, double t0, double t1,
            Rng& rng) {
  double t = t0;
  while (pool.size() >= 2) {
    const double k = static_cast<double>(pool.size());
    const double rate = k * (k - 1.0) / 2.0;
    t += rng.exponential(rate);
    if (t >= t1) return;
    const int npairs = static_cast<int>(pool.size() * (pool.size() - 1) / 2);
    int pick = rng.uniform_index(npairs);
    int i = 0;
    while (pick >= static_cast<int>(pool.size()) - i - 1) {
      pick -= static_cast<int>(pool.size()) - i - 1;
      ++i;
    }
    const int j = i + 1 + pick;
    const int merged =
        forest.merge(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)], t);
    pool.erase(pool.begin() + j);
    pool[static_cast<size_t>(i)] = merged;
  }
}

std::vector<std::string> default_leaf_labels(int m) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(m));
  if (m <= 26) {
    for (int i = 0; i < m; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  } else {
    for (int i = 0; i < m; ++i) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "t%03d", i + 1);
      out.emplace_back(buf);
    }
  }
  return out;
}

PhyloTree simulate_kingman(int m, Rng& rng) {
  GeneForest forest;
  std::vector<int> pool;
  for (const std::string& label : default_leaf_labels(m))
    pool.push_back(forest.add_leaf(label));
  evolve(forest, pool, 0.0, kInf, rng);
  return forest.finish(pool[0]);
}

PhyloTree simulate_msc(const PhyloTree& species, Rng& rng) {
  // Species node heights from the equidistant structure.
  std::vector<double> sheight(species.nodes().size(), 0.0);
  std::vector<int> post;
  {
    std::vector<double> depth(species.nodes().size(), 0.0);
    std::vector<int> stack = {species.root()};
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      post.push_back(id);
      for (int c : species.node(id).children) {
        depth[static_cast<size_t>(c)] =
            depth[static_cast<size_t>(id)] + species.node(c).length;
        stack.push_back(c);
      }
    }
    std::reverse(post.begin(), post.end());
    double total = 0.0;
    for (size_t i = 0; i < depth.size(); ++i)
      if (species.node(static_cast<int>(i)).children.empty())
        total = std::max(total, depth[i]);
    for (size_t i = 0; i < depth.size(); ++i) sheight[i] = total - depth[i];
  }

  GeneForest forest;
  // One lineage per species leaf; pools percolate up the species tree,
  // coalescing within each branch, then above the root.
  std::map<int, std::vector<int>> pool_at;
  for (int id : post) {
    const PhyloNode& sn = species.node(id);
    std::vector<int> pool;
    if (sn.children.empty()) {
      pool.push_back(forest.add_leaf(sn.label));
    } else {
      for (int c : sn.children) {
        auto& child_pool = pool_at.at(c);
        pool.insert(pool.end(), child_pool.begin(), child_pool.end());
      }
    }
    const double top = id == species.root() ? kInf : sheight[static_cast<size_t>(sn.parent)];
    evolve(forest, pool, sheight[static_cast<size_t>(id)], top, rng);
    pool_at[id] = std::move(pool);
  }
  return forest.finish(pool_at.at(species.root())[0]);
}

}  // namespace

std::vector<PhyloTree> simulate_trees(const SimConfig& cfg) {
  if (cfg.num_trees < 1 || cfg.num_leaves < 3)
    throw std::invalid_argument("simulate_trees: need n >= 1 and m >= 3");
  if (cfg.mode == SimConfig::Mode::msc) {
    if (!cfg.species_tree)
      throw std::invalid_argument("simulate_trees: msc mode needs a species tree");
    const UltraPoint u = cophenetic_vector(*cfg.species_tree);
    if (!u.ultrametric)
      throw std::invalid_argument("simulate_trees: species tree must be equidistant");
    if (cfg.species_tree->leaf_count() != cfg.num_leaves)
      throw std::invalid_argument(
          "simulate_trees: species tree leaf count differs from num_leaves");
  }

  std::vector<PhyloTree> out;
  out.reserve(static_cast<size_t>(cfg.num_trees));
  for (int i = 0; i < cfg.num_trees; ++i) {
    Rng rng(mix_seed(cfg.rng_seed + static_cast<std::uint64_t>(i)));
    if (cfg.mode == SimConfig::Mode::kingman)
      out.push_back(simulate_kingman(cfg.num_leaves, rng));
    else
      out.push_back(simulate_msc(*cfg.species_tree, rng));
  }
  return out;
}

PhyloTree default_species_tree_8() {
  // groups {g,c}, {h,f}, {a,b,d,e}; every leaf at depth 10
  return parse_newick(
      "((g:1,c:1):9,(h:1,f:1):9,((a:1,b:1):1,(d:1,e:1):1):8);");
}

double kingman_expected_height(int m) {
  double s = 0.0;
  for (int k = 2; k <= m; ++k) s += 2.0 / (static_cast<double>(k) * (k - 1));
  return s;
}

}  // namespace tropca
