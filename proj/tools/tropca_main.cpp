// tropca: tropical principal component analysis for point clouds and
// phylogenetic trees. Subcommands: simulate, pca, export-milp, plot.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "tropca/csv.hpp"
#include "tropca/fit_json.hpp"
#include "tropca/fitting.hpp"
#include "tropca/milp.hpp"
#include "tropca/phylo.hpp"
#include "tropca/simulate.hpp"
#include "tropca/svgplot.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr const char* kVersion = "tropca 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNotUltrametric = 3;
constexpr int kExitPlotDim = 4;

using nlohmann::json;
using namespace tropca;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

json make_manifest(const std::string& command,
                   const std::vector<std::string>& inputs, const json& config,
                   std::uint64_t seed, double duration) {
  json m;
  m["command"] = command;
  m["inputs"] = inputs;
  m["config"] = config;
  m["seed"] = seed;
  m["version"] = kVersion;
  m["duration_seconds"] = duration;
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << text;
  if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(int n, int leaves, const std::string& mode,
                 const std::string& species_path, std::uint64_t seed,
                 const std::string& out_prefix) {
  Timer timer;
  SimConfig cfg;
  cfg.num_trees = n;
  cfg.num_leaves = leaves;
  cfg.rng_seed = seed;
  if (mode == "kingman") {
    cfg.mode = SimConfig::Mode::kingman;
  } else if (mode == "msc") {
    cfg.mode = SimConfig::Mode::msc;
    if (!species_path.empty()) {
      cfg.species_tree = parse_newick(read_file(species_path));
    } else if (leaves == 8) {
      cfg.species_tree = default_species_tree_8();
    } else {
      std::cerr << "simulate: msc mode needs --species-tree unless --leaves 8 "
                   "(built-in depth-10 species tree)\n";
      return kExitBadInput;
    }
  } else {
    std::cerr << "simulate: unknown mode " << mode << "\n";
    return kExitBadInput;
  }

  std::vector<PhyloTree> trees;
  try {
    trees = simulate_trees(cfg);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "simulate: " << ex.what() << "\n";
    return kExitBadInput;
  }

  std::string nwk;
  for (const PhyloTree& t : trees) {
    nwk += emit_newick(t);
    nwk += '\n';
  }
  std::vector<TropPoint> pts;
  std::vector<std::string> leaf_order;
  for (const PhyloTree& t : trees) {
    UltraPoint u = cophenetic_vector(t);
    if (leaf_order.empty()) leaf_order = u.leaf_order;
    pts.push_back(std::move(u.point));
  }
  std::ostringstream csv;
  write_csv(csv, points_table(pts, pair_columns(leaf_order)));

  try {
    write_file(out_prefix + ".nwk", nwk);
    write_file(out_prefix + ".csv", csv.str());
  } catch (const std::exception& ex) {
    std::cerr << "simulate: " << ex.what() << "\n";
    return kExitIo;
  }
  std::cout << "simulate: wrote " << trees.size() << " trees to " << out_prefix
            << ".nwk and " << out_prefix << ".csv in " << timer.seconds()
            << " s\n";
  return kExitOk;
}

// --------------------------------------------------------------------- pca

struct LoadedData {
  std::vector<TropPoint> points;
  std::vector<std::string> columns;     // CSV column names
  std::vector<std::string> leaf_order;  // nonempty when input looks like trees
  std::vector<int> non_ultrametric;     // indices of flagged rows
};

std::vector<std::string> leaf_order_from_pair_columns(
    const std::vector<std::string>& columns) {
  // accept only a full lexicographic pair header
  std::set<std::string> labels;
  for (const std::string& c : columns) {
    if (c.rfind("pair:", 0) != 0) return {};
    const std::string body = c.substr(5);
    const size_t dash = body.find('-');
    if (dash == std::string::npos) return {};
    labels.insert(body.substr(0, dash));
    labels.insert(body.substr(dash + 1));
  }
  const std::vector<std::string> ordered(labels.begin(), labels.end());
  if (ordered.size() < 2 || pair_columns(ordered) != columns) return {};
  return ordered;
}

LoadedData load_points(const std::string& path,
                       const std::vector<int>& exclude) {
  const std::string text = read_file(path);
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw CsvError(0, 0, "empty input");
  LoadedData out;
  std::set<int> skip(exclude.begin(), exclude.end());

  if (text[first] == '(') {
    std::istringstream is(text);
    std::string line;
    int idx = 0;
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (skip.count(idx)) {
        ++idx;
        continue;
      }
      const PhyloTree t = parse_newick(line);
      UltraPoint u = cophenetic_vector(t);
      if (out.leaf_order.empty()) {
        out.leaf_order = u.leaf_order;
        out.columns = pair_columns(out.leaf_order);
      } else if (u.leaf_order != out.leaf_order) {
        throw std::runtime_error("tree " + std::to_string(idx) +
                                 " has a different leaf set");
      }
      if (!u.ultrametric)
        out.non_ultrametric.push_back(static_cast<int>(out.points.size()));
      out.points.push_back(std::move(u.point));
      ++idx;
    }
  } else {
    std::istringstream is(text);
    const CsvTable table = read_csv(is);
    out.columns = table.columns;
    out.leaf_order = leaf_order_from_pair_columns(table.columns);
    std::vector<TropPoint> all = table_points(table);
    for (int i = 0; i < static_cast<int>(all.size()); ++i) {
      if (skip.count(i)) continue;
      if (!out.leaf_order.empty() &&
          !is_ultrametric(all[static_cast<size_t>(i)]))
        out.non_ultrametric.push_back(static_cast<int>(out.points.size()));
      out.points.push_back(std::move(all[static_cast<size_t>(i)]));
    }
  }
  return out;
}

std::vector<int> read_exclude(const std::string& path) {
  std::vector<int> out;
  if (path.empty()) return out;
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open exclude list " + path);
  int v;
  while (is >> v) out.push_back(v);
  return out;
}

int cmd_pca(const std::string& input, const std::string& method, int s,
            const std::string& mode, int window, long max_iters,
            std::uint64_t seed, bool allow_non_ultrametric,
            const std::string& exclude_path, const std::string& out_prefix) {
  Timer timer;
  LoadedData data;
  try {
    data = load_points(input, read_exclude(exclude_path));
  } catch (const CsvError& ex) {
    std::cerr << "pca: " << ex.what() << "\n";
    return kExitBadInput;
  } catch (const NewickError& ex) {
    std::cerr << "pca: " << ex.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& ex) {
    std::cerr << "pca: " << ex.what() << "\n";
    return kExitIo;
  }
  if (data.points.empty()) {
    std::cerr << "pca: no usable rows in " << input << "\n";
    return kExitBadInput;
  }
  if (!data.non_ultrametric.empty() && !allow_non_ultrametric) {
    std::cerr << "pca: " << data.non_ultrametric.size()
              << " input points fail the ultrametric test (first index "
              << data.non_ultrametric.front()
              << "); pass --allow-non-ultrametric to proceed\n";
    return kExitNotUltrametric;
  }

  SearchConfig cfg;
  cfg.convergence_window = window;
  cfg.max_iterations = max_iters;
  cfg.rng_seed = seed;
  cfg.mode = mode == "enumerate" ? SearchConfig::Mode::enumerate
                                 : SearchConfig::Mode::sample;

  FitResult fit;
  try {
    fit = method == "stiefel" ? fit_stiefel_pca(data.points, s, cfg)
                              : fit_polytope_pca(data.points, s, cfg);
  } catch (const std::exception& ex) {
    std::cerr << "pca: " << ex.what() << "\n";
    return kExitBadInput;
  }

  json j = fit_result_to_json(fit, data.points, cfg);
  json config;
  config["method"] = method;
  config["s"] = s;
  config["mode"] = mode;
  config["window"] = window;
  config["max_iterations"] = max_iters;
  config["allow_non_ultrametric"] = allow_non_ultrametric;

  // projections CSV
  std::ostringstream proj_csv;
  write_csv(proj_csv, points_table(fit.projections, data.columns));

  // topology table for tree-like inputs whose projections stay ultrametric
  std::string topo_tsv;
  if (!data.leaf_order.empty()) {
    bool all_ultra = true;
    for (const TropPoint& p : fit.projections)
      all_ultra = all_ultra && is_ultrametric(p);
    if (all_ultra) {
      std::vector<UltraPoint> ups;
      for (const TropPoint& p : fit.projections)
        ups.push_back(UltraPoint{p, data.leaf_order, true});
      const auto tally = topology_tally(ups);
      topo_tsv = "topology\tcount\n";
      for (const auto& [sig, count] : tally)
        topo_tsv += sig.canonical_newick + "\t" + std::to_string(count) + "\n";
      json jt = json::array();
      for (const auto& [sig, count] : tally)
        jt.push_back({{"topology", sig.canonical_newick}, {"count", count}});
      j["topologies"] = std::move(jt);
    } else {
      j["topologies"] = nullptr;  // projections left the ultrametric cone
    }
  }

  j["manifest"] = make_manifest("pca", {input}, config, seed, timer.seconds());

  try {
    write_file(out_prefix + ".json", j.dump(2) + "\n");
    write_file(out_prefix + "_projections.csv", proj_csv.str());
    if (!topo_tsv.empty())
      write_file(out_prefix + "_topologies.tsv", topo_tsv);
  } catch (const std::exception& ex) {
    std::cerr << "pca: " << ex.what() << "\n";
    return kExitIo;
  }
  std::cout << "pca: method=" << method << " d=" << fit.total_distance
            << " r=" << fit.proportion_r << " iterations=" << fit.iterations_run
            << (fit.converged ? " (converged)" : " (iteration cap)") << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- export-milp

int cmd_export_milp(const std::string& input, const std::string& out_path,
                    const std::string& check_path) {
  Timer timer;
  LoadedData data;
  try {
    data = load_points(input, {});
  } catch (const CsvError& ex) {
    std::cerr << "export-milp: " << ex.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& ex) {
    std::cerr << "export-milp: " << ex.what() << "\n";
    return kExitIo;
  }

  MilpModel model;
  try {
    model = build_model(data.points);
  } catch (const std::exception& ex) {
    std::cerr << "export-milp: " << ex.what() << "\n";
    return kExitBadInput;
  }

  if (!check_path.empty()) {
    try {
      const json sol = json::parse(read_file(check_path));
      std::map<std::string, double> assignment;
      if (sol.contains("vertices")) {
        std::vector<TropPoint> verts;
        for (const auto& row : sol["vertices"])
          verts.emplace_back(row.get<std::vector<double>>());
        assignment = assignment_from_polytope(model, TropPolytope(verts));
      } else if (sol.contains("assignment")) {
        for (const auto& [k, v] : sol["assignment"].items())
          assignment[k] = v.get<double>();
      } else {
        std::cerr << "export-milp: solution file needs \"vertices\" or "
                     "\"assignment\"\n";
        return kExitBadInput;
      }
      const CheckResult r = check_solution(model, assignment);
      std::cout << (r.feasible ? "feasible" : "infeasible")
                << " objective=" << r.objective << "\n";
      for (const std::string& v : r.violations)
        std::cout << "violated: " << v << "\n";
    } catch (const std::exception& ex) {
      std::cerr << "export-milp: " << ex.what() << "\n";
      return kExitBadInput;
    }
  }

  if (!out_path.empty()) {
    try {
      export_lp_file(model, out_path);
    } catch (const std::exception& ex) {
      std::cerr << "export-milp: " << ex.what() << "\n";
      return kExitIo;
    }
    std::cout << "export-milp: wrote " << out_path << " ("
              << model.constraints.size() << " constraints, "
              << model.var_order.size() << " variables) in " << timer.seconds()
              << " s\n";
  }
  return kExitOk;
}

// -------------------------------------------------------------------- plot

int cmd_plot(const std::string& proj_path, const std::string& verts_path,
             const std::string& fit_path, const std::string& coords_arg,
             bool color_topology, const std::string& out_path) {
  LoadedData proj;
  try {
    proj = load_points(proj_path, {});
  } catch (const std::exception& ex) {
    std::cerr << "plot: " << ex.what() << "\n";
    return kExitBadInput;
  }
  if (proj.points.empty()) {
    std::cerr << "plot: no points\n";
    return kExitBadInput;
  }

  int ci = 0, cj = 1, ck = 2;
  const int e = proj.points[0].dim();
  if (!coords_arg.empty()) {
    if (std::sscanf(coords_arg.c_str(), "%d,%d,%d", &ci, &cj, &ck) != 3 ||
        ci < 1 || cj < 1 || ck < 1 || ci > e || cj > e || ck > e) {
      std::cerr << "plot: --coords wants three 1-based indices i,j,k <= " << e
                << "\n";
      return kExitBadInput;
    }
    --ci;
    --cj;
    --ck;
  } else if (e != 3) {
    std::cerr << "plot: input dimension is " << e
              << "; plotting draws the plane x1 = 0 in three coordinates, so "
                 "either supply 3-dimensional projections or pick a triple "
                 "with --coords i,j,k\n";
    return kExitPlotDim;
  }

  ScatterPlot plot;
  auto to_xy = [&](const TropPoint& p) {
    return ScatterPoint{p[cj] - p[ci], p[ck] - p[ci], -1};
  };
  for (const TropPoint& p : proj.points) plot.points.push_back(to_xy(p));

  if (color_topology && !proj.leaf_order.empty()) {
    bool all_ultra = true;
    for (const TropPoint& p : proj.points)
      all_ultra = all_ultra && is_ultrametric(p);
    if (all_ultra) {
      std::vector<UltraPoint> ups;
      for (const TropPoint& p : proj.points)
        ups.push_back(UltraPoint{p, proj.leaf_order, true});
      const auto tally = topology_tally(ups);
      std::map<std::string, int> rank;
      for (int g = 0; g < static_cast<int>(tally.size()); ++g) {
        rank[tally[static_cast<size_t>(g)].first.canonical_newick] = g;
        plot.legend.push_back(
            {tally[static_cast<size_t>(g)].first.canonical_newick + " (" +
                 std::to_string(tally[static_cast<size_t>(g)].second) + ")",
             g});
      }
      for (size_t i = 0; i < proj.points.size(); ++i) {
        const auto sig = topology_signature(ultrametric_to_tree(ups[i]));
        plot.points[i].color_group = rank.at(sig.canonical_newick);
      }
    } else {
      std::cerr << "plot: --color-topology skipped (projections are not all "
                   "ultrametric)\n";
    }
  }

  if (!verts_path.empty()) {
    try {
      const LoadedData verts = load_points(verts_path, {});
      for (const TropPoint& v : verts.points) plot.vertices.push_back(to_xy(v));
    } catch (const std::exception& ex) {
      std::cerr << "plot: " << ex.what() << "\n";
      return kExitBadInput;
    }
  }
  if (!fit_path.empty()) {
    try {
      const json fit = json::parse(read_file(fit_path));
      for (const auto& row : fit["model"]["generators"])
        plot.vertices.push_back(to_xy(TropPoint(row.get<std::vector<double>>())));
      std::ostringstream ann;
      ann << "total distance: " << fit["total_distance"].get<double>();
      plot.annotation = ann.str();
    } catch (const std::exception& ex) {
      std::cerr << "plot: " << ex.what() << "\n";
      return kExitBadInput;
    }
  }

  std::ostringstream svg;
  write_scatter_svg(svg, plot);
  try {
    write_file(out_path, svg.str());
  } catch (const std::exception& ex) {
    std::cerr << "plot: " << ex.what() << "\n";
    return kExitIo;
  }
  std::cout << "plot: wrote " << out_path << " (" << plot.points.size()
            << " points)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
  if (const char* threads = std::getenv("TROPCA_THREADS")) {
    const int t = std::atoi(threads);
    if (t > 0) omp_set_num_threads(t);
  }
#endif

  CLI::App app{"tropical principal component analysis"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate coalescent gene trees");
  int sim_n = 1, sim_leaves = 3;
  std::string sim_mode = "kingman", sim_species, sim_out = "sim";
  std::uint64_t sim_seed = 0;
  sim->add_option("--n", sim_n, "number of trees")->check(CLI::PositiveNumber);
  sim->add_option("--leaves", sim_leaves, "leaves per tree")
      ->check(CLI::Range(3, 1000));
  sim->add_option("--mode", sim_mode, "kingman or msc")
      ->check(CLI::IsMember({"kingman", "msc"}));
  sim->add_option("--species-tree", sim_species, "newick species tree (msc)");
  sim->add_option("--seed", sim_seed, "rng seed");
  sim->add_option("--out", sim_out, "output prefix");

  // pca
  auto* pca = app.add_subcommand("pca", "fit a tropical principal component");
  std::string pca_input, pca_method = "stiefel", pca_mode = "sample";
  std::string pca_exclude, pca_out = "fit";
  int pca_s = 3, pca_window = 100;
  long pca_max_iters = 100000;
  std::uint64_t pca_seed = 0;
  bool pca_allow = false;
  pca->add_option("--input", pca_input, "CSV or newick input")->required();
  pca->add_option("--method", pca_method, "stiefel or polytope")
      ->check(CLI::IsMember({"stiefel", "polytope"}));
  pca->add_option("--s", pca_s, "number of generating points")
      ->check(CLI::Range(2, 64));
  pca->add_option("--mode", pca_mode, "sample or enumerate")
      ->check(CLI::IsMember({"sample", "enumerate"}));
  pca->add_option("--window", pca_window, "convergence window")
      ->check(CLI::PositiveNumber);
  pca->add_option("--max-iters", pca_max_iters, "iteration cap")
      ->check(CLI::PositiveNumber);
  pca->add_option("--seed", pca_seed, "rng seed");
  pca->add_flag("--allow-non-ultrametric", pca_allow,
                "accept non-ultrametric rows");
  pca->add_option("--exclude", pca_exclude,
                  "file of 0-based input indices to drop");
  pca->add_option("--out", pca_out, "output prefix");

  // export-milp
  auto* milp = app.add_subcommand(
      "export-milp", "write the three-vertex polytope fit as an LP file");
  std::string milp_input, milp_out, milp_check;
  milp->add_option("--input", milp_input, "CSV or newick input")->required();
  milp->add_option("--out", milp_out, "LP output path");
  milp->add_option("--check", milp_check,
                   "verify a solution JSON (vertices or assignment)");

  // plot
  auto* plot = app.add_subcommand("plot", "SVG scatter of projected points");
  std::string plot_proj, plot_verts, plot_fit, plot_coords, plot_out = "plot.svg";
  bool plot_color = false;
  plot->add_option("--projections", plot_proj, "projections CSV")->required();
  plot->add_option("--vertices", plot_verts, "polytope vertices CSV");
  plot->add_option("--fit", plot_fit, "fit JSON for vertices and annotation");
  plot->add_option("--coords", plot_coords, "coordinate triple i,j,k (1-based)");
  plot->add_flag("--color-topology", plot_color, "color points by topology");
  plot->add_option("--out", plot_out, "SVG output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(sim_n, sim_leaves, sim_mode, sim_species, sim_seed,
                          sim_out);
    if (pca->parsed())
      return cmd_pca(pca_input, pca_method, pca_s, pca_mode, pca_window,
                     pca_max_iters, pca_seed, pca_allow, pca_exclude, pca_out);
    if (milp->parsed()) return cmd_export_milp(milp_input, milp_out, milp_check);
    if (plot->parsed())
      return cmd_plot(plot_proj, plot_verts, plot_fit, plot_coords, plot_color,
                      plot_out);
  } catch (const std::exception& ex) {
    std::cerr << "tropca: " << ex.what() << "\n";
    return kExitIo;
  }
  return kExitBadInput;
}
