#include "tropca/fit_json.hpp"

namespace tropca {

nlohmann::json fit_result_to_json(const FitResult& r,
                                  std::span<const TropPoint> data,
                                  const SearchConfig& cfg) {
  nlohmann::json j;
  nlohmann::json model;
  model["type"] = r.is_stiefel() ? "stiefel" : "polytope";
  nlohmann::json gens = nlohmann::json::array();
  for (int i : r.generating_indices)
    gens.push_back(data[static_cast<size_t>(i)].coords());
  model["generators"] = std::move(gens);
  j["model"] = std::move(model);
  j["generating_indices"] = r.generating_indices;
  j["total_distance"] = r.total_distance;
  j["proportion_r"] = r.proportion_r;
  j["per_point_distance"] = r.per_point_distance;
  nlohmann::json projs = nlohmann::json::array();
  for (const TropPoint& p : r.projections) projs.push_back(p.coords());
  j["projections"] = std::move(projs);
  j["iterations_run"] = r.iterations_run;
  j["converged"] = r.converged;
  j["seed"] = cfg.rng_seed;
  j["mode"] = cfg.mode == SearchConfig::Mode::sample ? "sample" : "enumerate";
  return j;
}

}  // namespace tropca
