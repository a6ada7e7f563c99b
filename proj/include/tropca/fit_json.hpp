#ifndef TROPCA_FIT_JSON_HPP
#define TROPCA_FIT_JSON_HPP

#include <span>

#include "json.hpp"
#include "tropca/fitting.hpp"

namespace tropca {

/// JSON document for a fit: model type and generator rows, statistics,
/// per-point distances, projections, seed and mode. The caller supplies the
/// data so generator rows can be embedded.
nlohmann::json fit_result_to_json(const FitResult& r,
                                  std::span<const TropPoint> data,
                                  const SearchConfig& cfg);

}  // namespace tropca

#endif  // TROPCA_FIT_JSON_HPP
