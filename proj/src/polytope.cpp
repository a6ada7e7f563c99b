#include "tropca/polytope.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tropca {

TropPolytope::TropPolytope(std::vector<TropPoint> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty())
    throw std::invalid_argument("TropPolytope: empty vertex list");
  const int e = vertices_[0].dim();
  for (const TropPoint& v : vertices_)
    if (v.dim() != e)
      throw std::invalid_argument("TropPolytope: mixed vertex dimensions");
}

TropPoint project(const TropPolytope& p, const TropPoint& x) {
  const int e = p.dim();
  if (x.dim() != e)
    throw std::invalid_argument("project: dimension mismatch");
  std::vector<double> out(static_cast<size_t>(e),
                          -std::numeric_limits<double>::infinity());
  for (const TropPoint& v : p.vertices()) {
    double lambda = x[0] - v[0];
    for (int t = 1; t < e; ++t) lambda = std::min(lambda, x[t] - v[t]);
    for (int t = 0; t < e; ++t)
      out[static_cast<size_t>(t)] = std::max(out[static_cast<size_t>(t)], lambda + v[t]);
  }
  return TropPoint(std::move(out));
}

bool contains(const TropPolytope& p, const TropPoint& x, double tol) {
  return trop_distance(x, project(p, x)) <= tol;
}

double hull_distance_serial(const TropPolytope& p,
                            std::span<const TropPoint> data) {
  if (data.empty()) throw std::invalid_argument("hull_distance: empty data");
  std::vector<double> per(data.size());
  for (size_t i = 0; i < data.size(); ++i)
    per[i] = trop_distance(data[i], project(p, data[i]));
  double total = 0.0;
  for (double d : per) total += d;
  return total;
}

double hull_distance(const TropPolytope& p, std::span<const TropPoint> data) {
  if (data.empty()) throw std::invalid_argument("hull_distance: empty data");
  const int n = static_cast<int>(data.size());
  std::vector<double> per(static_cast<size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const TropPoint& d = data[static_cast<size_t>(i)];
    per[static_cast<size_t>(i)] = trop_distance(d, project(p, d));
  }
  double total = 0.0;
  for (double d : per) total += d;
  return total;
}

std::vector<TropPoint> project_many_serial(const TropPolytope& p,
                                           std::span<const TropPoint> data) {
  std::vector<TropPoint> out;
  out.reserve(data.size());
  for (const TropPoint& d : data) out.push_back(project(p, d));
  return out;
}

std::vector<TropPoint> project_many(const TropPolytope& p,
                                    std::span<const TropPoint> data) {
  const int n = static_cast<int>(data.size());
  std::vector<TropPoint> out(static_cast<size_t>(n),
                             TropPoint(std::vector<double>(2, 0.0)));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = project(p, data[static_cast<size_t>(i)]);
  return out;
}

}  // namespace tropca
