#include "stockflow/topology.hpp"

#include <set>
#include <string>

#include "stockflow/errors.hpp"

namespace stockflow {

NetworkTopology make_topology(int n_processes, std::vector<Route> routes) {
  if (n_processes < 1) {
    throw ConfigError("topology: need at least one process, got " +
                      std::to_string(n_processes));
  }
  std::set<std::pair<int, int>> seen;
  for (const Route& r : routes) {
    if (r.source < 1 || r.source > n_processes || r.destination < 1 ||
        r.destination > n_processes) {
      throw ConfigError("topology: route " + std::to_string(r.source) + "->" +
                        std::to_string(r.destination) + " out of range [1," +
                        std::to_string(n_processes) + "]");
    }
    if (r.source == r.destination) {
      throw ConfigError("topology: self-loop route at process " +
                        std::to_string(r.source));
    }
    if (!seen.insert({r.source, r.destination}).second) {
      throw ConfigError("topology: duplicate route " +
                        std::to_string(r.source) + "->" +
                        std::to_string(r.destination));
    }
  }
  NetworkTopology t;
  t.n_processes = n_processes;
  t.routes = std::move(routes);
  t.in_neighbors.resize(n_processes);
  t.out_neighbors.resize(n_processes);
  for (const Route& r : t.routes) {
    t.out_neighbors[r.source - 1].push_back(r.destination);
    t.in_neighbors[r.destination - 1].push_back(r.source);
  }
  return t;
}

NetworkTopology build_cyclic(int n_processes) {
  if (n_processes < 2) {
    throw ConfigError("cyclic topology needs N >= 2, got " +
                      std::to_string(n_processes));
  }
  std::vector<Route> routes;
  routes.reserve(n_processes);
  for (int i = 1; i <= n_processes; ++i) {
    routes.push_back({i, i % n_processes + 1});
  }
  return make_topology(n_processes, std::move(routes));
}

Eigen::MatrixXd incidence(const NetworkTopology& topology) {
  const int n = topology.n_processes;
  const int m = topology.route_count();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * n, m);
  for (int col = 0; col < m; ++col) {
    const Route& r = topology.routes[col];
    b(2 * (r.source - 1) + 1, col) = -1.0;    // source output-buffer
    b(2 * (r.destination - 1), col) = 1.0;    // destination input-buffer
  }
  return b;
}

GramDecomposition gram_decomposition(const Eigen::MatrixXd& incidence_matrix) {
  const auto m = incidence_matrix.cols();
  GramDecomposition g;
  g.scale = 2.0 * Eigen::MatrixXd::Identity(m, m);
  g.line_graph = incidence_matrix.transpose() * incidence_matrix - g.scale;
  return g;
}

}  // namespace stockflow
