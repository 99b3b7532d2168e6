#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

namespace stockflow {

/// A directed transport route between two production processes.
/// Process indices are 1-based throughout the public interface.
struct Route {
  int source = 0;
  int destination = 0;
  friend bool operator==(const Route&, const Route&) = default;
};

/// Production network: N processes plus an ordered route list. The route
/// order is fixed at construction and defines actuator/controller indexing
/// everywhere downstream (command vectors, trace columns, RNG streams).
struct NetworkTopology {
  int n_processes = 0;
  std::vector<Route> routes;
  /// in_neighbors[i]: processes that ship into process i+1 (1-based values).
  std::vector<std::vector<int>> in_neighbors;
  /// out_neighbors[i]: processes that process i+1 ships to.
  std::vector<std::vector<int>> out_neighbors;

  int route_count() const { return static_cast<int>(routes.size()); }
};

/// Validates and completes a topology from a process count and route list.
/// Throws ConfigError on out-of-range endpoints, self-loops, or duplicates.
NetworkTopology make_topology(int n_processes, std::vector<Route> routes);

/// The N-cycle 1->2->...->N->1. Requires N >= 2.
NetworkTopology build_cyclic(int n_processes);

/// Signed incidence matrix, 2N x M. Row 2i holds the input-buffer and row
/// 2i+1 the output-buffer of process i+1 (0-based rows). Column m carries
/// -1 at the source output-buffer and +1 at the destination input-buffer,
/// so -B^T x stacks the per-route imbalances x_out(src) - x_in(dst).
Eigen::MatrixXd incidence(const NetworkTopology& topology);

/// B^T B split as 2 I_M + line-graph adjacency.
struct GramDecomposition {
  Eigen::MatrixXd scale;       // 2 I_M
  Eigen::MatrixXd line_graph;  // B^T B - 2 I_M, zero diagonal
};

GramDecomposition gram_decomposition(const Eigen::MatrixXd& incidence_matrix);

}  // namespace stockflow
