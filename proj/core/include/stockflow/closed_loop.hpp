#pragma once

#include <vector>

#include <Eigen/Core>

#include "stockflow/control.hpp"
#include "stockflow/plant.hpp"
#include "stockflow/topology.hpp"

namespace stockflow {

/// Fully wired network model: topology, per-process plants, per-route
/// controllers, and (optionally) per-process delay compensators built for a
/// nominal delay d_n. Immutable once built; shared by the simulation engine
/// and the drift oracle.
struct ClosedLoopModel {
  NetworkTopology topology;
  Eigen::MatrixXd incidence;              // 2N x M
  std::vector<ProcessParams> params;      // true per-process delay lives here
  std::vector<ControllerSpec> controllers;  // per route, in route order
  bool compensator_enabled = false;
  int nominal_delay = 0;                  // d_n (compensator design delay)
  Eigen::MatrixXd omega;                  // (2d_n+2)^2, when enabled
  Eigen::MatrixXd output_map;             // 2 x (2d_n+2), when enabled

  int n() const { return topology.n_processes; }
  int m() const { return topology.route_count(); }
  /// History length kept per process: long enough for both the true delay
  /// and the compensator's nominal delay.
  int history_length(int process) const;
};

/// Network state: stacked buffer levels plus per-process input history
/// (oldest first). History holds the applied coupling inputs u^i.
struct NetworkState {
  Eigen::VectorXd x;                                  // 2N
  std::vector<std::vector<Eigen::Vector2d>> history;  // [N][H_i]
};

/// Zero-history state from an initial stock vector.
NetworkState initial_state(const ClosedLoopModel& model,
                           const Eigen::VectorXd& x0);

/// Per-process compensated (or pass-through) measurements, stacked 2N.
Eigen::VectorXd compensated_outputs(const ClosedLoopModel& model,
                                    const NetworkState& state);

/// Sub-steps (1)-(4) of a tick: sense, compensate, couple through -B^T,
/// apply the route controllers. Returns (y_c, u_c), each of length M.
struct RouteCommands {
  Eigen::VectorXd y_c;
  Eigen::VectorXd u_c;
};
RouteCommands route_commands(const ClosedLoopModel& model,
                             const NetworkState& state);

/// Sub-steps (6)-(9): distributes realized outcomes u_a through B, adds the
/// exogenous/disturbance vector to the state, advances every plant with its
/// true delay, and rolls the history buffers.
NetworkState advance(const ClosedLoopModel& model, const NetworkState& state,
                     const Eigen::VectorXd& u_a,
                     const Eigen::VectorXd& additive);

}  // namespace stockflow
