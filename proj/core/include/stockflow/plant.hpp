#pragma once

#include <Eigen/Core>

namespace stockflow {

/// Per-process parameters: production gain h in (0,1) and the transport
/// delay (in ticks) on the route feeding this process's input buffer.
struct ProcessParams {
  double h = 0.1;
  int delay = 0;
};

/// Selector for the delayed (input-buffer) component of a coupling input.
inline Eigen::Matrix2d input_selector() {
  Eigen::Matrix2d b;
  b << 1, 0, 0, 0;
  return b;
}

/// Selector for the immediate (output-buffer) component.
inline Eigen::Matrix2d output_selector() {
  return Eigen::Matrix2d::Identity() - input_selector();
}

/// [[1-h, h], [h, 1-h]]: symmetric doubly stochastic, eigenvalues {1, 1-2h}.
/// Throws ConfigError unless 0 < h < 1.
Eigen::Matrix2d local_dynamics_matrix(double h);

/// Production rate -h * (x_out - x_in) moving material between the buffers.
double production_rate(const Eigen::Vector2d& state, double h);

/// One step of the local stock dynamics. The output-buffer component of the
/// coupling input applies immediately; the input-buffer component is the one
/// that arrived this tick (i.e. was issued delay ticks ago). For delay == 0
/// pass the same vector twice.
Eigen::Vector2d step_process(const Eigen::Vector2d& state,
                             const Eigen::Vector2d& u_now,
                             const Eigen::Vector2d& u_delayed, double h);

/// Delay-augmented realization. State stacks (x, z_d, ..., z_1) with
/// z_k = u(t-k), so the dimension is 2d+2.
struct AugmentedPlant {
  Eigen::MatrixXd A_bar;  // (2d+2) x (2d+2)
  Eigen::MatrixXd B_bar;  // (2d+2) x 2
  int delay = 0;
};

/// Builds the augmented plant for d >= 1. Iterating (A_bar, B_bar) on the
/// stacked state reproduces step_process fed with the same input sequence.
AugmentedPlant augment(const ProcessParams& params);

}  // namespace stockflow
