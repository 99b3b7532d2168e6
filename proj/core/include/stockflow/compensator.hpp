#pragma once

#include <vector>

#include <Eigen/Core>

namespace stockflow {

/// Storage weight for the delay-augmented plant, (2d+2) x (2d+2), built by
/// the block recursion: identity diagonal blocks, a first-row chain of
/// A-products, a second row of input-selector products, down-shift copies,
/// and symmetric completion. Positive definite for all h in (0,1), d >= 1.
Eigen::MatrixXd build_omega(double h, int d);

/// Static delay-compensator output map C_bar, 2 x (2d+2). The authoritative
/// construction is B_bar^T * Omega * A_bar, which makes the cross blocks of
/// the dissipation certificate vanish identically; the blockwise closed-form
/// is computed alongside and a mismatch beyond 1e-12 emits a warning on
/// stderr (the identity-derived value is always the one returned).
Eigen::MatrixXd build_output_map(double h, int d, const Eigen::MatrixXd& omega);

/// Blockwise closed-form of the output map (test cross-check).
Eigen::MatrixXd literal_output_map(double h, int d,
                                   const Eigen::MatrixXd& omega);

/// Online compensator: y = C_1 x_s + sum_j C_{j+1} u(t-d+j-1).
/// history holds the last d applied coupling inputs, oldest first.
Eigen::Vector2d compensate(const Eigen::Vector2d& state_measurement,
                           const std::vector<Eigen::Vector2d>& history,
                           const Eigen::MatrixXd& c_blocks);

/// Minimal passivity level 1/(2(1-h)) of the undelayed process.
double gamma_min_nodelay(double h);

/// Minimal passivity level of the compensated delayed process:
/// (3 + sqrt(1 + ((1-2h)^d - 1)^2)) / 4.
double gamma_min_delay(double h, int d);

}  // namespace stockflow
