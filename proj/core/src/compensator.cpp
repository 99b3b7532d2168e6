#include "stockflow/compensator.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "stockflow/errors.hpp"
#include "stockflow/plant.hpp"

namespace stockflow {

namespace {

void check_params(double h, int d) {
  if (!(h > 0.0 && h < 1.0)) {
    throw ConfigError("production gain h must lie in (0,1)");
  }
  if (d < 1) {
    throw ConfigError("delay must be >= 1, got " + std::to_string(d));
  }
}

Eigen::Block<Eigen::MatrixXd, 2, 2> blk(Eigen::MatrixXd& m, int j, int k) {
  return m.block<2, 2>(2 * j, 2 * k);
}

}  // namespace

Eigen::MatrixXd build_omega(double h, int d) {
  check_params(h, d);
  const Eigen::Matrix2d a = local_dynamics_matrix(h);
  const Eigen::Matrix2d b_in = input_selector();
  const int nb = d + 1;  // block count per side
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * nb, 2 * nb);
  for (int j = 0; j < nb; ++j) blk(omega, j, j) = Eigen::Matrix2d::Identity();
  blk(omega, 0, 1) = a * b_in;
  for (int j = 2; j < nb; ++j) {
    blk(omega, 0, j) = a * blk(omega, 0, j - 1);
    blk(omega, 1, j) = b_in * blk(omega, 0, j - 1);
  }
  for (int j = 2; j < nb; ++j) {
    for (int k = j + 1; k < nb; ++k) {
      blk(omega, j, k) = blk(omega, j - 1, k - 1);
    }
  }
  // symmetric completion below the diagonal
  for (int j = 1; j < nb; ++j) {
    for (int k = 0; k < j; ++k) {
      blk(omega, j, k) = blk(omega, k, j).transpose();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(omega,
                                                    Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw NumericError("storage matrix lost positive definiteness (h=" +
                       std::to_string(h) + ", d=" + std::to_string(d) + ")");
  }
  return omega;
}

Eigen::MatrixXd build_output_map(double h, int d,
                                 const Eigen::MatrixXd& omega) {
  check_params(h, d);
  if (omega.rows() != 2 * d + 2 || omega.cols() != 2 * d + 2) {
    throw ConfigError("omega size does not match delay");
  }
  const AugmentedPlant plant = augment({h, d});
  Eigen::MatrixXd c_bar = plant.B_bar.transpose() * omega * plant.A_bar;
  const Eigen::MatrixXd literal = literal_output_map(h, d, omega);
  const double mismatch = (c_bar - literal).cwiseAbs().maxCoeff();
  if (mismatch > 1e-12) {
    std::cerr << "warning: closed-form compensator blocks disagree with "
                 "B^T Omega A by "
              << mismatch << " (h=" << h << ", d=" << d
              << "); using the identity-derived map\n";
  }
  return c_bar;
}

Eigen::MatrixXd literal_output_map(double h, int d,
                                   const Eigen::MatrixXd& omega) {
  const Eigen::Matrix2d a = local_dynamics_matrix(h);
  const Eigen::Matrix2d b_in = input_selector();
  const Eigen::Matrix2d b_out = output_selector();
  auto om = [&](int j, int k) { return omega.block<2, 2>(2 * j, 2 * k); };
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 2 * (d + 1));
  c.block<2, 2>(0, 0) = b_out * om(0, 0) * a + om(d, 0) * a;
  c.block<2, 2>(0, 2) = b_out * om(0, 0) * b_in + om(d, 0) * b_in;
  for (int j = 3; j <= d + 1; ++j) {
    c.block<2, 2>(0, 2 * (j - 1)) =
        b_out * om(0, j - 2) + om(d, j - 2) * b_in;
  }
  return c;
}

Eigen::Vector2d compensate(const Eigen::Vector2d& state_measurement,
                           const std::vector<Eigen::Vector2d>& history,
                           const Eigen::MatrixXd& c_blocks) {
  const int d = static_cast<int>(c_blocks.cols()) / 2 - 1;
  if (static_cast<int>(history.size()) != d) {
    throw NumericError("compensator history length " +
                       std::to_string(history.size()) + " != delay " +
                       std::to_string(d));
  }
  Eigen::Vector2d y = c_blocks.block<2, 2>(0, 0) * state_measurement;
  // history is oldest first: history[j-1] = u(t-d+j-1) pairs with C_{j+1}
  for (int j = 1; j <= d; ++j) {
    y += c_blocks.block<2, 2>(0, 2 * j) * history[j - 1];
  }
  return y;
}

double gamma_min_nodelay(double h) {
  if (!(h > 0.0 && h < 1.0)) {
    throw ConfigError("production gain h must lie in (0,1)");
  }
  return 1.0 / (2.0 * (1.0 - h));
}

double gamma_min_delay(double h, int d) {
  check_params(h, d);
  const double r = std::pow(1.0 - 2.0 * h, d) - 1.0;
  return (3.0 + std::sqrt(1.0 + r * r)) / 4.0;
}

}  // namespace stockflow
