#include "stockflow/plant.hpp"

#include <string>

#include "stockflow/errors.hpp"

namespace stockflow {

Eigen::Matrix2d local_dynamics_matrix(double h) {
  if (!(h > 0.0 && h < 1.0)) {
    throw ConfigError("production gain h must lie in (0,1), got " +
                      std::to_string(h));
  }
  Eigen::Matrix2d a;
  a << 1 - h, h, h, 1 - h;
  return a;
}

double production_rate(const Eigen::Vector2d& state, double h) {
  return -h * (state(1) - state(0));
}

Eigen::Vector2d step_process(const Eigen::Vector2d& state,
                             const Eigen::Vector2d& u_now,
                             const Eigen::Vector2d& u_delayed, double h) {
  return local_dynamics_matrix(h) * state + output_selector() * u_now +
         input_selector() * u_delayed;
}

AugmentedPlant augment(const ProcessParams& params) {
  if (params.delay < 1) {
    throw ConfigError("augment requires delay >= 1; use the plain plant");
  }
  const int d = params.delay;
  const int n = 2 * d + 2;
  AugmentedPlant plant;
  plant.delay = d;
  plant.A_bar = Eigen::MatrixXd::Zero(n, n);
  plant.A_bar.topLeftCorner<2, 2>() = local_dynamics_matrix(params.h);
  plant.A_bar.block<2, 2>(0, 2) = input_selector();
  // history shift chain: z_k(t+1) = z_{k-1}(t)
  for (int r = 1; r < d; ++r) {
    plant.A_bar.block<2, 2>(2 * r, 2 * r + 2) = Eigen::Matrix2d::Identity();
  }
  plant.B_bar = Eigen::MatrixXd::Zero(n, 2);
  plant.B_bar.topRows<2>() = output_selector();
  plant.B_bar.bottomRows<2>() = Eigen::Matrix2d::Identity();
  return plant;
}

}  // namespace stockflow
