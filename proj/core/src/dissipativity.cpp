#include "stockflow/dissipativity.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "stockflow/compensator.hpp"
#include "stockflow/errors.hpp"

namespace stockflow {

namespace {

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

}  // namespace

double supply_value(const SupplyRate& supply, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& u) {
  if (supply.Q.rows() != y.size() || supply.R.rows() != u.size() ||
      supply.S.rows() != y.size() || supply.S.cols() != u.size()) {
    throw ConfigError("supply rate dimensions do not match (y,u)");
  }
  return y.dot(supply.Q * y) + u.dot(supply.R * u) + 2.0 * y.dot(supply.S * u);
}

Eigen::MatrixXd dissipation_certificate(const LinearSystem& sys,
                                        const QuadraticStorage& storage,
                                        const SupplyRate& supply) {
  const auto& A = sys.A;
  const auto& B = sys.B;
  const auto& C = sys.C;
  const auto& D = sys.D;
  const auto& P = storage.P;
  if (A.rows() != P.rows() || C.cols() != A.rows() || B.rows() != A.rows()) {
    throw ConfigError("certificate dimensions do not match");
  }
  const auto n = A.rows();
  const auto p = B.cols();
  Eigen::MatrixXd m(n + p, n + p);
  m.topLeftCorner(n, n) =
      A.transpose() * P * A - P - 2.0 * C.transpose() * supply.Q * C;
  m.topRightCorner(n, p) = A.transpose() * P * B -
                           2.0 * C.transpose() * supply.Q * D -
                           2.0 * C.transpose() * supply.S;
  m.bottomLeftCorner(p, n) = m.topRightCorner(n, p).transpose();
  m.bottomRightCorner(p, p) =
      B.transpose() * P * B - 2.0 * D.transpose() * supply.Q * D - 2.0 * supply.R -
      4.0 * symmetrize(D.transpose() * supply.S);
  return symmetrize(m);
}

double max_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ConfigError("matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(m),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ConfigError("matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(m),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_nsd(const Eigen::MatrixXd& m, double tol) {
  return max_eigenvalue(m) <= tol;
}

bool is_pd(const Eigen::MatrixXd& m, double tol) {
  return min_eigenvalue(m) > tol;
}

bool check_local_dissipativity(double h, double gamma, double tol) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  LinearSystem sys;
  sys.A = local_dynamics_matrix(h);
  sys.B = Eigen::Matrix2d::Identity();
  sys.C = Eigen::Matrix2d::Identity();
  sys.D = Eigen::Matrix2d::Zero();
  QuadraticStorage storage{Eigen::Matrix2d::Identity()};
  SupplyRate supply{Eigen::Matrix2d::Zero(),
                    gamma * Eigen::Matrix2d::Identity(),
                    0.5 * Eigen::Matrix2d::Identity()};
  return is_nsd(dissipation_certificate(sys, storage, supply), tol);
}

double bisect_gamma_nodelay(double h, double tol) {
  double lo = 1e-6, hi = 64.0;
  if (check_local_dissipativity(h, lo)) return lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (check_local_dissipativity(h, mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

Eigen::MatrixXd network_condition_matrix(
    std::span<const double> delta_per_route,
    std::span<const double> gamma_per_process,
    const Eigen::MatrixXd& incidence) {
  const auto m = incidence.cols();
  const auto n2 = incidence.rows();
  if (static_cast<long>(delta_per_route.size()) != m ||
      static_cast<long>(gamma_per_process.size()) * 2 != n2) {
    throw ConfigError("network condition: size mismatch");
  }
  Eigen::VectorXd gamma_diag(n2);
  for (long i = 0; i < n2 / 2; ++i) {
    gamma_diag(2 * i) = gamma_per_process[i];
    gamma_diag(2 * i + 1) = gamma_per_process[i];
  }
  Eigen::MatrixXd lhs =
      Eigen::VectorXd::Map(delta_per_route.data(), m).asDiagonal();
  return lhs -
         incidence.transpose() * gamma_diag.asDiagonal() * incidence;
}

}  // namespace

double network_condition_margin(std::span<const double> delta_per_route,
                                std::span<const double> gamma_per_process,
                                const Eigen::MatrixXd& incidence) {
  return min_eigenvalue(
      network_condition_matrix(delta_per_route, gamma_per_process, incidence));
}

bool network_condition(std::span<const double> delta_per_route,
                       std::span<const double> gamma_per_process,
                       const Eigen::MatrixXd& incidence, double tol) {
  return network_condition_margin(delta_per_route, gamma_per_process,
                                  incidence) >= -tol;
}

double storage_value(const ClosedLoopModel& model, const NetworkState& state,
                     StorageKind storage) {
  const double mean = state.x.mean();
  if (storage == StorageKind::kErrorIdentity) {
    return 0.5 * (state.x.array() - mean).square().sum();
  }
  if (!model.compensator_enabled) {
    throw NumericError("augmented storage requires a compensator model");
  }
  const int d_n = model.nominal_delay;
  double v = 0.0;
  Eigen::VectorXd xb(2 * d_n + 2);
  for (int i = 0; i < model.n(); ++i) {
    xb.head<2>() = state.x.segment<2>(2 * i).array() - mean;
    const auto& hist = state.history[i];
    // stacked as (x, z_dn, ..., z_1) with z_k = u(t-k)
    for (int k = d_n; k >= 1; --k) {
      xb.segment<2>(2 + 2 * (d_n - k)) = hist[hist.size() - k];
    }
    v += 0.5 * xb.dot(model.omega * xb);
  }
  return v;
}

double expected_drift(const ClosedLoopModel& model, const NetworkState& state,
                      StorageKind storage, int max_routes) {
  if (model.m() > max_routes) {
    throw NumericError("drift enumeration limited to " +
                       std::to_string(max_routes) + " routes, model has " +
                       std::to_string(model.m()));
  }
  const RouteCommands cmds = route_commands(model, state);
  std::vector<int> active;
  for (int k = 0; k < model.m(); ++k) {
    if (cmds.u_c(k) != 0.0) active.push_back(k);
  }
  const double v0 = storage_value(model, state, storage);
  const Eigen::VectorXd zero_additive = Eigen::VectorXd::Zero(2 * model.n());
  Eigen::VectorXd u_a = Eigen::VectorXd::Zero(model.m());
  double drift = -v0;

  // odometer over {+1,0,-1}^active with product probabilities
  const std::size_t k_active = active.size();
  std::vector<int> digit(k_active, 0);
  const int outcomes[3] = {1, 0, -1};
  while (true) {
    double p = 1.0;
    for (std::size_t j = 0; j < k_active; ++j) {
      const OutcomeDistribution d = outcome_distribution(cmds.u_c(active[j]));
      const int o = outcomes[digit[j]];
      p *= o == 1 ? d.p_plus : (o == -1 ? d.p_minus : d.p_zero);
      u_a(active[j]) = o;
    }
    if (p > 0.0) {
      const NetworkState next = advance(model, state, u_a, zero_additive);
      drift += p * storage_value(model, next, storage);
    }
    // increment odometer
    std::size_t j = 0;
    for (; j < k_active; ++j) {
      if (++digit[j] < 3) break;
      digit[j] = 0;
    }
    if (j == k_active) break;
  }
  return drift;
}

}  // namespace stockflow
