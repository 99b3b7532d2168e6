#pragma once

#include <span>

#include <Eigen/Core>

#include "stockflow/closed_loop.hpp"

namespace stockflow {

/// Quadratic supply rate W(y,u) = y'Qy + u'Ru + 2y'Su, Q and R symmetric.
struct SupplyRate {
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;
  Eigen::MatrixXd S;
};

struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;
};

/// V(x) = 0.5 x'Px with P symmetric positive semidefinite.
struct QuadraticStorage {
  Eigen::MatrixXd P;
  double value(const Eigen::VectorXd& x) const {
    return 0.5 * x.dot(P * x);
  }
};

double supply_value(const SupplyRate& supply, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& u);

/// The unique symmetric M with [x;u]' M [x;u] = 2(V(Ax+Bu) - V(x) - W(y,u)),
/// y = Cx + Du. The system is dissipative with this storage and supply iff
/// M is negative semidefinite.
Eigen::MatrixXd dissipation_certificate(const LinearSystem& sys,
                                        const QuadraticStorage& storage,
                                        const SupplyRate& supply);

bool is_nsd(const Eigen::MatrixXd& m, double tol = 1e-9);
bool is_pd(const Eigen::MatrixXd& m, double tol = 1e-9);
double max_eigenvalue(const Eigen::MatrixXd& m);
double min_eigenvalue(const Eigen::MatrixXd& m);

/// Certificate check for one undelayed process: dynamics from the local
/// production matrix, identity storage, supply (0, gamma I, 0.5 I) in the
/// convention that yields a 2*gamma input block. True iff gamma is at least
/// gamma_min_nodelay(h) (up to the eigenvalue tolerance).
bool check_local_dissipativity(double h, double gamma, double tol = 1e-9);

/// Bisection for the smallest gamma passing check_local_dissipativity.
double bisect_gamma_nodelay(double h, double tol = 1e-8);

/// Network-level interconnection condition:
/// diag(delta) - B^T diag(gamma_i I_2) B positive semidefinite.
bool network_condition(std::span<const double> delta_per_route,
                       std::span<const double> gamma_per_process,
                       const Eigen::MatrixXd& incidence, double tol = 1e-9);

/// Smallest eigenvalue of the network-condition matrix (the margin).
double network_condition_margin(std::span<const double> delta_per_route,
                                std::span<const double> gamma_per_process,
                                const Eigen::MatrixXd& incidence);

enum class StorageKind {
  kErrorIdentity,   // V = 0.5 |x - mean(x) 1|^2 (no-delay analysis)
  kAugmentedOmega,  // V = sum_i 0.5 xbar_i' Omega xbar_i on augmented errors
};

/// Exact one-step conditional Lyapunov drift E[V(next)|state] - V(state),
/// enumerating every joint actuator outcome with product probabilities and
/// propagating each branch through the unforced closed loop. Routes whose
/// command is zero are degenerate and not branched. Throws NumericError when
/// more than max_routes routes exist.
double expected_drift(const ClosedLoopModel& model, const NetworkState& state,
                      StorageKind storage, int max_routes = 14);

/// Storage value used by expected_drift, exposed for traces and tests.
double storage_value(const ClosedLoopModel& model, const NetworkState& state,
                     StorageKind storage);

}  // namespace stockflow
