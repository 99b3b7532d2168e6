#include "stockflow/closed_loop.hpp"

#include <string>

#include "stockflow/compensator.hpp"
#include "stockflow/errors.hpp"

namespace stockflow {

int ClosedLoopModel::history_length(int process) const {
  const int true_delay = params[process].delay;
  return std::max(true_delay, compensator_enabled ? nominal_delay : 0);
}

NetworkState initial_state(const ClosedLoopModel& model,
                           const Eigen::VectorXd& x0) {
  if (x0.size() != 2 * model.n()) {
    throw ConfigError("initial stock vector has length " +
                      std::to_string(x0.size()) + ", expected " +
                      std::to_string(2 * model.n()));
  }
  NetworkState state;
  state.x = x0;
  state.history.resize(model.n());
  for (int i = 0; i < model.n(); ++i) {
    state.history[i].assign(model.history_length(i), Eigen::Vector2d::Zero());
  }
  return state;
}

Eigen::VectorXd compensated_outputs(const ClosedLoopModel& model,
                                    const NetworkState& state) {
  Eigen::VectorXd y(2 * model.n());
  for (int i = 0; i < model.n(); ++i) {
    const Eigen::Vector2d x_s = state.x.segment<2>(2 * i);
    if (!model.compensator_enabled) {
      y.segment<2>(2 * i) = x_s;
      continue;
    }
    const auto& hist = state.history[i];
    const int h = static_cast<int>(hist.size());
    const int d_n = model.nominal_delay;
    std::vector<Eigen::Vector2d> window(hist.end() - d_n, hist.end());
    (void)h;
    y.segment<2>(2 * i) = compensate(x_s, window, model.output_map);
  }
  return y;
}

RouteCommands route_commands(const ClosedLoopModel& model,
                             const NetworkState& state) {
  RouteCommands cmds;
  const Eigen::VectorXd y = compensated_outputs(model, state);
  cmds.y_c = -model.incidence.transpose() * y;
  cmds.u_c.resize(model.m());
  for (int k = 0; k < model.m(); ++k) {
    cmds.u_c(k) = controller_output(cmds.y_c(k), model.controllers[k]);
  }
  return cmds;
}

NetworkState advance(const ClosedLoopModel& model, const NetworkState& state,
                     const Eigen::VectorXd& u_a,
                     const Eigen::VectorXd& additive) {
  if (u_a.size() != model.m()) {
    throw NumericError("outcome vector length mismatch");
  }
  const Eigen::VectorXd u = model.incidence * u_a;
  NetworkState next;
  next.x.resize(2 * model.n());
  next.history.resize(model.n());
  for (int i = 0; i < model.n(); ++i) {
    const Eigen::Vector2d u_i = u.segment<2>(2 * i);
    const int d = model.params[i].delay;
    const auto& hist = state.history[i];
    // u(t-d): counted back from the newest history entry
    const Eigen::Vector2d u_delayed =
        d == 0 ? u_i : hist[hist.size() - static_cast<std::size_t>(d)];
    const Eigen::Vector2d x_pre =
        state.x.segment<2>(2 * i) + additive.segment<2>(2 * i);
    next.x.segment<2>(2 * i) =
        step_process(x_pre, u_i, u_delayed, model.params[i].h);
    auto rolled = hist;
    if (!rolled.empty()) {
      rolled.erase(rolled.begin());
      rolled.push_back(u_i);
    }
    next.history[i] = std::move(rolled);
  }
  return next;
}

}  // namespace stockflow
