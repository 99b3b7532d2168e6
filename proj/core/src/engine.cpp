#include "stockflow/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stockflow/actuation.hpp"
#include "stockflow/compensator.hpp"
#include "stockflow/errors.hpp"

namespace stockflow {

Buffer buffer_from_name(const std::string& name) {
  if (name == "in") return Buffer::kInput;
  if (name == "out") return Buffer::kOutput;
  throw ConfigError("unknown buffer \"" + name + "\" (expected in/out)");
}

std::string buffer_name(Buffer b) {
  return b == Buffer::kInput ? "in" : "out";
}

namespace {

int buffer_row(int process, Buffer b) {
  return 2 * (process - 1) + (b == Buffer::kOutput ? 1 : 0);
}

std::vector<int> resolve_delays(const Scenario& scenario) {
  std::vector<int> delays(scenario.params.size());
  for (std::size_t i = 0; i < delays.size(); ++i) {
    delays[i] = scenario.params[i].delay;
  }
  if (scenario.delay_range) {
    const auto [lo, hi] = *scenario.delay_range;
    RngStream draw(scenario.delay_seed, 0x64656c6179ull);  // "delay"
    for (auto& d : delays) {
      d = lo + static_cast<int>(draw.next_uniform() * (hi - lo + 1));
    }
  }
  return delays;
}

}  // namespace

void validate(const Scenario& scenario) {
  const int n = scenario.topology.n_processes;
  const int m = scenario.topology.route_count();
  if (static_cast<int>(scenario.params.size()) != n) {
    throw ConfigError("scenario: need one (h, delay) entry per process");
  }
  if (static_cast<int>(scenario.controllers.size()) != m) {
    throw ConfigError("scenario: need one controller spec per route");
  }
  for (const auto& c : scenario.controllers) stockflow::validate(c);
  for (const auto& p : scenario.params) {
    if (!(p.h > 0.0 && p.h < 1.0)) {
      throw ConfigError("scenario: production gain must lie in (0,1)");
    }
    if (p.delay < 0) throw ConfigError("scenario: delay must be >= 0");
  }
  if (scenario.horizon < 0) throw ConfigError("scenario: horizon must be >= 0");
  if (scenario.initial.size() != 2 * n) {
    throw ConfigError("scenario: initial stocks must have length " +
                      std::to_string(2 * n));
  }
  if (scenario.replicates < 1) {
    throw ConfigError("scenario: replicates must be >= 1");
  }
  auto check_flow = [&](const ExogenousFlow& f) {
    if (f.process < 1 || f.process > n) {
      throw ConfigError("scenario: exogenous flow process out of range");
    }
    if (!std::isfinite(f.rate)) {
      throw ConfigError("scenario: exogenous rate must be finite");
    }
  };
  for (const auto& f : scenario.inflows) check_flow(f);
  for (const auto& f : scenario.outflows) check_flow(f);
  for (const auto& d : scenario.disturbances) {
    if (d.time < 0 || d.time > scenario.horizon) {
      throw ConfigError("scenario: disturbance time outside [0, horizon]");
    }
    if (d.process < 1 || d.process > n) {
      throw ConfigError("scenario: disturbance process out of range");
    }
    if (d.amount < 0 || d.sign * d.sign != 1) {
      throw ConfigError("scenario: disturbance needs amount >= 0, sign +-1");
    }
  }
  if (scenario.delay_range) {
    const auto [lo, hi] = *scenario.delay_range;
    if (lo < 0 || hi < lo) throw ConfigError("scenario: bad delay range");
  }
  if (scenario.compensator_enabled && !scenario.nominal_delay_is_max &&
      scenario.nominal_delay < 1) {
    throw ConfigError("scenario: compensator needs nominal delay >= 1");
  }
}

ClosedLoopModel build_model(const Scenario& scenario) {
  validate(scenario);
  ClosedLoopModel model;
  model.topology = scenario.topology;
  model.incidence = incidence(model.topology);
  model.params = scenario.params;
  const std::vector<int> delays = resolve_delays(scenario);
  for (std::size_t i = 0; i < delays.size(); ++i) {
    model.params[i].delay = delays[i];
  }
  model.controllers = scenario.controllers;
  model.compensator_enabled = scenario.compensator_enabled;
  if (model.compensator_enabled) {
    model.nominal_delay =
        scenario.nominal_delay_is_max
            ? *std::max_element(delays.begin(), delays.end())
            : scenario.nominal_delay;
    const double h = model.params[0].h;
    for (const auto& p : model.params) {
      if (p.h != h) {
        throw ConfigError(
            "compensator requires a homogeneous production gain");
      }
    }
    model.omega = build_omega(h, model.nominal_delay);
    model.output_map = build_output_map(h, model.nominal_delay, model.omega);
  }
  return model;
}

Trace run(const Scenario& scenario, int replicate, const RunOptions& options) {
  const ClosedLoopModel model = build_model(scenario);
  const StorageKind storage = scenario_storage(scenario);
  const int n = model.n();
  const int m = model.m();

  NetworkState state = initial_state(model, scenario.initial);
  RngStream root(scenario.seed, 0);
  std::vector<RngStream> route_rng;
  route_rng.reserve(m);
  for (int k = 0; k < m; ++k) {
    route_rng.push_back(
        root.substream(static_cast<std::uint64_t>(replicate)).substream(k));
  }

  Trace trace;
  trace.x.push_back(state.x);
  for (int t = 0; t < scenario.horizon; ++t) {
    const RouteCommands cmds = route_commands(model, state);
    Eigen::VectorXd u_a(m);
    for (int k = 0; k < m; ++k) {
      u_a(k) = sample(cmds.u_c(k), route_rng[k]);
    }
    Eigen::VectorXd additive = Eigen::VectorXd::Zero(2 * n);
    for (const auto& f : scenario.inflows) {
      additive(buffer_row(f.process, f.buffer)) += f.rate;
    }
    for (const auto& f : scenario.outflows) {
      additive(buffer_row(f.process, f.buffer)) -= f.rate;
    }
    for (const auto& d : scenario.disturbances) {
      if (d.time == t) {
        additive(buffer_row(d.process, d.buffer)) += d.sign * d.amount;
      }
    }
    trace.y.push_back(compensated_outputs(model, state));
    trace.y_c.push_back(cmds.y_c);
    trace.u_c.push_back(cmds.u_c);
    trace.u_a.push_back(u_a);
    trace.storage.push_back(storage_value(model, state, storage));
    if (options.compute_drift) {
      trace.drift.push_back(expected_drift(model, state, storage));
    }
    state = advance(model, state, u_a, additive);
    if (scenario.clamp_negative) {
      state.x = state.x.cwiseMax(0.0);
    }
    trace.x.push_back(state.x);
  }
  trace.consensus_error = consensus_error_series(trace.x);
  return trace;
}

ReplicateStats run_replicates(const Scenario& scenario,
                              const RunOptions& options) {
  const int t1 = scenario.horizon + 1;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(t1);
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(t1);
  for (int r = 0; r < scenario.replicates; ++r) {
    const Trace trace = run(scenario, r, options);
    for (int t = 0; t < t1; ++t) {
      sum(t) += trace.consensus_error[t];
      sq(t) += trace.consensus_error[t] * trace.consensus_error[t];
    }
  }
  ReplicateStats stats;
  stats.mean.resize(t1);
  stats.stddev.resize(t1);
  const double r = scenario.replicates;
  for (int t = 0; t < t1; ++t) {
    stats.mean[t] = sum(t) / r;
    const double var = std::max(0.0, sq(t) / r - stats.mean[t] * stats.mean[t]);
    stats.stddev[t] = std::sqrt(var);
  }
  return stats;
}

std::vector<double> consensus_error_series(
    const std::vector<Eigen::VectorXd>& x) {
  std::vector<double> err;
  err.reserve(x.size());
  for (const auto& v : x) {
    err.push_back((v.array() - v.mean()).abs().maxCoeff());
  }
  return err;
}

StorageKind scenario_storage(const Scenario& scenario) {
  return scenario.compensator_enabled ? StorageKind::kAugmentedOmega
                                      : StorageKind::kErrorIdentity;
}

namespace {

Scenario base_reference() {
  Scenario s;
  s.topology = build_cyclic(6);
  s.params.assign(6, ProcessParams{0.1, 0});
  s.horizon = 300;
  s.initial.resize(12);
  const double in[] = {15, 40, 30, 10, 5, 2};
  const double out[] = {27, 25, 2, 15, 30, 17};
  for (int i = 0; i < 6; ++i) {
    s.initial(2 * i) = in[i];
    s.initial(2 * i + 1) = out[i];
  }
  s.inflows.push_back({1, Buffer::kInput, 0.05});
  s.outflows.push_back({6, Buffer::kOutput, 0.05});
  s.disturbances.push_back({150, 4, Buffer::kOutput, 15.0, -1});
  s.seed = 20240615;
  s.replicates = 1;
  return s;
}

void set_controllers(Scenario& s, double gain, NormalizerKind kind,
                     double delta) {
  ControllerSpec spec;
  spec.gain = gain;
  spec.normalizer = kind;
  spec.delta = delta;
  s.controllers.assign(s.topology.route_count(), spec);
}

void set_delays(Scenario& s, int d) {
  for (auto& p : s.params) p.delay = d;
}

}  // namespace

std::vector<Scenario> build_reference_tests() {
  const double h = 0.1;
  const double delta_p1 = 2.0 * gamma_min_nodelay(h);
  std::vector<Scenario> tests;

  {
    Scenario s = base_reference();
    s.name = "1";
    set_controllers(s, 0.30, NormalizerKind::kAtanDeadZone, delta_p1);
    tests.push_back(std::move(s));
  }
  {
    Scenario s = base_reference();
    s.name = "2-1";
    set_delays(s, 5);
    set_controllers(s, 0.75, NormalizerKind::kAtanPlain, delta_p1);
    tests.push_back(std::move(s));
  }
  {
    Scenario s = base_reference();
    s.name = "2-2";
    set_delays(s, 5);
    set_controllers(s, 0.75, NormalizerKind::kAtanDeadZone, delta_p1);
    tests.push_back(std::move(s));
  }
  {
    Scenario s = base_reference();
    s.name = "2-3";
    set_delays(s, 5);
    s.compensator_enabled = true;
    s.nominal_delay = 5;
    set_controllers(s, 0.75, NormalizerKind::kAtanDeadZone,
                    2.0 * gamma_min_delay(h, 5));
    tests.push_back(std::move(s));
  }
  const std::pair<int, int> range{8, 12};
  const std::uint64_t delay_seed = 99;  // shared so 3-x runs are paired
  {
    Scenario s = base_reference();
    s.name = "3-1";
    s.delay_range = range;
    s.delay_seed = delay_seed;
    set_controllers(s, 0.75, NormalizerKind::kAtanPlain, delta_p1);
    tests.push_back(std::move(s));
  }
  {
    Scenario s = base_reference();
    s.name = "3-2";
    s.delay_range = range;
    s.delay_seed = delay_seed;
    set_controllers(s, 0.75, NormalizerKind::kAtanDeadZone, delta_p1);
    tests.push_back(std::move(s));
  }
  {
    Scenario s = base_reference();
    s.name = "3-3";
    s.delay_range = range;
    s.delay_seed = delay_seed;
    s.compensator_enabled = true;
    s.nominal_delay_is_max = true;
    // margin sized for the nominal (worst-case) delay
    const std::vector<int> delays = resolve_delays(s);
    const int d_n = *std::max_element(delays.begin(), delays.end());
    set_controllers(s, 0.75, NormalizerKind::kAtanDeadZone,
                    2.0 * gamma_min_delay(h, d_n));
    tests.push_back(std::move(s));
  }
  return tests;
}

Scenario reference_test(const std::string& id) {
  for (auto& s : build_reference_tests()) {
    if (s.name == id) return s;
  }
  throw ConfigError("unknown reference test \"" + id +
                    "\" (expected 1, 2-1, 2-2, 2-3, 3-1, 3-2, 3-3)");
}

}  // namespace stockflow
