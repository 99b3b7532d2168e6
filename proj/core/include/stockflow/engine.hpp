#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stockflow/closed_loop.hpp"
#include "stockflow/dissipativity.hpp"

namespace stockflow {

enum class Buffer { kInput, kOutput };

Buffer buffer_from_name(const std::string& name);
std::string buffer_name(Buffer b);

/// Constant per-tick material flow crossing the factory boundary.
/// rate > 0 for inflows; outflows subtract their rate.
struct ExogenousFlow {
  int process = 1;  // 1-based
  Buffer buffer = Buffer::kInput;
  double rate = 0.0;
};

/// One-shot stock change at a fixed tick. sign = +1 adds material,
/// sign = -1 removes it; amount is nonnegative.
struct Disturbance {
  int time = 0;
  int process = 1;
  Buffer buffer = Buffer::kOutput;
  double amount = 0.0;
  int sign = -1;
};

/// Full experiment configuration.
struct Scenario {
  std::string name;
  NetworkTopology topology;
  std::vector<ProcessParams> params;        // per process
  std::vector<ControllerSpec> controllers;  // per route
  bool compensator_enabled = false;
  int nominal_delay = 0;
  bool nominal_delay_is_max = false;  // "max" shorthand: d_n = max d_i
  std::vector<ExogenousFlow> inflows;
  std::vector<ExogenousFlow> outflows;
  std::vector<Disturbance> disturbances;
  int horizon = 300;
  Eigen::VectorXd initial;  // 2N, interleaved (in_1, out_1, in_2, ...)
  std::uint64_t seed = 0;
  int replicates = 1;
  bool clamp_negative = false;
  /// Optional randomized per-process delay: drawn once per scenario,
  /// uniform integer in [lo, hi], using delay_seed; overrides params delay.
  std::optional<std::pair<int, int>> delay_range;
  std::uint64_t delay_seed = 0;
};

void validate(const Scenario& scenario);

/// Resolves delay_range / nominal_delay_is_max into concrete delays and
/// builds the wired model (incidence, compensator matrices).
ClosedLoopModel build_model(const Scenario& scenario);

/// Per-step record series of one replicate. States have length T+1,
/// signals length T.
struct Trace {
  std::vector<Eigen::VectorXd> x;    // 2N each
  std::vector<Eigen::VectorXd> y;    // compensated outputs, 2N
  std::vector<Eigen::VectorXd> y_c;  // M
  std::vector<Eigen::VectorXd> u_c;  // M
  std::vector<Eigen::VectorXd> u_a;  // M, entries in {-1,0,1}
  std::vector<double> storage;       // V at t (storage of the scenario)
  std::vector<double> drift;         // exact drift at t; empty if not computed
  std::vector<double> consensus_error;  // length T+1

  int ticks() const { return static_cast<int>(u_a.size()); }
};

struct RunOptions {
  bool compute_drift = false;  // expensive: exact enumeration per tick
};

/// Runs one replicate. Replicate r draws from substream r of the scenario
/// seed, so runs are reproducible and independent across replicates.
Trace run(const Scenario& scenario, int replicate = 0,
          const RunOptions& options = {});

/// Per-step mean/std of the consensus error across all replicates.
struct ReplicateStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};
ReplicateStats run_replicates(const Scenario& scenario,
                              const RunOptions& options = {});

/// Infinity-norm deviation from the running conserved mean at every step.
std::vector<double> consensus_error_series(const std::vector<Eigen::VectorXd>& x);

/// Storage kind matching the scenario's analysis (augmented when the
/// compensator is on).
StorageKind scenario_storage(const Scenario& scenario);

/// The seven built-in reference scenarios:
/// "1", "2-1", "2-2", "2-3", "3-1", "3-2", "3-3".
std::vector<Scenario> build_reference_tests();
Scenario reference_test(const std::string& id);

}  // namespace stockflow
