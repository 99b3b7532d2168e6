#include <doctest.h>

#include <cctype>
#include <sstream>
#include <string>

#include "stockflow/engine.hpp"
#include "stockflow/errors.hpp"
#include "stockflow/scenario_io.hpp"

using namespace stockflow;

namespace {

const char* kMinimalDoc = R"(# comment
[topology]
cyclic = 3

[plant]
h = 0.1
delay = 2

[controller]
gain = 0.5
normalizer = "atan_dz"
delta = 1.25

[run]
horizon = 20
initial_input = [1, 2, 3]
initial_output = [4, 5, 6]
seed = 9
)";

std::string expect_error(const std::string& doc) {
  try {
    parse_scenario(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a minimal document") {
  const Scenario s = parse_scenario(kMinimalDoc);
  CHECK(s.topology.n_processes == 3);
  CHECK(s.topology.route_count() == 3);
  CHECK(s.params[0].h == doctest::Approx(0.1));
  CHECK(s.params[2].delay == 2);
  CHECK(s.controllers.size() == 3);
  CHECK(s.controllers[1].gain == doctest::Approx(0.5));
  CHECK(s.controllers[1].delta == doctest::Approx(1.25));
  CHECK(s.horizon == 20);
  CHECK(s.seed == 9);
  CHECK(s.initial(0) == doctest::Approx(1.0));
  CHECK(s.initial(5) == doctest::Approx(6.0));
  CHECK_FALSE(s.compensator_enabled);
  CHECK(s.replicates == 1);
}

TEST_CASE("per-route overrides and optional sections") {
  std::string doc = kMinimalDoc;
  doc += R"(
[[route_controller]]
route = 2
normalizer = "sat_dz"
theta_m = 6.0

[compensator]
enabled = true
nominal_delay = 2

[exogenous]
inflow_process = 1
inflow_buffer = "in"
inflow_rate = 0.05

[[disturbances]]
time = 10
process = 3
buffer = "out"
amount = 2.5
sign = -1
)";
  const Scenario s = parse_scenario(doc);
  CHECK(s.controllers[1].normalizer == NormalizerKind::kSaturationDeadZone);
  CHECK(s.controllers[1].theta_m == doctest::Approx(6.0));
  CHECK(s.controllers[0].normalizer == NormalizerKind::kAtanDeadZone);
  CHECK(s.compensator_enabled);
  CHECK(s.nominal_delay == 2);
  REQUIRE(s.inflows.size() == 1);
  CHECK(s.inflows[0].rate == doctest::Approx(0.05));
  REQUIRE(s.disturbances.size() == 1);
  CHECK(s.disturbances[0].sign == -1);
  CHECK(s.disturbances[0].buffer == Buffer::kOutput);
}

TEST_CASE("diagnostics carry positions") {
  // unknown key inside a known section
  std::string doc = kMinimalDoc;
  doc += "\n[exogenous]\nmystery = 1\n";
  std::string msg = expect_error(doc);
  CHECK(msg.find("unknown key \"mystery\"") != std::string::npos);
  CHECK(msg.rfind("scenario:", 0) == 0);
  CHECK(std::isdigit(static_cast<unsigned char>(msg[9])));  // scenario:L:C:

  CHECK(expect_error("[nowhere]\n").find("unknown section [nowhere]") !=
        std::string::npos);
  CHECK(expect_error("key = 1\n").find("outside a section") !=
        std::string::npos);
  CHECK(expect_error("[topology]\ncyclic = \n").find("missing value") !=
        std::string::npos);
  CHECK(expect_error("[topology]\ncyclic = banana\n")
            .find("cannot parse value") != std::string::npos);
  CHECK(expect_error("[topology]\ncyclic = 3\ncyclic = 4\n")
            .find("duplicate key") != std::string::npos);
  CHECK(expect_error("[topology]\n[topology]\n").find("duplicate section") !=
        std::string::npos);

  // type errors
  std::string bad_type = kMinimalDoc;
  const auto pos = bad_type.find("horizon = 20");
  bad_type.replace(pos, 12, "horizon = \"x\"");
  CHECK(expect_error(bad_type).find("must be an integer") !=
        std::string::npos);

  // missing required section
  CHECK(expect_error("[topology]\ncyclic = 3\n").find("missing [plant]") !=
        std::string::npos);
}

TEST_CASE("serialization round-trips every built-in reference scenario") {
  for (const Scenario& s : build_reference_tests()) {
    const std::string text = serialize_scenario(s);
    const Scenario back = parse_scenario(text);
    CHECK(serialize_scenario(back) == text);
    CHECK(back.name == s.name);
    CHECK(back.seed == s.seed);
    CHECK(back.horizon == s.horizon);
    CHECK((back.initial - s.initial).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.compensator_enabled == s.compensator_enabled);
    CHECK(back.delay_range == s.delay_range);
    CHECK(back.nominal_delay_is_max == s.nominal_delay_is_max);
    REQUIRE(back.controllers.size() == s.controllers.size());
    for (std::size_t k = 0; k < s.controllers.size(); ++k) {
      CHECK(back.controllers[k].gain == s.controllers[k].gain);
      CHECK(back.controllers[k].normalizer == s.controllers[k].normalizer);
      CHECK(back.controllers[k].delta ==
            doctest::Approx(s.controllers[k].delta).epsilon(1e-11));
    }
    // identical runs from the round-tripped configuration
    Scenario short_a = s, short_b = back;
    short_a.disturbances.clear();
    short_b.disturbances.clear();
    short_a.horizon = short_b.horizon = 25;
    const Trace ta = run(short_a, 0);
    const Trace tb = run(short_b, 0);
    for (int t = 0; t <= 25; ++t) {
      CHECK((ta.x[t] - tb.x[t]).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("trace csv round-trips") {
  Scenario s = reference_test("1");
  s.disturbances.clear();
  s.horizon = 30;
  RunOptions opts;
  opts.compute_drift = true;
  const Trace tr = run(s, 0, opts);
  const std::string csv = trace_to_csv(tr, 6);

  // deterministic bytes for a fixed seed
  CHECK(trace_to_csv(run(s, 0, opts), 6) == csv);

  std::istringstream is(csv);
  const Trace back = read_trace_csv(is, 6, 6);
  REQUIRE(back.x.size() == tr.x.size());
  REQUIRE(back.u_a.size() == tr.u_a.size());
  REQUIRE(back.drift.size() == tr.drift.size());
  for (std::size_t t = 0; t < tr.x.size(); ++t) {
    CHECK((back.x[t] - tr.x[t]).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(back.consensus_error[t] ==
          doctest::Approx(tr.consensus_error[t]).epsilon(1e-9));
  }
  for (int t = 0; t < tr.ticks(); ++t) {
    CHECK(back.u_a[t] == tr.u_a[t]);
    CHECK((back.u_c[t] - tr.u_c[t]).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(back.storage[t] == doctest::Approx(tr.storage[t]).epsilon(1e-9));
    CHECK(back.drift[t] == doctest::Approx(tr.drift[t]).epsilon(1e-6));
  }

  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header.find("t,x_in_1,x_out_1") == 0);
  CHECK(header.find("u_a_6,V,drift,consensus_error") != std::string::npos);
}
