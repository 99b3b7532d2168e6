#pragma once

#include <iosfwd>
#include <string>

#include "stockflow/engine.hpp"

namespace stockflow {

/// Parses a scenario document (TOML-like sections of key = value pairs;
/// see the shipped scenarios/ files for the grammar). Unknown sections or
/// keys are errors; diagnostics carry line:column positions.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Canonical re-serialization; parse(serialize(s)) is field-identical to s.
std::string serialize_scenario(const Scenario& scenario);

/// Trace CSV: header then one row per tick with
/// t, x_in_1, x_out_1, ..., y_c_1..M, u_c_1..M, u_a_1..M, V, drift,
/// consensus_error. The final row (t = T) carries only state columns and
/// the consensus error. Values use 12 significant digits; byte output is
/// deterministic for a fixed seed.
void write_trace_csv(std::ostream& os, const Trace& trace, int n_processes);
std::string trace_to_csv(const Trace& trace, int n_processes);

/// Parses a trace CSV produced by write_trace_csv.
Trace read_trace_csv(std::istream& is, int n_processes, int n_routes);

}  // namespace stockflow
