// Command-line front end: scenario simulation, design verification,
// passivity-level queries, and reference-test reproduction.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "stockflow/compensator.hpp"
#include "stockflow/dissipativity.hpp"
#include "stockflow/engine.hpp"
#include "stockflow/errors.hpp"
#include "stockflow/scenario_io.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericError = 3;

struct CheckRow {
  std::string name;
  std::string params;
  bool pass;
  double extreme;
  double threshold;
};

void print_checks(const std::vector<CheckRow>& rows) {
  std::printf("%-28s %-26s %-6s %14s %14s\n", "check", "parameters", "result",
              "extreme", "threshold");
  for (const auto& row : rows) {
    std::printf("%-28s %-26s %-6s %14.6e %14.6e\n", row.name.c_str(),
                row.params.c_str(), row.pass ? "pass" : "FAIL", row.extreme,
                row.threshold);
  }
}

std::vector<CheckRow> run_verification(const stockflow::Scenario& scenario,
                                       double tol) {
  using namespace stockflow;
  std::vector<CheckRow> rows;
  const ClosedLoopModel model = build_model(scenario);
  const int n = model.n();
  const int m = model.m();

  // local passivity level per process
  std::vector<double> gamma(n);
  for (int i = 0; i < n; ++i) {
    const double h = model.params[i].h;
    if (model.compensator_enabled) {
      gamma[i] = gamma_min_delay(h, model.nominal_delay);
    } else {
      gamma[i] = gamma_min_nodelay(h);
      const bool ok = check_local_dissipativity(h, gamma[i], tol);
      rows.push_back({"local_kyp", "process " + std::to_string(i + 1) +
                                       ", gamma=" + std::to_string(gamma[i]),
                      ok, gamma[i], gamma[i]});
    }
  }

  if (model.compensator_enabled) {
    const double h = model.params[0].h;
    const int d = model.nominal_delay;
    const double lam_min = min_eigenvalue(model.omega);
    rows.push_back({"omega_pd", "d_n=" + std::to_string(d), lam_min > tol,
                    lam_min, tol});

    const AugmentedPlant plant = augment({h, d});
    const Eigen::MatrixXd decay =
        plant.A_bar.transpose() * model.omega * plant.A_bar - model.omega;
    const double lam_decay = max_eigenvalue(decay);
    rows.push_back({"state_decay_nsd", "d_n=" + std::to_string(d),
                    lam_decay <= tol, lam_decay, tol});

    const Eigen::MatrixXd cross = plant.A_bar.transpose() * model.omega *
                                      plant.B_bar -
                                  model.output_map.transpose();
    const double cross_max = cross.cwiseAbs().maxCoeff();
    rows.push_back({"cross_block_zero", "d_n=" + std::to_string(d),
                    cross_max <= 1e-12, cross_max, 1e-12});

    const double g = gamma_min_delay(h, d);
    Eigen::MatrixXd cert(2 * d + 4, 2 * d + 4);
    cert.topLeftCorner(2 * d + 2, 2 * d + 2) = decay;
    cert.topRightCorner(2 * d + 2, 2) = cross;
    cert.bottomLeftCorner(2, 2 * d + 2) = cross.transpose();
    cert.bottomRightCorner(2, 2) =
        plant.B_bar.transpose() * model.omega * plant.B_bar -
        2.0 * g * Eigen::Matrix2d::Identity();
    const double lam_cert = max_eigenvalue(cert);
    rows.push_back({"kyp_certificate_nsd",
                    "d_n=" + std::to_string(d) + ", gamma=" + std::to_string(g),
                    lam_cert <= tol, lam_cert, tol});
  }

  // network interconnection condition
  std::vector<double> delta(m);
  for (int k = 0; k < m; ++k) delta[k] = model.controllers[k].delta;
  const double margin =
      network_condition_margin(delta, gamma, model.incidence);
  rows.push_back({"network_condition", "M=" + std::to_string(m), margin >= -tol,
                  margin, -tol});

  // per-route achieved OSP margin
  std::vector<double> grid;
  for (int j = 0; j <= 10000; ++j) grid.push_back(-50.0 + 0.01 * j);
  for (int k = 0; k < m; ++k) {
    const auto& spec = model.controllers[k];
    grid.push_back(spec.delta);
    grid.push_back(-spec.delta);
    const OspCheckResult osp = verify_osp_margin(spec, spec.delta, grid);
    const double witness = osp.witnesses.empty() ? 0.0 : osp.witnesses.front();
    rows.push_back({"osp_margin",
                    "route " + std::to_string(k + 1) +
                        ", delta=" + std::to_string(spec.delta),
                    osp.pass, witness, spec.delta});
    grid.pop_back();
    grid.pop_back();
  }
  return rows;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw stockflow::ConfigError("cannot write " + path.string());
  }
  out << body;
}

void write_plot_data(const std::filesystem::path& path,
                     const stockflow::Trace& trace, int n) {
  std::ostringstream os;
  os.precision(12);
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x_in_" << i << ",x_out_" << i;
  os << "\n";
  for (std::size_t t = 0; t < trace.x.size(); ++t) {
    os << t;
    for (int j = 0; j < 2 * n; ++j) os << "," << trace.x[t](j);
    os << "\n";
  }
  write_file(path, os.str());
}

int first_settled(const std::vector<double>& err, int from, double threshold) {
  for (std::size_t t = from; t < err.size(); ++t) {
    if (err[t] <= threshold) return static_cast<int>(t);
  }
  return -1;
}

double late_window_variance(const stockflow::Trace& trace, int lo, int hi) {
  const int dims = static_cast<int>(trace.x.front().size());
  double acc = 0.0;
  for (int j = 0; j < dims; ++j) {
    double s = 0.0, sq = 0.0;
    int count = 0;
    for (int t = lo; t <= hi && t < static_cast<int>(trace.x.size()); ++t) {
      s += trace.x[t](j);
      sq += trace.x[t](j) * trace.x[t](j);
      ++count;
    }
    const double mean = s / count;
    acc += std::max(0.0, sq / count - mean * mean);
  }
  return acc / dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stock-level consensus simulator and design verifier for "
               "buffer networks with probability-controlled transport"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a scenario file");
  std::string sim_path, sim_out = ".";
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false, sim_drift = false;
  int sim_replicates = 0;
  sim->add_option("scenario", sim_path, "scenario file")->required();
  sim->add_option("--seed", sim_seed, "override scenario seed")
      ->each([&](const std::string&) { sim_seed_set = true; });
  sim->add_option("--replicates", sim_replicates, "override replicate count");
  sim->add_option("--out", sim_out, "output directory");
  sim->add_flag("--drift", sim_drift, "record the exact drift per tick (slow)");

  // verify
  auto* ver = app.add_subcommand("verify", "Check the design conditions");
  std::string ver_path;
  double ver_tol = 1e-4;
  ver->add_option("scenario", ver_path, "scenario file")->required();
  ver->add_option("--tol", ver_tol, "semidefiniteness tolerance");

  // gamma
  auto* gam = app.add_subcommand("gamma", "Print the minimal passivity level");
  gam->set_help_flag("--help", "print help");  // frees -h for the gain option
  double gam_h = 0.0;
  int gam_d = 0;
  gam->add_option("--h", gam_h, "production gain")->required();
  gam->add_option("--d", gam_d, "transport delay (0 = none)");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Run a built-in reference test");
  std::string rep_test, rep_out = ".";
  std::uint64_t rep_seed = 0;
  bool rep_seed_set = false;
  rep->add_option("--test", rep_test, "1, 2-1, 2-2, 2-3, 3-1, 3-2, 3-3")
      ->required();
  rep->add_option("--out", rep_out, "output directory");
  rep->add_option("--seed", rep_seed, "override scenario seed")
      ->each([&](const std::string&) { rep_seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (sim->parsed()) {
      stockflow::Scenario scenario = stockflow::load_scenario(sim_path);
      if (sim_seed_set) scenario.seed = sim_seed;
      if (sim_replicates > 0) scenario.replicates = sim_replicates;
      std::filesystem::create_directories(sim_out);
      stockflow::RunOptions options;
      options.compute_drift = sim_drift;
      const int n = scenario.topology.n_processes;
      for (int r = 0; r < scenario.replicates; ++r) {
        const stockflow::Trace trace = stockflow::run(scenario, r, options);
        write_file(std::filesystem::path(sim_out) /
                       ("trace_r" + std::to_string(r) + ".csv"),
                   stockflow::trace_to_csv(trace, n));
      }
      const stockflow::ReplicateStats stats =
          stockflow::run_replicates(scenario, options);
      std::ostringstream os;
      os.precision(12);
      os << "t,consensus_error_mean,consensus_error_std\n";
      for (std::size_t t = 0; t < stats.mean.size(); ++t) {
        os << t << "," << stats.mean[t] << "," << stats.stddev[t] << "\n";
      }
      write_file(std::filesystem::path(sim_out) / "summary.csv", os.str());
      return 0;
    }

    if (ver->parsed()) {
      const stockflow::Scenario scenario = stockflow::load_scenario(ver_path);
      const auto rows = run_verification(scenario, ver_tol);
      print_checks(rows);
      const bool all_pass =
          std::all_of(rows.begin(), rows.end(),
                      [](const CheckRow& r) { return r.pass; });
      return all_pass ? 0 : kExitVerifyFailed;
    }

    if (gam->parsed()) {
      using namespace stockflow;
      if (gam_d == 0) {
        const double closed = gamma_min_nodelay(gam_h);
        const double bisected = bisect_gamma_nodelay(gam_h);
        std::printf("gamma_m closed-form: %.9f\n", closed);
        std::printf("gamma_m bisection:   %.9f\n", bisected);
        std::printf("difference:          %.3e\n", std::abs(closed - bisected));
      } else {
        const double closed = gamma_min_delay(gam_h, gam_d);
        const Eigen::MatrixXd omega = build_omega(gam_h, gam_d);
        const AugmentedPlant plant = augment({gam_h, gam_d});
        const double spectral =
            max_eigenvalue(plant.B_bar.transpose() * omega * plant.B_bar) / 2.0;
        std::printf("gamma_m closed-form: %.9f\n", closed);
        std::printf("gamma_m spectral:    %.9f\n", spectral);
        std::printf("difference:          %.3e\n", std::abs(closed - spectral));
      }
      return 0;
    }

    if (rep->parsed()) {
      stockflow::Scenario scenario = stockflow::reference_test(rep_test);
      if (rep_seed_set) scenario.seed = rep_seed;
      std::filesystem::create_directories(rep_out);
      const int n = scenario.topology.n_processes;
      const stockflow::Trace trace = stockflow::run(scenario, 0);
      const std::string tag = "test" + rep_test;
      write_file(std::filesystem::path(rep_out) / (tag + "_trace.csv"),
                 stockflow::trace_to_csv(trace, n));
      write_plot_data(std::filesystem::path(rep_out) / (tag + "_plot.csv"),
                      trace, n);

      const auto& err = trace.consensus_error;
      const int settle = first_settled(err, 0, 2.5);
      int dist_time = -1;
      for (const auto& d : scenario.disturbances) dist_time = d.time;
      const int resettle =
          dist_time >= 0 ? first_settled(err, dist_time + 2, 2.5) : -1;
      const double late_var =
          late_window_variance(trace, scenario.horizon - 50, scenario.horizon);
      std::ostringstream os;
      os.precision(12);
      os << "metric,value\n";
      os << "settling_tick," << settle << "\n";
      os << "resettling_tick," << resettle << "\n";
      os << "late_window_stock_variance," << late_var << "\n";
      os << "final_consensus_error," << err.back() << "\n";
      write_file(std::filesystem::path(rep_out) / (tag + "_summary.csv"),
                 os.str());
      std::printf("test %s: settle=%d resettle=%d late_var=%.4f final_err=%.4f\n",
                  rep_test.c_str(), settle, resettle, late_var, err.back());
      return 0;
    }
  } catch (const stockflow::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const stockflow::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericError;
  }
  return 0;
}
