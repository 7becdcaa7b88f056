// j2lab command-line driver.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "j2lab/bench.hpp"
#include "j2lab/campaign.hpp"
#include "j2lab/classic_theory.hpp"
#include "j2lab/config.hpp"
#include "j2lab/csv.hpp"
#include "j2lab/eps_theory.hpp"
#include "j2lab/reference.hpp"
#include "j2lab/tables.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_path, "key=value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", opts.overrides, "override a setting, e.g. --set horizon_days=1")->take_all();
}

j2lab::CampaignConfig build_config(const CommonOptions& opts) {
  j2lab::CampaignConfig cfg = opts.config_path.empty() ? j2lab::CampaignConfig{} : j2lab::load_config(opts.config_path);
  for (const std::string& s : opts.overrides) j2lab::apply_assignment(cfg, s);
  j2lab::apply_environment(cfg);
  cfg.validate();
  return cfg;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw j2lab::ConfigError("cannot write '" + path.string() + "'");
  return os;
}

void state_row(j2lab::CsvWriter& csv, double t, double tau, const j2lab::CartesianState& x) {
  csv.row({t, tau, x.position[0], x.position[1], x.position[2], x.velocity[0], x.velocity[1], x.velocity[2]});
}

// Writes one theory's ephemeris on the configured grid.
void run_propagate(const j2lab::CampaignConfig& cfg, const std::string& theory, const std::string& sampling,
                   const std::filesystem::path& out) {
  using namespace j2lab;
  std::ofstream os = open_output(out);
  const CartesianState x0 = initial_state(cfg);
  const long n = static_cast<long>(std::floor(cfg.horizon_seconds() / cfg.cadence + 1e-9));

  if (theory == "reference") {
    const ReferenceTrajectory ref =
        integrate(x0, cfg.horizon_seconds(), cfg.reference_tol, cfg.reference_precision, cfg.model);
    write_trajectory_csv(ref, cfg.cadence, os);
    return;
  }

  CsvWriter csv(os, {"t", "tau", "x", "y", "z", "vx", "vy", "vz"});
  if (theory == kClassicCalibrated || theory == kClassicUncalibrated) {
    if (sampling != kSamplingT) throw ConfigError("the classic theory only samples in physical time");
    const MeanClassicState m = initialize_classic(x0, cfg.model, theory == kClassicCalibrated);
    for (long k = 0; k <= n; ++k) {
      const double t = k * cfg.cadence;
      state_row(csv, t, std::nan(""), propagate_classic(m, t));
    }
    return;
  }

  int order = 0;
  if (theory == "eps1") order = 1;
  if (theory == "eps2") order = 2;
  if (order == 0) throw ConfigError("unknown theory '" + theory + "'");
  TheoryOptions opt;
  opt.order = order;
  opt.corrections.drop_hidden = cfg.drop_hidden;
  opt.newton_tol = cfg.newton_tol;
  opt.newton_max_iter = cfg.newton_max_iter;
  const MeanEpsState m = initialize(x0, cfg.model, opt);
  if (sampling == kSamplingT) {
    for (long k = 0; k <= n; ++k) {
      const Ephemeris e = ephemeris_at_time(m, DoubleDouble(k * cfg.cadence));
      state_row(csv, to_double(e.t), to_double(e.tau), e.state);
    }
  } else if (sampling == kSamplingTau) {
    const double dtau = cfg.cadence / m.n_lambda;
    for (long k = 0; k <= n; ++k) {
      const Ephemeris e = osculating_at_tau(m, DoubleDouble(k * dtau));
      state_row(csv, to_double(e.t), to_double(e.tau), e.state);
    }
  } else {
    throw ConfigError("sampling must be t or tau");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"j2lab: J2 main-problem analytical theories and their validation campaign"};
  app.require_subcommand(1);

  CommonOptions prop_opts, camp_opts, bench_opts;
  std::string theory = "eps1";
  std::string sampling = j2lab::kSamplingT;
  std::string prop_out;
  CLI::App* propagate = app.add_subcommand("propagate", "emit one theory's ephemeris as CSV");
  add_common(propagate, prop_opts);
  propagate->add_option("-t,--theory", theory, "eps1, eps2, classic_calibrated, classic_uncalibrated or reference")
      ->capture_default_str();
  propagate->add_option("--sampling", sampling, "t (Newton inversion for eps) or tau")->capture_default_str();
  propagate->add_option("-o,--out", prop_out, "output CSV (default: <output_dir>/ephemeris_<theory>.csv)");

  CLI::App* campaign = app.add_subcommand("campaign", "run every enabled theory against the numerical reference");
  add_common(campaign, camp_opts);

  CLI::App* bench = app.add_subcommand("bench", "time classic-at-t, eps-at-tau and eps-at-t evaluations");
  add_common(bench, bench_opts);

  std::string tables_out;
  CLI::App* tables = app.add_subcommand("tables", "export the coefficient tables as text");
  tables->add_option("-o,--out", tables_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*propagate) {
      const j2lab::CampaignConfig cfg = build_config(prop_opts);
      const std::filesystem::path out =
          prop_out.empty() ? cfg.output_dir / ("ephemeris_" + theory + ".csv") : std::filesystem::path(prop_out);
      run_propagate(cfg, theory, sampling, out);
      std::cout << "wrote " << out.string() << "\n";
    } else if (*campaign) {
      const j2lab::CampaignConfig cfg = build_config(camp_opts);
      const j2lab::CampaignResult result = j2lab::run_campaign(cfg, true, &std::cerr);
      j2lab::write_summary(result, std::cout);
      if (!result.ok()) return kExitNumerical;
    } else if (*bench) {
      const j2lab::CampaignConfig cfg = build_config(bench_opts);
      const j2lab::BenchReport report = j2lab::benchmark_evaluation(cfg);
      j2lab::write_bench_report(report, std::cout);
      std::filesystem::create_directories(cfg.output_dir);
      std::ofstream os = open_output(cfg.output_dir / "bench.txt");
      j2lab::write_bench_report(report, os);
    } else if (*tables) {
      if (tables_out.empty()) {
        j2lab::write_coefficient_tables(std::cout);
      } else {
        std::ofstream os = open_output(tables_out);
        j2lab::write_coefficient_tables(os);
      }
    }
  } catch (const j2lab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
