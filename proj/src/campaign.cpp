#include "j2lab/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "j2lab/classic_theory.hpp"
#include "j2lab/csv.hpp"
#include "j2lab/eps_theory.hpp"

#ifdef J2LAB_HAVE_OPENMP
#define J2LAB_PARALLEL_FOR _Pragma("omp parallel for schedule(static)")
#else
#define J2LAB_PARALLEL_FOR
#endif

namespace j2lab {

namespace {

struct Sample {
  double t = 0.0;
  double tau = 0.0;
  RswError error;
  double timing = 0.0;
  int iterations = 0;
  double residual = 0.0;
  std::optional<std::string> failure;
};

// Evaluates fn(k) for k in [0, n) in parallel and folds the samples into a
// series; the first failure (in index order) is reported.
template <class Fn>
ErrorSeries collect(const std::string& theory, const std::string& sampling, long n, bool timing, bool newton,
                    Fn&& fn, std::vector<std::string>& failures) {
  std::vector<Sample> samples(static_cast<std::size_t>(n));
  J2LAB_PARALLEL_FOR
  for (long k = 0; k < n; ++k) {
    Sample& s = samples[static_cast<std::size_t>(k)];
    try {
      fn(k, s);
    } catch (const std::exception& e) {
      s.failure = e.what();
    }
  }

  ErrorSeries out;
  out.theory = theory;
  out.sampling = sampling;
  for (const Sample& s : samples) {
    if (s.failure) {
      failures.push_back(theory + " [" + sampling + "] at t=" + format_number(s.t) + ": " + *s.failure);
      break;
    }
    out.t.push_back(s.t);
    out.tau.push_back(s.tau);
    out.radial.push_back(s.error.radial * 1e3);
    out.along_track.push_back(s.error.along_track * 1e3);
    out.cross_track.push_back(s.error.cross_track * 1e3);
    out.rss.push_back(s.error.rss * 1e3);
    if (timing) out.timing.push_back(s.timing);
    if (newton) {
      out.iterations.push_back(s.iterations);
      out.residual.push_back(s.residual);
    }
  }
  return out;
}

void fit_series(const ErrorSeries& s, double period, CampaignResult& result) {
  // Trends are per day of physical time in every sampling mode.
  const std::vector<double>& x = s.t;
  auto add = [&](const char* quantity, const char* unit, const std::vector<double>& y) {
    try {
      result.fits.push_back({s.theory, s.sampling, quantity, unit, fit_secular_trend(x, y, period)});
    } catch (const TrendError& e) {
      result.failures.push_back(s.theory + " [" + s.sampling + "] " + quantity + ": " + e.what());
    }
  };
  add("radial", "m", s.radial);
  add("along_track", "m", s.along_track);
  add("cross_track", "m", s.cross_track);
  add("rss", "m", s.rss);
  if (s.has_timing()) add("timing", "s", s.timing);
}

void write_series(const ErrorSeries& s, std::ostream& os) {
  std::vector<std::string> header{"t", "tau", "radial", "along_track", "cross_track", "rss"};
  if (s.has_timing()) header.push_back("timing_error");
  if (!s.iterations.empty()) {
    header.push_back("iterations");
    header.push_back("residual");
  }
  CsvWriter csv(os, header);
  std::vector<double> row;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    row = {s.t[i], s.tau[i], s.radial[i], s.along_track[i], s.cross_track[i], s.rss[i]};
    if (s.has_timing()) row.push_back(s.timing[i]);
    if (!s.iterations.empty()) {
      row.push_back(s.iterations[i]);
      row.push_back(s.residual[i]);
    }
    csv.row(row);
  }
}

NewtonSummary summarize_newton(int order, const ErrorSeries& s, std::size_t expected) {
  NewtonSummary n;
  n.order = order;
  n.epochs = s.iterations.size();
  n.failures = expected - n.epochs;
  if (s.iterations.empty()) return n;
  const auto [lo, hi] = std::minmax_element(s.iterations.begin(), s.iterations.end());
  n.min_iterations = *lo;
  n.max_iterations = *hi;
  double sum = 0.0;
  for (int it : s.iterations) sum += it;
  n.mean_iterations = sum / static_cast<double>(n.epochs);
  for (double r : s.residual) n.max_abs_residual = std::max(n.max_abs_residual, std::abs(r));
  return n;
}

double orbital_period(const CampaignConfig& cfg) {
  return 2.0 * std::numbers::pi * std::sqrt(std::pow(cfg.elements.a, 3) / cfg.model.mu);
}

// Trend fits need enough orbits and samples; refuse up front rather than
// integrating a reference only to fail every fit.
void check_fit_window(const CampaignConfig& cfg) {
  const double horizon = cfg.horizon_seconds();
  const double period = orbital_period(cfg);
  if (horizon < kTrendMinCycles * period) {
    throw ConfigError("campaign: horizon_days must cover at least " + std::to_string(int(kTrendMinCycles)) +
                      " orbits (" + format_number(kTrendMinCycles * period / 86400.0) + " days)");
  }
  if (std::floor(horizon / cfg.cadence) + 1 < double(kTrendMinSamples)) {
    throw ConfigError("campaign: cadence_s leaves fewer than " + std::to_string(kTrendMinSamples) + " samples");
  }
}

}  // namespace

std::string eps_theory_id(int order) { return "eps" + std::to_string(order); }

const TrendFit& CampaignResult::fit(const std::string& theory, const std::string& sampling,
                                    const std::string& quantity) const {
  for (const SeriesFit& f : fits) {
    if (f.theory == theory && f.sampling == sampling && f.quantity == quantity) return f.fit;
  }
  throw std::out_of_range("campaign: no fit for " + theory + " [" + sampling + "] " + quantity);
}

const NewtonSummary& CampaignResult::newton_for(int order) const {
  for (const NewtonSummary& n : newton) {
    if (n.order == order) return n;
  }
  throw std::out_of_range("campaign: no Newton statistics for order " + std::to_string(order));
}

CartesianState initial_state(const CampaignConfig& cfg) { return classical_to_cartesian(cfg.elements, cfg.model); }

CampaignResult run_campaign(const CampaignConfig& cfg, bool write_files, std::ostream* log) {
  cfg.validate();
  check_fit_window(cfg);
  if (log) *log << "integrating reference over " << cfg.horizon_days << " days\n";
  const ReferenceTrajectory reference =
      integrate(initial_state(cfg), cfg.horizon_seconds(), cfg.reference_tol, cfg.reference_precision, cfg.model);
  return run_campaign(cfg, reference, write_files, log);
}

CampaignResult run_campaign(const CampaignConfig& cfg, const ReferenceTrajectory& reference, bool write_files,
                            std::ostream* log) {
  cfg.validate();
  check_fit_window(cfg);
  const CartesianState x0 = initial_state(cfg);
  const double horizon = cfg.horizon_seconds();
  if (reference.t_end() < horizon * (1.0 - 1e-12)) throw ConfigError("campaign: reference does not cover the horizon");

  CampaignResult result;
  result.config = cfg;
  result.drift = reference.drift();
  result.reference_stats = reference.stats();

  const long n = static_cast<long>(std::floor(horizon / cfg.cadence + 1e-9)) + 1;
  const double period = orbital_period(cfg);
  const double tau_end = to_double(reference.tau_end());
  const double dtau = tau_end / static_cast<double>(n - 1);
  auto epoch = [&](long k) { return std::min(horizon, static_cast<double>(k) * cfg.cadence); };

  auto run_classic = [&](bool calibrate, const char* id) {
    if (log) *log << "running " << id << "\n";
    MeanClassicState m;
    try {
      m = initialize_classic(x0, cfg.model, calibrate);
    } catch (const std::exception& e) {
      result.failures.push_back(std::string(id) + ": initialization: " + e.what());
      return;
    }
    result.series.push_back(collect(
        id, kSamplingT, n, false, false,
        [&](long k, Sample& s) {
          s.t = epoch(k);
          const ReferenceSample ref = state_at_time(reference, DoubleDouble(s.t));
          s.tau = to_double(ref.tau);
          s.error = rsw_errors(ref.state, propagate_classic(m, s.t));
        },
        result.failures));
  };
  if (cfg.classic_calibrated) run_classic(true, kClassicCalibrated);
  if (cfg.classic_uncalibrated) run_classic(false, kClassicUncalibrated);

  for (int order : cfg.eps_orders) {
    const std::string id = eps_theory_id(order);
    if (log) *log << "running " << id << "\n";
    TheoryOptions opt;
    opt.order = order;
    opt.corrections.drop_hidden = cfg.drop_hidden;
    opt.newton_tol = cfg.newton_tol;
    opt.newton_max_iter = cfg.newton_max_iter;
    MeanEpsState m;
    try {
      m = initialize(x0, cfg.model, opt);
    } catch (const std::exception& e) {
      result.failures.push_back(id + ": initialization: " + e.what());
      continue;
    }

    result.series.push_back(collect(
        id, kSamplingT, n, true, false,
        [&](long k, Sample& s) {
          s.t = epoch(k);
          const ReferenceSample ref = state_at_time(reference, DoubleDouble(s.t));
          s.tau = to_double(ref.tau);
          Ephemeris eph = osculating_at_tau(m, ref.tau);
          s.timing = to_double(eph.t - ref.t);
          eph.state.t = s.t;
          s.error = rsw_errors(ref.state, eph.state);
        },
        result.failures));

    result.series.push_back(collect(
        id, kSamplingTau, n, true, false,
        [&](long k, Sample& s) {
          const DoubleDouble tau = k == n - 1 ? reference.tau_end() : DoubleDouble(static_cast<double>(k) * dtau);
          const ReferenceSample ref = state_at_tau(reference, tau);
          s.t = to_double(ref.t);
          s.tau = to_double(tau);
          Ephemeris eph = osculating_at_tau(m, tau);
          s.timing = to_double(eph.t - ref.t);
          eph.state.t = s.t;
          s.error = rsw_errors(ref.state, eph.state);
        },
        result.failures));

    result.series.push_back(collect(
        id, kSamplingNewton, n, false, true,
        [&](long k, Sample& s) {
          s.t = epoch(k);
          const ReferenceSample ref = state_at_time(reference, DoubleDouble(s.t));
          const Ephemeris eph = ephemeris_at_time(m, DoubleDouble(s.t));
          s.tau = to_double(eph.tau);
          s.iterations = eph.iterations;
          s.residual = eph.residuals.back();
          s.error = rsw_errors(ref.state, eph.state);
        },
        result.failures));
    result.newton.push_back(summarize_newton(order, result.series.back(), static_cast<std::size_t>(n)));
  }

  for (const ErrorSeries& s : result.series) fit_series(s, period, result);

  if (write_files) {
    std::filesystem::create_directories(cfg.output_dir);
    auto open = [&](const std::string& name) {
      const std::filesystem::path path = cfg.output_dir / name;
      std::ofstream os(path);
      if (!os) throw ConfigError("campaign: cannot write '" + path.string() + "'");
      result.files.push_back(path.string());
      return os;
    };
    {
      std::ofstream os = open("config.cfg");
      write_config(cfg, os);
    }
    if (cfg.write_reference) {
      std::ofstream os = open("reference_trajectory.csv");
      write_trajectory_csv(reference, cfg.cadence, os);
    }
    for (const ErrorSeries& s : result.series) {
      std::ofstream os = open("errors_" + s.theory + "_" + s.sampling + ".csv");
      write_series(s, os);
    }
    std::ofstream os = open("summary.txt");
    write_summary(result, os);
  }
  return result;
}

void write_summary(const CampaignResult& result, std::ostream& os) {
  const CampaignConfig& cfg = result.config;
  os << "j2lab campaign summary\n"
     << "horizon_days " << format_number(cfg.horizon_days) << "\n"
     << "cadence_s " << format_number(cfg.cadence) << "\n"
     << "reference_precision "
     << (cfg.reference_precision == Precision::double_double ? "double_double" : "double") << "\n"
     << "reference_tol " << format_number(cfg.reference_tol) << "\n"
     << "reference_steps " << result.reference_stats.stepper.accepted << " accepted, "
     << result.reference_stats.stepper.rejected << " rejected\n"
     << "reference_wall_s " << format_number(result.reference_stats.wall_seconds) << "\n"
     << "reference_max_energy_drift " << format_number(result.drift.max_energy_rel) << "\n"
     << "reference_max_polar_momentum_drift " << format_number(result.drift.max_polar_momentum_rel) << "\n\n";

  os << "theory sampling quantity unit slope_per_day slope_stderr_per_day amplitude residual_rms samples\n";
  for (const SeriesFit& f : result.fits) {
    os << f.theory << " " << f.sampling << " " << f.quantity << " " << f.unit << " "
       << format_number(f.fit.slope_per_day) << " " << format_number(f.fit.slope_stderr_per_day) << " "
       << format_number(f.fit.amplitude) << " " << format_number(f.fit.residual_rms) << " " << f.fit.samples
       << "\n";
  }

  os << "\nnewton order epochs min_iter max_iter mean_iter max_abs_residual_s failures\n";
  for (const NewtonSummary& n : result.newton) {
    os << "newton " << n.order << " " << n.epochs << " " << n.min_iterations << " " << n.max_iterations << " "
       << format_number(n.mean_iterations) << " " << format_number(n.max_abs_residual) << " " << n.failures
       << "\n";
  }

  os << "\nstatus " << (result.ok() ? "ok" : "FAILED") << "\n";
  for (const std::string& f : result.failures) os << "FAILED " << f << "\n";
}

}  // namespace j2lab
