// Acceptance run for the primary criteria. Prints one PASS/FAIL line per
// criterion, followed by the measured values, and writes the same text to
// acceptance_report.txt in the working directory.
//
//   j2lab_acceptance [--strict]
//
// Exit status is 0 once every stage has run; with --strict it is 1 when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "j2lab/bench.hpp"
#include "j2lab/campaign.hpp"
#include "j2lab/config.hpp"

namespace {

using j2lab::CampaignConfig;
using j2lab::CampaignResult;

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Check> checks;
  bool passed() const {
    for (const Check& c : checks) {
      if (!c.ok) return false;
    }
    return !checks.empty();
  }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Check in_band(const std::string& name, double value, double lo, double hi, const char* unit) {
  return {name, value >= lo && value <= hi, fmt("%.4g", value) + " " + unit + " in [" + fmt("%g", lo) + ", " +
                                               fmt("%g", hi) + "]"};
}

Check below(const std::string& name, double value, double hi, const char* unit) {
  return {name, value < hi, fmt("%.4g", value) + " " + unit + " < " + fmt("%g", hi)};
}

Check above(const std::string& name, double value, double lo, const char* unit) {
  return {name, value > lo, fmt("%.4g", value) + " " + unit + " > " + fmt("%g", lo)};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// A series is periodic-dominated when ten days of trend stay below its
// oscillation amplitude.
Check periodic(const std::string& name, const j2lab::TrendFit& f, double days) {
  const double drift = std::abs(f.slope_per_day) * days;
  return {name, drift < f.amplitude,
          "amplitude " + fmt("%.4g", f.amplitude) + " m, trend x horizon " + fmt("%.3g", drift) + " m"};
}

void newton_checks(Criterion& c, const CampaignResult& r, int order, const std::string& stage) {
  const j2lab::NewtonSummary& n = r.newton_for(order);
  const std::string tag = "eps" + std::to_string(order) + " " + stage;
  c.checks.push_back({tag + " all epochs converged", n.failures == 0 && n.epochs > 0,
                      std::to_string(n.epochs) + " epochs, " + std::to_string(n.failures) + " failures"});
  c.checks.push_back({tag + " iterations <= 10", n.max_iterations <= 10 && n.max_iterations >= 1,
                      "min " + std::to_string(n.min_iterations) + ", max " + std::to_string(n.max_iterations) +
                          ", mean " + fmt("%.3f", n.mean_iterations)});
  c.checks.push_back(below(tag + " |dt| at convergence", n.max_abs_residual, 1e-12, "s"));
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--strict") strict = true;
  }
  std::vector<Criterion> criteria;
  std::ostringstream notes;

  // Stage A: 10-day PRISMA campaign against a double-precision reference.
  CampaignConfig a;
  const auto t_a = std::chrono::steady_clock::now();
  const CampaignResult ra = j2lab::run_campaign(a, false);
  const double stage_a_s = seconds_since(t_a);
  notes << "stage A: double reference tol " << a.reference_tol << ", " << ra.reference_stats.stepper.accepted
        << " steps, energy drift " << ra.drift.max_energy_rel << ", " << stage_a_s << " s\n";
  for (const std::string& f : ra.failures) notes << "stage A failure: " << f << "\n";

  const double days = a.horizon_days;
  auto fit_a = [&](const std::string& theory, const char* sampling, const char* quantity) {
    return ra.fit(theory, sampling, quantity);
  };

  {
    Criterion c{1, "EPS order-1 intrinsic errors", {}};
    c.checks.push_back(periodic("radial periodic", fit_a("eps1", j2lab::kSamplingT, "radial"), days));
    c.checks.push_back(periodic("cross-track periodic", fit_a("eps1", j2lab::kSamplingT, "cross_track"), days));
    c.checks.push_back(
        in_band("along-track amplitude", fit_a("eps1", j2lab::kSamplingT, "along_track").amplitude, 0.03, 1.0, "m"));
    c.checks.push_back(below("|along-track trend|",
                             std::abs(fit_a("eps1", j2lab::kSamplingT, "along_track").slope_per_day), 0.1, "m/day"));
    c.checks.push_back(below("stage runtime", stage_a_s, 120.0, "s"));
    criteria.push_back(c);
  }
  {
    Criterion c{2, "Traditional order-1 with calibration", {}};
    const double cal_trend = fit_a(j2lab::kClassicCalibrated, j2lab::kSamplingT, "along_track").slope_per_day;
    c.checks.push_back(in_band("calibrated along-track trend", std::abs(cal_trend), 0.3, 3.0, "m/day"));
    for (const char* q : {"radial", "cross_track"}) {
      const double ratio = fit_a(j2lab::kClassicCalibrated, j2lab::kSamplingT, q).amplitude /
                           fit_a("eps1", j2lab::kSamplingT, q).amplitude;
      c.checks.push_back(in_band(std::string(q) + " amplitude ratio to EPS order 1", ratio, 0.5, 2.0, ""));
    }
    const double uncal = fit_a(j2lab::kClassicUncalibrated, j2lab::kSamplingT, "along_track").slope_per_day;
    c.checks.push_back(above("uncalibrated |along-track trend|", std::abs(uncal), 3.0, "m/day"));
    criteria.push_back(c);
  }
  {
    Criterion c{3, "EPS order-1 timing error", {}};
    c.checks.push_back(
        in_band("timing amplitude", fit_a("eps1", j2lab::kSamplingT, "timing").amplitude * 1e3, 0.1, 2.0, "ms"));
    c.checks.push_back(in_band("time-argument along-track amplitude",
                               fit_a("eps1", j2lab::kSamplingNewton, "along_track").amplitude, 0.3, 10.0, "m"));
    criteria.push_back(c);
  }

  // Stage B: order 2 against a double-double reference.
  CampaignConfig b;
  b.reference_precision = j2lab::Precision::double_double;
  b.reference_tol = 1e-16;
  b.eps_orders = {2};
  b.classic_calibrated = false;
  b.classic_uncalibrated = false;
  const auto t_b = std::chrono::steady_clock::now();
  const CampaignResult rb = j2lab::run_campaign(b, false);
  const double stage_b_s = seconds_since(t_b);
  notes << "stage B: double-double reference tol " << b.reference_tol << ", " << rb.reference_stats.stepper.accepted
        << " steps, energy drift " << rb.drift.max_energy_rel << ", " << stage_b_s << " s\n";
  for (const std::string& f : rb.failures) notes << "stage B failure: " << f << "\n";
  {
    Criterion c{4, "EPS order-2 intrinsic errors", {}};
    const j2lab::TrendFit along = rb.fit("eps2", j2lab::kSamplingT, "along_track");
    const j2lab::TrendFit timing = rb.fit("eps2", j2lab::kSamplingT, "timing");
    c.checks.push_back(in_band("along-track amplitude", along.amplitude * 1e3, 0.3, 10.0, "mm"));
    c.checks.push_back(in_band("|along-track trend|", std::abs(along.slope_per_day) * 1e3, 0.02, 0.5, "mm/day"));
    c.checks.push_back(in_band("timing amplitude", timing.amplitude * 1e6, 0.2, 5.0, "us"));
    c.checks.push_back(in_band("|timing trend|", std::abs(timing.slope_per_day) * 1e6, 0.02, 0.5, "us/day"));
    c.checks.push_back(below("stage runtime", stage_b_s, 900.0, "s"));
    criteria.push_back(c);
  }

  // Stage C: property suites from the unit-test binary.
  {
    Criterion c{5, "Property suites", {}};
    const std::string filter =
        "Poisson.CanonicalTable:Jet.AgreesWithFiniteDifferences:Maps.RoundTripContractsByJ2:Maps.IdentityWithoutJ2:"
        "DsVars.GammaEqualsThetaWithoutJ2:DsVars.CircularKeplerOrbitHasTimeElementEqualToTime:"
        "EpsTheory.KeplerFrequenciesWithoutJ2:ClassicTheory.KeplerMotionWithoutJ2:"
        "DsVars.HamiltonianConstraintResidual:Tables.*:Reference.ConservesEnergyAndPolarMomentum";
    const std::string cmd = std::string("\"") + J2LAB_UNIT_TEST_BINARY + "\" --gtest_brief=1 --gtest_filter='" +
                            filter + "' > property_suites.log 2>&1";
    const auto t_c = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    const double stage_c_s = seconds_since(t_c);
    c.checks.push_back({"all property tests pass", status == 0, "exit status " + std::to_string(status)});
    c.checks.push_back(below("suite runtime", stage_c_s, 60.0, "s"));
    criteria.push_back(c);
  }
  {
    Criterion c{6, "Newton time inversion", {}};
    newton_checks(c, ra, 1, "stage A");
    newton_checks(c, ra, 2, "stage A");
    newton_checks(c, rb, 2, "stage B");
    const j2lab::BenchReport bench = j2lab::benchmark_evaluation(a);
    c.checks.push_back({"eps-at-t cost exceeds eps-at-tau cost", bench.eps_at_t_us > bench.eps_at_tau_us,
                        fmt("%.3g us vs %.3g us", bench.eps_at_t_us, bench.eps_at_tau_us) +
                            fmt(", evaluation ratio %.3g", bench.evaluation_ratio)});
    criteria.push_back(c);
  }

  std::ostringstream out;
  int failed = 0;
  for (const Criterion& c : criteria) {
    out << (c.passed() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << "\n";
    if (!c.passed()) ++failed;
  }
  out << "\n";
  for (const Criterion& c : criteria) {
    out << "criterion " << c.id << "\n";
    for (const Check& k : c.checks) out << "  [" << (k.ok ? "ok" : "FAIL") << "] " << k.name << ": " << k.detail << "\n";
  }
  out << "\n" << notes.str();
  out << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";

  std::cout << out.str();
  std::ofstream("acceptance_report.txt") << out.str();
  return strict && failed > 0 ? 1 : 0;
}
