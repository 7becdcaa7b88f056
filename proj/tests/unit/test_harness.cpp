#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "j2lab/bench.hpp"
#include "j2lab/campaign.hpp"
#include "j2lab/config.hpp"
#include "j2lab/csv.hpp"
#include "j2lab/trend.hpp"

namespace j2lab {
namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("j2lab_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Trend, ExactLine) {
  std::vector<double> t, y;
  for (int k = 0; k < 500; ++k) {
    t.push_back(600.0 * k);
    y.push_back(3.0 - 0.25 * t.back() / 86400.0);
  }
  const TrendFit f = fit_secular_trend(t, y);
  EXPECT_NEAR(f.slope_per_day, -0.25, 1e-13);
  EXPECT_NEAR(f.intercept, 3.0, 1e-12);
  EXPECT_LT(f.amplitude, 1e-12);
}

// Cosine phase: a sine over whole cycles still correlates with t and has a
// least-squares slope of -12 A / (omega T^2).
TEST(Trend, SinusoidOverWholeCycles) {
  const double period = 6000.0, amp = 2.0;
  std::vector<double> t, y;
  for (int k = 0; k <= 30 * 60; ++k) {
    t.push_back(100.0 * k);
    y.push_back(amp * std::cos(2.0 * std::numbers::pi * t.back() / period));
  }
  const TrendFit f = fit_secular_trend(t, y, period);
  EXPECT_LT(std::abs(f.slope_per_day), 1e-3 * amp);
  EXPECT_NEAR(f.amplitude, amp, 1e-3);
  EXPECT_NEAR(f.residual_rms, amp / std::sqrt(2.0), 1e-3);
  EXPECT_GT(f.slope_stderr_per_day, 0.0);
}

TEST(Trend, RejectsShortSeries) {
  std::vector<double> t(50), y(50);
  for (int k = 0; k < 50; ++k) t[k] = k;
  EXPECT_THROW(fit_secular_trend(t, y), TrendError);
  std::vector<double> t2(200), y2(200);
  for (int k = 0; k < 200; ++k) t2[k] = 60.0 * k;
  EXPECT_THROW(fit_secular_trend(t2, y2, 5700.0), TrendError);
  EXPECT_THROW(fit_secular_trend(t2, y), TrendError);
}

TEST(Csv, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
  std::ostringstream os;
  CsvWriter csv(os, {"a", "b"});
  csv.row({1.0, 2.5});
  EXPECT_EQ(os.str(), "a,b\n1,2.5\n");
  EXPECT_THROW(csv.row({1.0}), std::exception);
}

TEST(Config, DefaultsAreThePrismaCampaign) {
  const CampaignConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.elements.a, 6878.14);
  EXPECT_DOUBLE_EQ(cfg.horizon_days, 10.0);
  EXPECT_DOUBLE_EQ(cfg.cadence, 60.0);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ParsesCommentsAndAngles) {
  std::istringstream in("# comment\n\n a_km = 7000  # trailing\ninclination_deg=45\neps_orders=2\n"
                        "reference_precision=double_double\nclassic_uncalibrated=off\n");
  const CampaignConfig cfg = parse_config(in);
  EXPECT_DOUBLE_EQ(cfg.elements.a, 7000.0);
  EXPECT_NEAR(cfg.elements.I, std::numbers::pi / 4.0, 1e-15);
  EXPECT_EQ(cfg.eps_orders, std::vector<int>{2});
  EXPECT_EQ(cfg.reference_precision, Precision::double_double);
  EXPECT_FALSE(cfg.classic_uncalibrated);
}

TEST(Config, RejectsBadInput) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  EXPECT_THROW(parse("nonsense=1\n"), ConfigError);
  EXPECT_THROW(parse("a_km=abc\n"), ConfigError);
  EXPECT_THROW(parse("a_km\n"), ConfigError);
  EXPECT_THROW(parse("classic_calibrated=maybe\n"), ConfigError);
  EXPECT_THROW(parse("reference_precision=quad\n"), ConfigError);
  EXPECT_THROW(parse("horizon_days=0\n").validate(), ConfigError);
  EXPECT_THROW(parse("cadence_s=-1\n").validate(), ConfigError);
  EXPECT_THROW(parse("eps_orders=1,3\n").validate(), ConfigError);
  EXPECT_THROW(parse("e=1.2\n").validate(), ConfigError);
  EXPECT_THROW(parse("a_km=6000\n").validate(), ConfigError);
  EXPECT_THROW(parse("newton_tol_s=0\n").validate(), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST(Config, WriteThenParseRoundTrips) {
  CampaignConfig cfg;
  cfg.elements.raan = 1.234567890123;
  cfg.eps_orders = {2};
  cfg.drop_hidden = true;
  cfg.output_dir = "somewhere/else";
  std::stringstream ss;
  write_config(cfg, ss);
  const CampaignConfig back = parse_config(ss);
  EXPECT_EQ(back.elements.raan, cfg.elements.raan);
  EXPECT_EQ(back.eps_orders, cfg.eps_orders);
  EXPECT_TRUE(back.drop_hidden);
  EXPECT_EQ(back.output_dir, cfg.output_dir);
  std::stringstream again;
  write_config(back, again);
  ss.clear();
  ss.seekg(0);
  EXPECT_EQ(again.str(), ss.str());
}

TEST(Config, EnvironmentOverridesOutputDirectory) {
  CampaignConfig cfg;
  ::setenv(kOutputDirEnv, "/tmp/from_env", 1);
  apply_environment(cfg);
  EXPECT_EQ(cfg.output_dir, "/tmp/from_env");
  ::setenv(kOutputDirEnv, "", 1);
  cfg.output_dir = "kept";
  apply_environment(cfg);
  EXPECT_EQ(cfg.output_dir, "kept");
  ::unsetenv(kOutputDirEnv);
}

CampaignConfig short_campaign(const std::filesystem::path& out) {
  CampaignConfig cfg;
  cfg.horizon_days = 1.5;
  cfg.cadence = 120.0;
  cfg.output_dir = out;
  return cfg;
}

TEST(Campaign, RejectsWindowTooShortForTrendFits) {
  CampaignConfig cfg = short_campaign(scratch_dir("short"));
  cfg.horizon_days = 1.0;
  EXPECT_THROW(run_campaign(cfg, false), ConfigError);
  cfg.horizon_days = 1.5;
  cfg.cadence = 1800.0;
  EXPECT_THROW(run_campaign(cfg, false), ConfigError);
}

TEST(Campaign, KeplerProblemErrorsAreAtIntegratorNoise) {
  CampaignConfig cfg = short_campaign(scratch_dir("kepler"));
  cfg.model.j2 = 0.0;
  const CampaignResult r = run_campaign(cfg, false);
  ASSERT_TRUE(r.ok()) << r.failures.front();
  for (const SeriesFit& f : r.fits) {
    const double bound = f.unit == "m" ? 1e-4 : 1e-8;
    EXPECT_LT(f.fit.amplitude, bound) << f.theory << " " << f.sampling << " " << f.quantity;
    EXPECT_LT(std::abs(f.fit.slope_per_day), bound) << f.theory << " " << f.sampling << " " << f.quantity;
  }
}

TEST(Campaign, WritesDeterministicArtifacts) {
  const auto a = scratch_dir("det_a"), b = scratch_dir("det_b");
  CampaignConfig cfg = short_campaign(a);
  cfg.eps_orders = {1};
  const CampaignResult ra = run_campaign(cfg, true);
  cfg.output_dir = b;
  const CampaignResult rb = run_campaign(cfg, true);
  ASSERT_TRUE(ra.ok());
  ASSERT_EQ(ra.files.size(), rb.files.size());
  for (const std::string name : {"errors_eps1_t.csv", "errors_eps1_tau.csv", "errors_eps1_newton.csv",
                                 "errors_classic_calibrated_t.csv", "reference_trajectory.csv"}) {
    ASSERT_TRUE(std::filesystem::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  const std::string header = slurp(a / "errors_eps1_t.csv").substr(0, 60);
  EXPECT_EQ(header.rfind("t,tau,radial,along_track,cross_track,rss,timing_error\n", 0), 0u);
  EXPECT_NE(slurp(a / "summary.txt").find("status ok"), std::string::npos);
}

TEST(Campaign, ComparesAtCommonEpochsAndInvertsTime) {
  const CampaignResult r = run_campaign(short_campaign(scratch_dir("common")), false);
  ASSERT_TRUE(r.ok());
  const ErrorSeries* classic = nullptr;
  const ErrorSeries* newton = nullptr;
  for (const ErrorSeries& s : r.series) {
    if (s.theory == kClassicCalibrated) classic = &s;
    if (s.theory == "eps2" && s.sampling == kSamplingNewton) newton = &s;
  }
  ASSERT_TRUE(classic && newton);
  EXPECT_EQ(classic->t, newton->t);
  for (std::size_t i = 0; i < newton->iterations.size(); ++i) {
    ASSERT_LE(newton->iterations[i], r.config.newton_max_iter);
    ASSERT_LT(std::abs(newton->residual[i]), r.config.newton_tol);
  }
  EXPECT_GE(r.newton_for(2).min_iterations, 1);
  EXPECT_EQ(r.newton_for(2).failures, 0u);
  EXPECT_THROW(r.newton_for(7), std::out_of_range);
  EXPECT_THROW(r.fit("eps9", kSamplingT, "rss"), std::out_of_range);
}

TEST(Bench, NewtonInversionCostsMoreThanDirectEvaluation) {
  CampaignConfig cfg;
  cfg.bench_epochs = 300;
  cfg.eps_orders = {1};
  const BenchReport r = benchmark_evaluation(cfg);
  EXPECT_GT(r.eps_at_t_us, r.eps_at_tau_us);
  EXPECT_GE(r.evaluation_ratio, 2.0);
  EXPECT_LE(r.max_iterations, cfg.newton_max_iter);
  EXPECT_GT(r.classic_at_t_us, 0.0);
}

}  // namespace
}  // namespace j2lab
