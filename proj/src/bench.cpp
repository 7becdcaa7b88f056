#include "j2lab/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <vector>

#include "j2lab/campaign.hpp"
#include "j2lab/classic_theory.hpp"
#include "j2lab/csv.hpp"
#include "j2lab/eps_theory.hpp"

namespace j2lab {

namespace {

using Clock = std::chrono::steady_clock;

// Keeps the optimizer from discarding the evaluations being timed.
double sink(const CartesianState& x) { return x.position[0] + x.velocity[2]; }

template <class Fn>
double mean_microseconds(int epochs, Fn&& fn) {
  const auto start = Clock::now();
  for (int k = 0; k < epochs; ++k) fn(k);
  const std::chrono::duration<double, std::micro> elapsed = Clock::now() - start;
  return elapsed.count() / epochs;
}

}  // namespace

BenchReport benchmark_evaluation(const CampaignConfig& cfg) {
  cfg.validate();
  const CartesianState x0 = initial_state(cfg);
  BenchReport report;
  report.epochs = cfg.bench_epochs;
  report.eps_order = cfg.eps_orders.empty() ? 1 : cfg.eps_orders.front();

  TheoryOptions opt;
  opt.order = report.eps_order;
  opt.corrections.drop_hidden = cfg.drop_hidden;
  opt.newton_tol = cfg.newton_tol;
  opt.newton_max_iter = cfg.newton_max_iter;
  const MeanEpsState eps = initialize(x0, cfg.model, opt);
  const MeanClassicState classic = initialize_classic(x0, cfg.model, true);

  const double horizon = cfg.horizon_seconds();
  const int n = cfg.bench_epochs;
  auto epoch = [&](int k) { return horizon * (k + 0.5) / n; };
  // lambda advances with t on average, so 1/n_lambda maps the time grid onto
  // a tau grid of the same coverage.
  const double mean_dtau_dt = 1.0 / eps.n_lambda;

  volatile double acc = 0.0;
  report.classic_at_t_us = mean_microseconds(n, [&](int k) { acc = acc + sink(propagate_classic(classic, epoch(k))); });
  report.eps_at_tau_us = mean_microseconds(
      n, [&](int k) { acc = acc + sink(osculating_at_tau(eps, DoubleDouble(epoch(k) * mean_dtau_dt)).state); });

  std::vector<int> iterations(static_cast<std::size_t>(n));
  report.eps_at_t_us = mean_microseconds(n, [&](int k) {
    const Ephemeris e = ephemeris_at_time(eps, DoubleDouble(epoch(k)));
    iterations[static_cast<std::size_t>(k)] = e.iterations;
    acc = acc + sink(e.state);
  });

  double total = 0.0;
  for (int it : iterations) total += it;
  report.mean_iterations = total / n;
  report.max_iterations = *std::max_element(iterations.begin(), iterations.end());
  report.evaluation_ratio = report.mean_iterations;
  return report;
}

void write_bench_report(const BenchReport& r, std::ostream& os) {
  os << "epochs " << r.epochs << "\n"
     << "eps_order " << r.eps_order << "\n"
     << "classic_at_t_us " << format_number(r.classic_at_t_us) << "\n"
     << "eps_at_tau_us " << format_number(r.eps_at_tau_us) << "\n"
     << "eps_at_t_us " << format_number(r.eps_at_t_us) << "\n"
     << "evaluation_ratio " << format_number(r.evaluation_ratio) << "\n"
     << "mean_iterations " << format_number(r.mean_iterations) << "\n"
     << "max_iterations " << r.max_iterations << "\n";
}

}  // namespace j2lab
