// Goodness-of-fit campaigns, KPI extraction and (eta, rho) grid optimisation.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "coe/analytic.hpp"
#include "coe/simulator.hpp"

namespace coe {

class TooFewSamplesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct KsResult {
  double statistic = 0.0;  // sup |F_emp - F|
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda);

/// One-sample KS test with the (sqrt(n) + 0.12 + 0.11/sqrt(n)) D correction.
/// Requires at least 8 samples.
KsResult ks_test(std::span<const double> samples, const AnalyticCdf& cdf);

struct KsReport {
  double mean_significance = 0.0;
  double pass_ratio = 0.0;
  int n_trials = 0;
  int sample_size = 0;
};

struct KsCampaignOptions {
  int n_trials = 400;
  int subsample = 100;
  double alpha = 0.05;
  /// Reuse the first drop for every trial instead of a fresh drop per trial.
  bool single_drop = false;
  /// Draw the subsample from the analytic CDF itself (null calibration).
  bool self_test = false;
  std::uint64_t first_stream = 0;
  unsigned threads = 1;
};

/// KS campaign at the config's (bias, eta, rho, w_micro).
KsReport ks_campaign(const ScenarioConfig& cfg, Metric metric, const KsCampaignOptions& opts = {});
KsReport ks_campaign(const Simulator& sim, const AnalyticCdf& cdf, Metric metric,
                     const KsCampaignOptions& opts);

struct KpiResult {
  double r10 = 0.0;  // bit/s
  double se10 = 0.0;
  double se50 = 0.0;
  double ee10 = 0.0;  // bit/J
  double ee50 = 0.0;
  double theta10 = 0.0;
  double theta50 = 0.0;
};

KpiResult kpis(const AnalyticModel& model, ResourceSplit split);
KpiResult kpis(double bias_db, double eta, double rho, const ScenarioConfig& cfg);

enum class Objective { R10, SE10, EE10, Theta10, Theta50 };

std::string_view to_string(Objective o);
Objective objective_from_string(std::string_view s);

/// Evaluates only the percentiles the objective needs.
double objective_value(const AnalyticModel& model, Objective objective, ResourceSplit split);

struct GridPoint {
  double eta = 0.0;
  double rho = 0.0;
  double value = 0.0;
};

/// 0, step, 2 step, ..., 1 (1 is always included).
std::vector<double> unit_grid(double step);

/// Exhaustive search over eta, rho on unit_grid(step). Ties go to the smaller
/// eta, then the smaller rho. If `surface` is given it receives every cell in
/// eta-major order.
GridPoint optimize_grid(const AnalyticModel& model, Objective objective, double step = 0.01,
                        unsigned threads = 1, std::vector<GridPoint>* surface = nullptr);
GridPoint optimize_grid(double bias_db, const ScenarioConfig& cfg, Objective objective,
                        double step = 0.01);

}  // namespace coe
