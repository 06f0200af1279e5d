#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "coe/evaluation.hpp"

using namespace coe;

namespace {

const AnalyticCdf kUniform([](double x) { return std::clamp(x, 0.0, 1.0); }, 0.0, 1.0, 0.0);

ScenarioConfig with(double w_micro) {
  ScenarioConfig cfg;
  cfg.w_micro = w_micro;
  return cfg;
}

}  // namespace

TEST_CASE("Kolmogorov tail") {
  CHECK(kolmogorov_tail(0.0) == 1.0);
  CHECK(kolmogorov_tail(1.0) == doctest::Approx(0.2699996716).epsilon(1e-8));
  CHECK(kolmogorov_tail(1.3580986) == doctest::Approx(0.05).epsilon(1e-5));
  CHECK(kolmogorov_tail(5.0) < 1e-20);
}

TEST_CASE("KS statistic") {
  CHECK_THROWS_AS(ks_test(std::vector<double>(7, 0.5), kUniform), TooFewSamplesError);

  const KsResult at_median = ks_test(std::vector<double>(100, 0.5), kUniform);
  CHECK(at_median.statistic == doctest::Approx(0.5));
  CHECK(at_median.p_value < 1e-15);

  std::vector<double> centred;
  for (int i = 0; i < 100; ++i) centred.push_back((i + 0.5) / 100.0);
  const KsResult exact = ks_test(centred, kUniform);
  CHECK(exact.statistic == doctest::Approx(0.005));
  CHECK(exact.p_value == doctest::Approx(1.0));

  // Half the mass sits at zero; the jump must not count as a deviation.
  const AnalyticCdf atom([](double x) { return x < 0.0 ? 0.0 : std::min(1.0, 0.5 + 0.5 * x); }, 0.0, 1.0, 0.5);
  std::vector<double> mixed(50, 0.0);
  for (int k = 0; k < 50; ++k) mixed.push_back((k + 0.5) / 50.0);
  CHECK(ks_test(mixed, atom).statistic == doctest::Approx(0.005));
}

TEST_CASE("null calibration of the KS p-value") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int pass = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> xs(100);
    for (auto& x : xs) x = u(rng);
    pass += ks_test(xs, kUniform).p_value >= 0.05 ? 1 : 0;
  }
  CHECK(pass / 1000.0 >= 0.93);
  CHECK(pass / 1000.0 <= 0.97);

  SUBCASE("campaign self test on a model CDF") {
    const ScenarioConfig cfg = with(0.5);
    const Simulator sim(cfg);
    const AnalyticCdf cdf = AnalyticModel(cfg.bias_db, cfg).mixture_cdf(Metric::Rate, {cfg.eta, cfg.rho});
    KsCampaignOptions opts;
    opts.n_trials = 1000;
    opts.self_test = true;
    const KsReport r = ks_campaign(sim, cdf, Metric::Rate, opts);
    CHECK(r.n_trials == 1000);
    CHECK(r.pass_ratio >= 0.93);
    CHECK(r.pass_ratio <= 0.97);
    CHECK(r.mean_significance == doctest::Approx(0.5).epsilon(0.1));
  }
}

TEST_CASE("KS campaign") {
  ScenarioConfig cfg = with(1.0 / 3.0);
  KsCampaignOptions opts;
  opts.n_trials = 40;
  const KsReport fresh = ks_campaign(cfg, Metric::SE, opts);
  CHECK(fresh.sample_size == 100);
  CHECK(fresh.pass_ratio >= 0.0);
  CHECK(fresh.pass_ratio <= 1.0);
  CHECK(fresh.mean_significance >= 0.0);
  CHECK(fresh.mean_significance <= 1.0);

  opts.threads = 3;
  const KsReport threaded = ks_campaign(cfg, Metric::SE, opts);
  CHECK(threaded.mean_significance == fresh.mean_significance);

  opts.single_drop = true;
  CHECK_NOTHROW(ks_campaign(cfg, Metric::SE, opts));
  opts.n_trials = 0;
  CHECK_THROWS_AS(ks_campaign(cfg, Metric::SE, opts), std::invalid_argument);
}

TEST_CASE("KPIs") {
  const AnalyticModel model(10.0, with(0.5));
  const KpiResult k = kpis(model, {0.2, 0.5});
  CHECK(k.theta10 == doctest::Approx(k.se10 * k.ee10));
  CHECK(k.theta50 == doctest::Approx(k.se50 * k.ee50));
  CHECK(k.r10 > 0.0);
  CHECK(k.se50 >= k.se10);
  CHECK(k.ee50 >= k.ee10);
  CHECK(k.ee10 == doctest::Approx(k.r10 / total_network_power(0.2, model.config())).epsilon(1e-6));

  // Macro and direct users get no time at eta = 1.
  REQUIRE(model.mixture().weight(UserType::Macro) + model.mixture().weight(UserType::DirectMicro) > 0.1);
  CHECK(kpis(model, {1.0, 0.5}).r10 == 0.0);

  const KpiResult free_fn = kpis(10.0, 0.2, 0.5, with(0.5));
  CHECK(free_fn.r10 == k.r10);
  CHECK(objective_value(model, Objective::Theta10, {0.2, 0.5}) == doctest::Approx(k.theta10));
}

TEST_CASE("grid") {
  const auto coarse = unit_grid(0.3);
  REQUIRE(coarse.size() == 5u);
  for (std::size_t i = 0; i < 4; ++i) CHECK(coarse[i] == doctest::Approx(0.3 * i));
  CHECK(coarse[4] == 1.0);
  const auto fine = unit_grid(0.01);
  CHECK(fine.size() == 101u);
  CHECK(fine.back() == 1.0);
  CHECK(unit_grid(0.5) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK_THROWS_AS(unit_grid(0.0), std::invalid_argument);
  CHECK_THROWS_AS(unit_grid(0.7), std::invalid_argument);
  CHECK(objective_from_string("theta50") == Objective::Theta50);
  CHECK(to_string(Objective::EE10) == "ee10");
  CHECK_THROWS_AS(objective_from_string("r50"), std::invalid_argument);
}

TEST_CASE("optimisation") {
  SUBCASE("R10 optimum for B=10 dB, one third hotspot users") {
    const GridPoint best = optimize_grid(10.0, with(1.0 / 3.0), Objective::R10, 0.01);
    CHECK(std::abs(best.eta - 0.15) <= 0.03);
    CHECK(std::abs(best.rho - 0.78) <= 0.03);
    CHECK(std::abs(best.value / 1e6 - 3.113) <= 0.1 * 3.113);
  }

  SUBCASE("R10 optimum for B=20 dB, two thirds hotspot users") {
    const GridPoint best = optimize_grid(20.0, with(2.0 / 3.0), Objective::R10, 0.01);
    CHECK(std::abs(best.eta - 0.25) <= 0.03);
    CHECK(std::abs(best.rho - 0.35) <= 0.03);
    CHECK(std::abs(best.value / 1e6 - 4.786) <= 0.1 * 4.786);
  }

  SUBCASE("value constant in rho resolves to the smallest rho") {
    ScenarioConfig cfg = with(0.5);
    cfg.noise_bandwidth_mode = NoiseBandwidthMode::FullBand;
    const AnalyticModel model(10.0, cfg);
    CHECK(objective_value(model, Objective::SE10, {0.3, 0.2}) ==
          objective_value(model, Objective::SE10, {0.3, 0.9}));
    const GridPoint best = optimize_grid(model, Objective::SE10, 0.05);
    CHECK(best.rho == 0.0);
  }

  SUBCASE("theta50 is best with no CRE time") {
    const AnalyticModel model(10.0, with(0.5));
    CHECK(optimize_grid(model, Objective::Theta50, 0.05).eta == 0.0);
  }

  SUBCASE("surface and threading") {
    const AnalyticModel model(15.0, with(0.5));
    std::vector<GridPoint> surface;
    const GridPoint a = optimize_grid(model, Objective::EE10, 0.1, 1, &surface);
    const GridPoint b = optimize_grid(model, Objective::EE10, 0.1, 4);
    CHECK(surface.size() == 121u);
    CHECK(a.eta == b.eta);
    CHECK(a.rho == b.rho);
    CHECK(a.value == b.value);
    CHECK(std::all_of(surface.begin(), surface.end(), [&](const GridPoint& g) { return g.value <= a.value; }));
  }
}
