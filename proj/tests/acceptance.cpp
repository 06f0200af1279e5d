// Acceptance suite. Prints per-check detail followed by one PASS/FAIL line per
// criterion; exits non-zero if any criterion fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "coe/evaluation.hpp"
#include "coe/parallel.hpp"
#include "oracle.hpp"

using namespace coe;

namespace {

// Absorbs the binary representation of two-decimal grid values.
constexpr double kSlack = 1e-9;

const double kThird = 1.0 / 3.0;
const std::array<double, 3> kWeights{kThird, 0.5, 2.0 / 3.0};
const std::array<double, 2> kBiases{10.0, 20.0};

struct ReferenceOptimum {
  double bias, w_micro, eta, rho, r10_mbps;
};

// Analytic optima of R10 over (eta, rho).
const std::array<ReferenceOptimum, 6> kReferenceOptima{{
    {10.0, kThird, 0.15, 0.78, 3.113},
    {10.0, 0.5, 0.13, 0.66, 3.657},
    {10.0, 2.0 / 3.0, 0.00, 0.54, 4.585},
    {20.0, kThird, 0.41, 0.66, 3.416},
    {20.0, 0.5, 0.35, 0.50, 4.011},
    {20.0, 2.0 / 3.0, 0.25, 0.35, 4.786},
}};

struct ReferenceKs {
  // [bias index][w index]
  std::array<std::array<double, 3>, 2> mean_significance;
  std::array<std::array<double, 3>, 2> pass_ratio;
};

const ReferenceKs kRateKs{{{{0.3320, 0.4606, 0.1609}, {0.4149, 0.2740, 0.2300}}},
                          {{{0.8783, 0.9033, 0.5400}, {0.9117, 0.7650, 0.6867}}}};
const ReferenceKs kSeKs{{{{0.4153, 0.3296, 0.2001}, {0.3935, 0.2968, 0.2163}}},
                        {{{0.9233, 0.8350, 0.6683}, {0.8967, 0.7950, 0.6733}}}};
const ReferenceKs kEeKs{{{{0.4055, 0.3606, 0.1642}, {0.4144, 0.2705, 0.2410}}},
                        {{{0.9117, 0.8383, 0.5400}, {0.9067, 0.7600, 0.7000}}}};

ScenarioConfig cell(double bias, double w_micro, NoiseBandwidthMode mode = ScenarioConfig{}.noise_bandwidth_mode) {
  ScenarioConfig cfg;
  cfg.bias_db = bias;
  cfg.w_micro = w_micro;
  cfg.noise_bandwidth_mode = mode;
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

struct OptimaScore {
  bool all_within = true;
  double eta_err = 0.0, rho_err = 0.0, r10_rel_err = 0.0;  // sums over cells
};

OptimaScore run_optima(NoiseBandwidthMode mode, bool verbose) {
  OptimaScore score;
  for (const auto& ref : kReferenceOptima) {
    const AnalyticModel model(ref.bias, cell(ref.bias, ref.w_micro, mode));
    const GridPoint best = optimize_grid(model, Objective::R10, 0.01, 0);
    const double r10 = best.value / 1e6;
    const double de = std::abs(best.eta - ref.eta), dr = std::abs(best.rho - ref.rho);
    const double rel = std::abs(r10 - ref.r10_mbps) / ref.r10_mbps;
    const bool ok = de <= 0.03 + kSlack && dr <= 0.03 + kSlack && rel <= 0.10;
    score.all_within = score.all_within && ok;
    score.eta_err += de;
    score.rho_err += dr;
    score.r10_rel_err += rel;
    if (verbose)
      std::printf("    [%s] B=%2.0f w=%.3f  eta*=%.2f (ref %.2f)  rho*=%.2f (ref %.2f)  R10=%.3f Mbit/s (ref %.3f, %+.1f%%)  %s\n",
                  std::string(to_string(mode)).c_str(), ref.bias, ref.w_micro, best.eta, ref.eta, best.rho,
                  ref.rho, r10, ref.r10_mbps, 100.0 * (r10 - ref.r10_mbps) / ref.r10_mbps, ok ? "ok" : "out of tolerance");
  }
  return score;
}

bool criterion_1() {
  std::printf("criterion 1: optimal (eta, rho) and R10\n");
  const auto t0 = std::chrono::steady_clock::now();
  const NoiseBandwidthMode configured = ScenarioConfig{}.noise_bandwidth_mode;
  const OptimaScore alloc = run_optima(NoiseBandwidthMode::Allocation, true);
  const OptimaScore full = run_optima(NoiseBandwidthMode::FullBand, true);
  const auto total = [](const OptimaScore& s) { return s.eta_err + s.rho_err + s.r10_rel_err; };
  std::printf("    summed |d eta| + |d rho| + |rel d R10|: allocation=%.3f full_band=%.3f -> closer match: %s\n",
              total(alloc), total(full), total(alloc) <= total(full) ? "allocation" : "full_band");
  std::printf("    configured default mode: %s (%.1f s)\n", std::string(to_string(configured)).c_str(), seconds_since(t0));
  return configured == NoiseBandwidthMode::Allocation ? alloc.all_within : full.all_within;
}

// ---------------------------------------------------------------------------

bool criterion_2() {
  std::printf("criterion 2: KS campaigns, 400 trials x 100 users from 1000-user drops\n");
  const auto t0 = std::chrono::steady_clock::now();
  bool values_ok = true, order_ok = true;
  const std::array<std::pair<Metric, const ReferenceKs*>, 3> metrics{
      {{Metric::Rate, &kRateKs}, {Metric::SE, &kSeKs}, {Metric::EE, &kEeKs}}};
  KsCampaignOptions opts;
  opts.threads = 0;
  for (const auto& [metric, ref] : metrics) {
    for (std::size_t b = 0; b < kBiases.size(); ++b) {
      std::array<double, 3> pass{};
      for (std::size_t w = 0; w < kWeights.size(); ++w) {
        ScenarioConfig cfg = cell(kBiases[b], kWeights[w]);
        const KsReport r = ks_campaign(cfg, metric, opts);
        pass[w] = r.pass_ratio;
        const double dm = r.mean_significance - ref->mean_significance[b][w];
        const double dp = r.pass_ratio - ref->pass_ratio[b][w];
        const bool ok = std::abs(dm) <= 0.15 + kSlack && std::abs(dp) <= 0.15 + kSlack;
        values_ok = values_ok && ok;
        std::printf("    %-4s B=%2.0f w=%.3f  mean=%.4f (ref %.4f, %+.3f)  pass=%.4f (ref %.4f, %+.3f)  %s\n",
                    std::string(to_string(metric)).c_str(), kBiases[b], kWeights[w], r.mean_significance,
                    ref->mean_significance[b][w], dm, r.pass_ratio, ref->pass_ratio[b][w], dp,
                    ok ? "ok" : "out of tolerance");
      }
      const bool ordered = pass[0] >= pass[1] && pass[1] >= pass[2];
      order_ok = order_ok && ordered;
      std::printf("    %-4s B=%2.0f pass ratio nonincreasing in w_micro: %s\n",
                  std::string(to_string(metric)).c_str(), kBiases[b], ordered ? "yes" : "no");
    }
  }
  std::printf("    values within tolerance: %s; ordering holds: %s (%.1f s)\n", values_ok ? "yes" : "no",
              order_ok ? "yes" : "no", seconds_since(t0));
  return values_ok && order_ok;
}

// ---------------------------------------------------------------------------

bool criterion_3() {
  std::printf("criterion 3: area primitives vs 1e7-point sampling oracles\n");
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::int64_t kPoints = 10'000'000;
  double worst2 = 0.0, worst3 = 0.0;
  const auto two = coe::testing::random_cases(20, 2, 4242);
  for (std::size_t k = 0; k < two.size(); ++k) {
    const auto& cs = two[k].circles;
    const double exact = two_circle_intersection_area(cs[0], cs[1]);
    const double oracle = coe::testing::mc_intersection_area(cs, kPoints, 9000 + k);
    worst2 = std::max(worst2, std::abs(exact - oracle) / oracle);
  }
  const auto three = coe::testing::random_cases(20, 3, 4343);
  for (std::size_t k = 0; k < three.size(); ++k) {
    const auto& cs = three[k].circles;
    const double exact = three_circle_overlap_area(cs[0], cs[1], cs[2]);
    const double oracle = coe::testing::mc_intersection_area(cs, kPoints, 9500 + k);
    worst3 = std::max(worst3, std::abs(exact - oracle) / oracle);
  }
  const double elapsed = seconds_since(t0);
  std::printf("    two-circle: 20 cases, worst rel err %.2e; three-circle: 20 cases, worst rel err %.2e; %.1f s\n",
              worst2, worst3, elapsed);
  return worst2 <= 1e-3 && worst3 <= 1e-3 && elapsed < 60.0;
}

// ---------------------------------------------------------------------------

bool criterion_4() {
  std::printf("criterion 4: pooled 400-drop rate CDFs at B=10 dB, eta=0.2, rho=0.5\n");
  bool ok = true;
  for (double w : kWeights) {
    ScenarioConfig cfg = cell(10.0, w);
    cfg.eta = 0.2;
    cfg.rho = 0.5;
    const Simulator sim(cfg);
    const AnalyticCdf cdf = AnalyticModel(10.0, cfg).mixture_cdf(Metric::Rate, {0.2, 0.5});
    const KsResult ks = ks_test(sim.pooled(Metric::Rate, 0, 400, 0), cdf);
    const bool cell_ok = ks.statistic <= 0.03;
    ok = ok && cell_ok;
    std::printf("    w=%.3f  KS distance %.4f  %s\n", w, ks.statistic, cell_ok ? "ok" : "above 0.03");
  }
  return ok;
}

// ---------------------------------------------------------------------------

struct Sweep {
  std::vector<double> eta;
  std::vector<KpiResult> kpi;

  double argmax(const std::function<double(const KpiResult&)>& f) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < kpi.size(); ++i)
      if (f(kpi[i]) > f(kpi[best])) best = i;
    return eta[best];
  }
  bool interior_max(const std::function<double(const KpiResult&)>& f) const {
    const double e = argmax(f);
    return e > eta.front() && e < eta.back();
  }
  // First eta where f rises by more than numerical noise, or -1.
  double first_rise(const std::function<double(const KpiResult&)>& f) const {
    for (std::size_t i = 1; i < kpi.size(); ++i)
      if (f(kpi[i]) > f(kpi[i - 1]) * (1.0 + 1e-9)) return eta[i];
    return -1.0;
  }
};

Sweep eta_sweep(double bias) {
  const AnalyticModel model(bias, cell(bias, 0.5));
  Sweep s;
  s.eta = unit_grid(0.01);
  s.kpi.resize(s.eta.size());
  parallel_for(s.eta.size(), 0, [&](std::size_t i) { s.kpi[i] = kpis(model, {s.eta[i], 0.5}); });
  return s;
}

bool criterion_5() {
  std::printf("criterion 5: trade-off properties along eta at rho=0.5, w_micro=1/2\n");
  const auto se10 = [](const KpiResult& k) { return k.se10; };
  const auto ee10 = [](const KpiResult& k) { return k.ee10; };
  const auto r10 = [](const KpiResult& k) { return k.r10; };
  const auto th10 = [](const KpiResult& k) { return k.theta10; };
  const auto se50 = [](const KpiResult& k) { return k.se50; };
  const auto ee50 = [](const KpiResult& k) { return k.ee50; };
  const auto th50 = [](const KpiResult& k) { return k.theta50; };

  bool ok = true;
  const auto check = [&](bool cond, const std::string& what) {
    ok = ok && cond;
    std::printf("    %-58s %s\n", what.c_str(), cond ? "ok" : "VIOLATED");
  };
  std::array<Sweep, 2> sweeps{eta_sweep(10.0), eta_sweep(20.0)};
  for (std::size_t b = 0; b < 2; ++b) {
    const Sweep& s = sweeps[b];
    const std::string tag = "B=" + std::to_string(static_cast<int>(kBiases[b])) + ": ";
    char buf[160];
    const double rise_se50 = s.first_rise(se50), rise_ee50 = s.first_rise(ee50), rise_th50 = s.first_rise(th50);
    std::snprintf(buf, sizeof buf, "SE50 nonincreasing%s", rise_se50 < 0 ? "" : (" (rises at eta=" + std::to_string(rise_se50).substr(0, 4) + ")").c_str());
    check(rise_se50 < 0, tag + buf);
    std::snprintf(buf, sizeof buf, "EE50 nonincreasing%s", rise_ee50 < 0 ? "" : (" (rises at eta=" + std::to_string(rise_ee50).substr(0, 4) + ")").c_str());
    check(rise_ee50 < 0, tag + buf);
    std::snprintf(buf, sizeof buf, "theta50 nonincreasing%s", rise_th50 < 0 ? "" : (" (rises at eta=" + std::to_string(rise_th50).substr(0, 4) + ")").c_str());
    check(rise_th50 < 0, tag + buf);

    const double e_se = s.argmax(se10), e_ee = s.argmax(ee10), e_r = s.argmax(r10), e_th = s.argmax(th10);
    std::printf("    %seta*(SE10)=%.2f eta*(EE10)=%.2f eta*(R10)=%.2f eta*(theta10)=%.2f\n", tag.c_str(), e_se,
                e_ee, e_r, e_th);
    check(s.interior_max(se10), tag + "SE10 has an interior maximum");
    check(s.interior_max(ee10), tag + "EE10 has an interior maximum");
    check(e_se > e_ee, tag + "eta*(SE10) > eta*(EE10)");
    check(std::abs(e_ee - e_r) <= 0.05 + kSlack, tag + "|eta*(EE10) - eta*(R10)| <= 0.05");
    check(std::abs(e_th - e_se) < std::abs(e_th - e_ee), tag + "eta*(theta10) closer to eta*(SE10) than eta*(EE10)");
  }
  check(sweeps[1].argmax(se10) > sweeps[0].argmax(se10), "eta*(SE10) larger at 20 dB");
  check(sweeps[1].argmax(ee10) > sweeps[0].argmax(ee10), "eta*(EE10) larger at 20 dB");
  check(sweeps[1].argmax(th10) > sweeps[0].argmax(th10), "eta*(theta10) larger at 20 dB");
  return ok;
}

// ---------------------------------------------------------------------------

bool criterion_6() {
  std::printf("criterion 6: invariants\n");
  bool ok = true;
  const auto report = [&](bool cond, const char* what) {
    ok = ok && cond;
    std::printf("    %-58s %s\n", what, cond ? "ok" : "VIOLATED");
  };

  double worst_weight = 0.0, worst_partition = 0.0;
  for (double bias : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    const RegionAreas a = region_areas(bias, ScenarioConfig{});
    worst_partition = std::max(worst_partition, std::abs(a.s_dir + a.s_cre + a.s_macro - a.s_tot) / a.s_tot);
    for (double w : {0.0, kThird, 0.5, 2.0 / 3.0, 1.0}) {
      const TypeMixture m = type_mixture(bias, cell(bias, w));
      worst_weight = std::max(worst_weight, std::abs(m.weights[0] + m.weights[1] + m.weights[2] - 1.0));
    }
  }
  report(worst_weight <= 1e-12, "mixture weights sum to 1 within 1e-12");
  report(worst_partition <= 1e-6, "region areas partition the disc within 1e-6");

  bool monotone = true;
  double worst_round_trip = 0.0;
  for (double bias : {0.0, 10.0, 20.0}) {
    const AnalyticModel model(bias, cell(bias, 0.5));
    for (UserType t : kAllUserTypes) {
      double prev = 0.0;
      const double reach = model.geometry().max_distance(t);
      for (int k = 0; k < 1000; ++k) {
        const double f = model.distance_cdf(t, reach * k / 999.0);
        monotone = monotone && f >= prev && f <= 1.0;
        prev = f;
      }
    }
    for (Metric metric : {Metric::Rate, Metric::SE, Metric::EE}) {
      for (ResourceSplit split : {ResourceSplit{0.2, 0.5}, ResourceSplit{0.0, 0.7}, ResourceSplit{0.6, 0.3}}) {
        std::vector<AnalyticCdf> cdfs{model.mixture_cdf(metric, split)};
        for (UserType t : kAllUserTypes) cdfs.push_back(model.type_cdf(metric, t, split));
        for (const auto& cdf : cdfs) {
          double prev = 0.0;
          for (int k = 0; k < 1000; ++k) {
            const double f = cdf(cdf.support_hi() * k / 999.0);
            monotone = monotone && f >= prev && f <= 1.0;
            prev = f;
          }
        }
        for (double q : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
          if (q <= cdfs[0].atom_at_zero()) continue;
          worst_round_trip = std::max(worst_round_trip, std::abs(cdfs[0](percentile(cdfs[0], q)) - q));
        }
      }
    }
  }
  report(monotone, "all CDFs monotone on 1000-point grids");
  report(worst_round_trip <= 1e-6, "percentile round trip within 1e-6");

  bool identical = true;
  {
    const ScenarioConfig cfg = cell(10.0, 0.5);
    const Simulator a(cfg), b(cfg);
    for (std::uint64_t s = 0; s < 5; ++s) identical = identical && a.run_drop(s).values(Metric::Rate) == b.run_drop(s).values(Metric::Rate);
    KsCampaignOptions opts;
    opts.n_trials = 50;
    const KsReport r1 = ks_campaign(cfg, Metric::SE, opts);
    opts.threads = 4;
    const KsReport r2 = ks_campaign(cfg, Metric::SE, opts);
    identical = identical && r1.mean_significance == r2.mean_significance && r1.pass_ratio == r2.pass_ratio;
    const GridPoint g1 = optimize_grid(AnalyticModel(10.0, cfg), Objective::Theta10, 0.05);
    const GridPoint g2 = optimize_grid(AnalyticModel(10.0, cfg), Objective::Theta10, 0.05, 4);
    identical = identical && g1.eta == g2.eta && g1.rho == g2.rho && g1.value == g2.value;
  }
  report(identical, "bit-identical reruns under a fixed seed");

  bool no_cre = type_mixture(0.0, cell(0.0, 0.5)).weight(UserType::CRE) == 0.0;
  const Simulator sim0(cell(0.0, 0.5));
  for (std::uint64_t s = 0; s < 100; ++s) no_cre = no_cre && sim0.run_drop(s).count(UserType::CRE) == 0;
  report(no_cre, "B=0 gives no CRE users analytically and in 100 drops");
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*run)();
  };
  const std::array<Criterion, 6> criteria{{
      {"optimal (eta, rho) and R10 reproduce the reference optima", criterion_1},
      {"KS campaign statistics match the reference campaigns", criterion_2},
      {"area primitives agree with sampling oracles", criterion_3},
      {"pooled simulated rate CDFs within KS distance 0.03", criterion_4},
      {"trade-off properties along eta", criterion_5},
      {"invariant suites", criterion_6},
  }};
  std::array<bool, 6> results{};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    results[i] = criteria[i].run();
    std::fflush(stdout);
  }
  std::printf("\n");
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::printf("[%s] criterion %zu: %s\n", results[i] ? "PASS" : "FAIL", i + 1, criteria[i].name);
    failed += results[i] ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
