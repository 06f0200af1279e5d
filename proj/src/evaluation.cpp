#include "coe/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coe/parallel.hpp"

namespace coe {

double kolmogorov_tail(double lambda) {
  const double a2 = -2.0 * lambda * lambda;
  double fac = 2.0, sum = 0.0, previous = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = fac * std::exp(a2 * k * k);
    sum += term;
    if (std::abs(term) <= 1e-3 * previous || std::abs(term) <= 1e-8 * sum)
      return std::clamp(sum, 0.0, 1.0);
    fac = -fac;
    previous = std::abs(term);
  }
  return 1.0;  // series has not converged: lambda ~ 0
}

KsResult ks_test(std::span<const double> samples, const AnalyticCdf& cdf) {
  if (samples.size() < 8) throw TooFewSamplesError("ks_test: at least 8 samples are required");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - cdf(x[i]);
    const double below = cdf.left_limit(x[i]) - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  const double root = std::sqrt(n);
  return {d, kolmogorov_tail((root + 0.12 + 0.11 / root) * d)};
}

KsReport ks_campaign(const Simulator& sim, const AnalyticCdf& cdf, Metric metric,
                     const KsCampaignOptions& opts) {
  if (opts.n_trials <= 0) throw std::invalid_argument("ks_campaign: n_trials must be positive");
  const auto& cfg = sim.config();
  std::vector<double> p_values(static_cast<std::size_t>(opts.n_trials));
  std::vector<double> shared;
  if (opts.single_drop && !opts.self_test) shared = sim.run_drop(opts.first_stream).values(metric);

  // Subsampling streams live far from the drop streams.
  constexpr std::uint64_t kSubsampleStreams = 1ull << 40;
  parallel_for(p_values.size(), opts.threads, [&](std::size_t t) {
    Rng rng = make_stream(cfg.rng_seed, kSubsampleStreams + opts.first_stream + t);
    std::vector<double> picked;
    if (opts.self_test) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int k = 0; k < opts.subsample; ++k) {
        double q = u(rng);
        while (q <= 0.0) q = u(rng);
        picked.push_back(q <= cdf.atom_at_zero() ? 0.0 : percentile(cdf, q));
      }
    } else {
      std::vector<double> pool =
          opts.single_drop ? shared : sim.run_drop(opts.first_stream + t).values(metric);
      const auto k = std::min<std::size_t>(static_cast<std::size_t>(opts.subsample), pool.size());
      // Partial Fisher-Yates: sample without replacement.
      for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      picked.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
    p_values[t] = ks_test(picked, cdf).p_value;
  });

  KsReport report;
  report.n_trials = opts.n_trials;
  report.sample_size = opts.subsample;
  report.mean_significance =
      std::accumulate(p_values.begin(), p_values.end(), 0.0) / static_cast<double>(opts.n_trials);
  report.pass_ratio =
      static_cast<double>(std::count_if(p_values.begin(), p_values.end(),
                                        [&](double p) { return p >= opts.alpha; })) /
      static_cast<double>(opts.n_trials);
  return report;
}

KsReport ks_campaign(const ScenarioConfig& cfg, Metric metric, const KsCampaignOptions& opts) {
  const Simulator sim(cfg);
  const AnalyticModel model(cfg.bias_db, cfg);
  return ks_campaign(sim, model.mixture_cdf(metric, {cfg.eta, cfg.rho}), metric, opts);
}

KpiResult kpis(const AnalyticModel& model, ResourceSplit split) {
  KpiResult k;
  const AnalyticCdf rate = model.mixture_cdf(Metric::Rate, split);
  const AnalyticCdf se = model.mixture_cdf(Metric::SE, split);
  const AnalyticCdf ee = model.mixture_cdf(Metric::EE, split);
  k.r10 = percentile(rate, 0.1);
  k.se10 = percentile(se, 0.1);
  k.se50 = percentile(se, 0.5);
  k.ee10 = percentile(ee, 0.1);
  k.ee50 = percentile(ee, 0.5);
  k.theta10 = k.se10 * k.ee10;
  k.theta50 = k.se50 * k.ee50;
  return k;
}

KpiResult kpis(double bias_db, double eta, double rho, const ScenarioConfig& cfg) {
  return kpis(AnalyticModel(bias_db, cfg), {eta, rho});
}

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::R10: return "r10";
    case Objective::SE10: return "se10";
    case Objective::EE10: return "ee10";
    case Objective::Theta10: return "theta10";
    case Objective::Theta50: return "theta50";
  }
  return "unknown";
}

Objective objective_from_string(std::string_view s) {
  if (s == "r10") return Objective::R10;
  if (s == "se10") return Objective::SE10;
  if (s == "ee10") return Objective::EE10;
  if (s == "theta10") return Objective::Theta10;
  if (s == "theta50") return Objective::Theta50;
  throw std::invalid_argument("unknown objective '" + std::string(s) + "'");
}

double objective_value(const AnalyticModel& model, Objective objective, ResourceSplit split) {
  auto pct = [&](Metric m, double q) { return percentile(model.mixture_cdf(m, split), q); };
  switch (objective) {
    case Objective::R10: return pct(Metric::Rate, 0.1);
    case Objective::SE10: return pct(Metric::SE, 0.1);
    case Objective::EE10: return pct(Metric::EE, 0.1);
    case Objective::Theta10: return pct(Metric::SE, 0.1) * pct(Metric::EE, 0.1);
    case Objective::Theta50: return pct(Metric::SE, 0.5) * pct(Metric::EE, 0.5);
  }
  return 0.0;
}

std::vector<double> unit_grid(double step) {
  if (!(step > 0.0 && step <= 0.5)) throw std::invalid_argument("grid step must lie in (0, 0.5]");
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor(1.0 / step + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(std::min(1.0, i * step));
  if (1.0 - grid.back() > 1e-9) grid.push_back(1.0);
  grid.back() = 1.0;
  return grid;
}

GridPoint optimize_grid(const AnalyticModel& model, Objective objective, double step,
                        unsigned threads, std::vector<GridPoint>* surface) {
  const std::vector<double> grid = unit_grid(step);
  const std::size_t n = grid.size();
  std::vector<GridPoint> cells(n * n);
  parallel_for(cells.size(), threads, [&](std::size_t k) {
    const double eta = grid[k / n], rho = grid[k % n];
    cells[k] = {eta, rho, objective_value(model, objective, {eta, rho})};
  });
  GridPoint best = cells.front();
  for (const auto& c : cells)
    if (c.value > best.value) best = c;
  if (surface) *surface = std::move(cells);
  return best;
}

GridPoint optimize_grid(double bias_db, const ScenarioConfig& cfg, Objective objective,
                        double step) {
  return optimize_grid(AnalyticModel(bias_db, cfg), objective, step);
}

}  // namespace coe
